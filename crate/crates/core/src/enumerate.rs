//! Exhaustive enumeration of Weyr characteristics.
//!
//! The total weight of `ω = (W, r*, s*)` is `|W| + |r*| + |s*|`, star weights
//! including the zeroth terms. It equals `m + n - ρ` for an `m x n` pencil of
//! rank `ρ`, so a weight bound bounds everything.

use crate::partition::{partitions_bounded, partitions_of, Partition, StarPartition};
use crate::pencil::EigenvalueLabel;
use crate::weyr::{RegularPart, WeyrCharacteristic};

pub fn total_weight(omega: &WeyrCharacteristic) -> usize {
    omega.regular_weight() + omega.col_star().star_weight() + omega.row_star().star_weight()
}

/// Star partitions with the given zeroth term and tail weight.
pub fn star_partitions(zeroth: usize, tail_weight: usize) -> Vec<StarPartition> {
    if zeroth == 0 {
        return if tail_weight == 0 {
            vec![StarPartition::default()]
        } else {
            Vec::new()
        };
    }
    partitions_bounded(tail_weight, zeroth)
        .into_iter()
        .map(|p| StarPartition::new(zeroth, p).expect("parts bounded by the zeroth term"))
        .collect()
}

/// All regular parts of the given weight supported on `labels`.
pub fn regular_parts(weight: usize, labels: &[EigenvalueLabel]) -> Vec<RegularPart> {
    let mut out = Vec::new();
    let mut current = RegularPart::new();
    fill_regular(weight, labels, &mut current, &mut out);
    out
}

fn fill_regular(
    weight: usize,
    labels: &[EigenvalueLabel],
    current: &mut RegularPart,
    out: &mut Vec<RegularPart>,
) {
    let Some((first, rest)) = labels.split_first() else {
        if weight == 0 {
            out.push(current.clone());
        }
        return;
    };
    for here in 0..=weight {
        for p in partitions_of(here) {
            if p.is_zero() {
                current.remove(first);
            } else {
                current.insert(first.clone(), p);
            }
            fill_regular(weight - here, rest, current, out);
        }
    }
    current.remove(first);
}

/// All characteristics of `m x n` pencils of rank `rho` on `labels`.
pub fn characteristics_with_dims(
    m: usize,
    n: usize,
    rho: usize,
    labels: &[EigenvalueLabel],
) -> Vec<WeyrCharacteristic> {
    with_dims(m, n, rho, |w| regular_parts(w, labels))
}

/// Like [`characteristics_with_dims`], plus any number of further
/// eigenvalues outside `keep`, named by [`canonical_fresh_labels`].
pub fn characteristics_with_dims_fresh(
    m: usize,
    n: usize,
    rho: usize,
    keep: &[EigenvalueLabel],
) -> Vec<WeyrCharacteristic> {
    with_dims(m, n, rho, |w| {
        let mut out = Vec::new();
        for kept in 0..=w {
            let fresh = partition_multisets(w - kept);
            for reg in regular_parts(kept, keep) {
                for f in &fresh {
                    let mut r = reg.clone();
                    r.extend(canonical_fresh_labels(keep).zip(f.iter().cloned()));
                    out.push(r);
                }
            }
        }
        out
    })
}

fn with_dims(
    m: usize,
    n: usize,
    rho: usize,
    regulars: impl Fn(usize) -> Vec<RegularPart>,
) -> Vec<WeyrCharacteristic> {
    let mut out = Vec::new();
    if rho > m.min(n) {
        return out;
    }
    let (r0, s0) = (n - rho, m - rho);
    for w in 0..=rho {
        let regs = regulars(w);
        for rw in 0..=rho - w {
            let sw = rho - w - rw;
            let rs = star_partitions(r0, rw);
            let ss = star_partitions(s0, sw);
            for reg in &regs {
                for r in &rs {
                    for s in &ss {
                        out.push(WeyrCharacteristic::new(reg.clone(), r.clone(), s.clone()));
                    }
                }
            }
        }
    }
    out
}

/// All characteristics of total weight at most `max_weight` on `labels`,
/// optionally with at most `max_cols` columns.
pub fn characteristics_up_to(
    max_weight: usize,
    max_cols: Option<usize>,
    labels: &[EigenvalueLabel],
) -> Vec<WeyrCharacteristic> {
    let mut out = Vec::new();
    // weight = m + n - rho with m, n >= rho
    for rho in 0..=max_weight {
        for n in rho..=max_weight {
            if max_cols.is_some_and(|c| n > c) {
                continue;
            }
            for m in rho..=max_weight + rho - n {
                out.extend(characteristics_with_dims(m, n, rho, labels));
            }
        }
    }
    out
}

/// Non-increasing lists of nonzero partitions with total weight `t`: the
/// regular part at unnamed eigenvalues, up to relabeling.
pub fn partition_multisets(t: usize) -> Vec<Vec<Partition>> {
    let mut out = Vec::new();
    multisets_below(t, None, &mut Vec::new(), &mut out);
    out
}

fn multisets_below(
    t: usize,
    cap: Option<&Partition>,
    current: &mut Vec<Partition>,
    out: &mut Vec<Vec<Partition>>,
) {
    if t == 0 {
        out.push(current.clone());
        return;
    }
    for a in 1..=t {
        for p in partitions_of(a) {
            if cap.is_some_and(|c| &p > c) {
                continue;
            }
            current.push(p.clone());
            multisets_below(t - a, Some(&p), current, out);
            current.pop();
        }
    }
}

/// Canonical labels `1, -1, 2, -2, ...` skipping `keep`.
pub fn canonical_fresh_labels(
    keep: &[EigenvalueLabel],
) -> impl Iterator<Item = EigenvalueLabel> + '_ {
    (1i64..)
        .flat_map(|k| [k, -k])
        .map(EigenvalueLabel::int)
        .filter(move |l| !keep.contains(l))
}

/// Relabels every eigenvalue outside `keep`: partitions sorted decreasingly
/// are placed on [`canonical_fresh_labels`]. Two characteristics that differ
/// only by a bijection of eigenvalues outside `keep` become equal.
pub fn canonicalize_labels(
    omega: &WeyrCharacteristic,
    keep: &[EigenvalueLabel],
) -> WeyrCharacteristic {
    let mut kept = RegularPart::new();
    let mut others: Vec<Partition> = Vec::new();
    for (l, p) in omega.regular() {
        if keep.contains(l) {
            kept.insert(l.clone(), p.clone());
        } else {
            others.push(p.clone());
        }
    }
    others.sort_by(|a, b| b.cmp(a));
    kept.extend(canonical_fresh_labels(keep).zip(others));
    omega.with_regular(kept)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pool() -> Vec<EigenvalueLabel> {
        vec![EigenvalueLabel::int(0), EigenvalueLabel::Infinity]
    }

    #[test]
    fn counts_and_weights() {
        let all = characteristics_up_to(3, None, &pool());
        assert!(all.iter().all(|w| total_weight(w) <= 3));
        let mut dedup = all.clone();
        dedup.sort_by_key(|w| w.to_string());
        dedup.dedup();
        assert_eq!(dedup.len(), all.len());
        // the zero characteristic of the 0x0 pencil is included once
        assert_eq!(all.iter().filter(|w| total_weight(w) == 0).count(), 1);
        for w in &all {
            let (m, n) = w.dims();
            assert_eq!(total_weight(w), m + n - w.rank());
        }
    }

    #[test]
    fn dims_are_respected() {
        for w in characteristics_with_dims(3, 2, 2, &pool()) {
            assert_eq!(w.dims(), (3, 2));
            assert_eq!(w.rank(), 2);
        }
        assert!(characteristics_with_dims(1, 2, 2, &pool()).is_empty());
    }

    #[test]
    fn fresh_variants_are_canonical() {
        let keep = pool();
        let plain = characteristics_with_dims(2, 2, 2, &keep);
        let fresh = characteristics_with_dims_fresh(2, 2, 2, &keep);
        assert!(fresh.len() > plain.len());
        for w in &fresh {
            assert_eq!(&canonicalize_labels(w, &keep), w);
        }
    }

    #[test]
    fn multisets_of_partitions() {
        // t = 2: {(2)}, {(1,1)}, {(1),(1)}
        assert_eq!(partition_multisets(2).len(), 3);
        assert_eq!(partition_multisets(0), vec![Vec::<Partition>::new()]);
    }

    #[test]
    fn canonical_labels_forget_names() {
        let p = |v: Vec<usize>| Partition::new(v).unwrap();
        let mk = |a: i64, b: i64| {
            let reg: RegularPart = [
                (EigenvalueLabel::int(a), p(vec![1])),
                (EigenvalueLabel::int(b), p(vec![2])),
            ]
            .into_iter()
            .collect();
            WeyrCharacteristic::new(reg, StarPartition::default(), StarPartition::default())
        };
        let keep = pool();
        assert_eq!(
            canonicalize_labels(&mk(3, 5), &keep),
            canonicalize_labels(&mk(-7, 2), &keep)
        );
        assert_ne!(
            canonicalize_labels(&mk(0, 5), &keep),
            canonicalize_labels(&mk(3, 5), &keep)
        );
    }
}
