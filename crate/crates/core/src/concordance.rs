//! Brute-force concordance between the completion characterization and
//! explicit one-row completions.
//!
//! For a subpencil `H1 = build_pencil(ω1)` every row `h = a + s b` with
//! entries of `a`, `b` in a small set is tried, and `ω([h; H1])` is
//! extracted. Rows are first reduced modulo the row space of `[A1 | B1]` and
//! up to scaling, since adding combinations of the rows of `H1` to `h` or
//! scaling `h` gives strictly equivalent pencils.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use serde::Serialize;

use crate::builder::build_pencil;
use crate::completion::{check_completion_full, completion_relation};
use crate::enumerate::{
    canonicalize_labels, characteristics_up_to, characteristics_with_dims_fresh, total_weight,
};
use crate::error::Result;
use crate::field::{Field, Rational, Q128};
use crate::invariants::kronecker_structure_relabeled;
use crate::matrix::{rref, RationalMatrix};
use crate::par::Exec;
use crate::pencil::{EigenvalueLabel, RationalPencil};
use crate::weyr::WeyrCharacteristic;

/// Labels the enumerated subpencils live on. Everything else is a fresh
/// eigenvalue, compared up to relabeling.
pub fn base_labels() -> Vec<EigenvalueLabel> {
    vec![EigenvalueLabel::int(0), EigenvalueLabel::Infinity]
}

/// Result of trying every row for one subpencil.
#[derive(Clone, Debug, Default)]
pub struct RowOracle {
    pub rows: u64,
    pub cosets: u64,
    /// Completions whose spectrum needed placeholder labels.
    pub irrational: u64,
    /// Reachable completions, labels canonicalized against [`base_labels`].
    pub reachable: BTreeSet<WeyrCharacteristic>,
}

/// Canonical representative of `v` modulo the row space spanned by the
/// reduced rows `basis` (pivots `pivots`), normalized so that the first
/// nonzero entry is 1. `None` on arithmetic overflow.
fn coset_key(mut v: Vec<Q128>, basis: &[Vec<Q128>], pivots: &[usize]) -> Option<Vec<Q128>> {
    for (row, &p) in basis.iter().zip(pivots) {
        if v[p].is_zero() {
            continue;
        }
        let f = v[p];
        for j in 0..v.len() {
            if !row[j].is_zero() {
                v[j] = v[j].sub(&f.mul(&row[j])?)?;
            }
        }
    }
    if let Some(lead) = v.iter().find(|x| !x.is_zero()).copied() {
        let inv = Q128::one().div(&lead)?;
        for x in v.iter_mut() {
            *x = x.mul(&inv)?;
        }
    }
    Some(v)
}

fn row_pencil(key: &[Q128], n: usize) -> RationalPencil {
    let to = |xs: &[Q128]| xs.iter().map(Q128::to_rational).collect::<Vec<Rational>>();
    let a = RationalMatrix::from_rows(1, n, vec![to(&key[..n])]).expect("shape");
    let b = RationalMatrix::from_rows(1, n, vec![to(&key[n..])]).expect("shape");
    RationalPencil::new(a, b).expect("shape")
}

/// Every row with entries `a + s b`, `a, b in entries`, stacked on top of
/// `build_pencil(sub)`.
pub fn row_oracle(sub: &WeyrCharacteristic, entries: &[i64]) -> Result<RowOracle> {
    let h1 = build_pencil(sub);
    let n = h1.cols();
    let keep = base_labels();
    let stacked: Vec<Vec<Rational>> = (0..h1.rows())
        .map(|i| h1.a().row(i).iter().chain(h1.b().row(i)).cloned().collect())
        .collect();
    let (basis, pivots) = if stacked.is_empty() {
        (Vec::new(), Vec::new())
    } else {
        let (rows, pivots) = rref(stacked).expect("exact");
        let rows = rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|x| Q128::from_rational(x).expect("small entries"))
                    .collect()
            })
            .collect();
        (rows, pivots)
    };
    let mut out = RowOracle::default();
    let mut seen: HashSet<Vec<Q128>> = HashSet::new();
    let k = entries.len();
    let total = (k as u64).pow(2 * n as u32);
    for code in 0..total {
        let mut c = code;
        let v: Vec<Q128> = (0..2 * n)
            .map(|_| {
                let e = entries[(c % k as u64) as usize];
                c /= k as u64;
                Q128::integer(e as i128)
            })
            .collect();
        out.rows += 1;
        let key = coset_key(v, &basis, &pivots).expect("small entries do not overflow");
        if !seen.insert(key.clone()) {
            continue;
        }
        out.cosets += 1;
        let full = h1.stack_below(&row_pencil(&key, n))?;
        let (structure, placeholders) = kronecker_structure_relabeled(&full)?;
        if placeholders > 0 {
            out.irrational += 1;
        }
        out.reachable
            .insert(canonicalize_labels(&structure.weyr(), &keep));
    }
    Ok(out)
}

/// Completions of `sub` with total weight at most `max_weight` that the
/// characterization accepts, with fresh eigenvalues in canonical form.
pub fn predicted_completions(
    sub: &WeyrCharacteristic,
    max_weight: usize,
) -> Result<BTreeSet<WeyrCharacteristic>> {
    let keep = base_labels();
    let (m1, n) = sub.dims();
    let mut out = BTreeSet::new();
    for rho in [sub.rank(), sub.rank() + 1] {
        for omega in characteristics_with_dims_fresh(m1 + 1, n, rho, &keep) {
            if total_weight(&omega) > max_weight {
                continue;
            }
            let rel = completion_relation(sub, &omega)?;
            if check_completion_full(sub, &omega, rel)? {
                out.insert(omega);
            }
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Disagreement {
    pub sub: WeyrCharacteristic,
    pub full: WeyrCharacteristic,
    /// `true`: reached by a row but rejected; `false`: accepted but not reached.
    pub reached: bool,
}

/// Only the rejected-but-reached kind is a disagreement: an accepted
/// completion that no row with small entries reaches may need larger entries
/// (a single Jordan block of size `k` at a fresh eigenvalue needs binomial
/// coefficients), so those are kept apart as oracle misses.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ConcordanceReport {
    pub max_weight: usize,
    pub max_cols: usize,
    pub entries: Vec<i64>,
    pub widened_entries: Vec<i64>,
    pub subpencils: u64,
    pub rows: u64,
    pub cosets: u64,
    pub irrational: u64,
    pub reachable: u64,
    pub predicted: u64,
    /// Subpencils rerun with the wider entries after a miss.
    pub widened_subpencils: u64,
    /// Accepted completions first missed, then reached with wider entries.
    pub resolved_by_widening: u64,
    pub disagreements: Vec<Disagreement>,
    /// Accepted completions no row within the entry budget reaches.
    pub oracle_misses: Vec<Disagreement>,
}

impl ConcordanceReport {
    pub fn ok(&self) -> bool {
        self.disagreements.is_empty()
    }
}

struct SubResult {
    oracle: RowOracle,
    predicted: usize,
    widened: bool,
    resolved: u64,
    bad: Vec<Disagreement>,
    missed: Vec<Disagreement>,
}

fn rejected(
    sub: &WeyrCharacteristic,
    reachable: &BTreeSet<WeyrCharacteristic>,
) -> Result<Vec<Disagreement>> {
    let mut bad = Vec::new();
    for full in reachable {
        let rel = completion_relation(sub, full)?;
        if !check_completion_full(sub, full, rel)? {
            bad.push(Disagreement {
                sub: sub.clone(),
                full: full.clone(),
                reached: true,
            });
        }
    }
    Ok(bad)
}

fn concord_one(
    sub: &WeyrCharacteristic,
    max_weight: usize,
    entries: &[i64],
    widened: &[i64],
) -> Result<SubResult> {
    let mut oracle = row_oracle(sub, entries)?;
    let predicted = predicted_completions(sub, max_weight)?;
    let mut bad = rejected(sub, &oracle.reachable)?;
    let missed: Vec<WeyrCharacteristic> =
        predicted.difference(&oracle.reachable).cloned().collect();
    let mut resolved = 0;
    let mut rerun = false;
    if !missed.is_empty() && !widened.is_empty() {
        rerun = true;
        let wide = row_oracle(sub, widened)?;
        bad.extend(rejected(sub, &wide.reachable)?);
        resolved = missed.iter().filter(|w| wide.reachable.contains(w)).count() as u64;
        oracle.rows += wide.rows;
        oracle.cosets += wide.cosets;
        oracle.irrational += wide.irrational;
        oracle.reachable.extend(wide.reachable);
    }
    let missed = missed
        .into_iter()
        .filter(|w| !oracle.reachable.contains(w))
        .map(|full| Disagreement {
            sub: sub.clone(),
            full,
            reached: false,
        })
        .collect();
    Ok(SubResult {
        oracle,
        predicted: predicted.len(),
        widened: rerun,
        resolved,
        bad,
        missed,
    })
}

/// Compares reachable and predicted completions for every subpencil of
/// total weight at most `max_weight` with at most `max_cols` columns.
/// Completions are compared when their weight is at most `max_weight`;
/// every reachable completion, of any weight, must be accepted. Subpencils
/// with accepted but unreached completions are tried again with `widened`
/// entries (empty to skip).
pub fn run_concordance(
    max_weight: usize,
    max_cols: usize,
    entries: &[i64],
    widened: &[i64],
    exec: Exec,
) -> Result<ConcordanceReport> {
    let subs: Vec<WeyrCharacteristic> =
        characteristics_up_to(max_weight, Some(max_cols), &base_labels())
            .into_iter()
            .filter(|w| w.dims().1 >= 1)
            .collect();
    let results = exec.map(&subs, |sub| concord_one(sub, max_weight, entries, widened));
    let mut report = ConcordanceReport {
        max_weight,
        max_cols,
        entries: entries.to_vec(),
        widened_entries: widened.to_vec(),
        ..Default::default()
    };
    for r in results {
        let r = r?;
        report.subpencils += 1;
        report.rows += r.oracle.rows;
        report.cosets += r.oracle.cosets;
        report.irrational += r.oracle.irrational;
        report.reachable += r.oracle.reachable.len() as u64;
        report.predicted += r.predicted as u64;
        report.widened_subpencils += r.widened as u64;
        report.resolved_by_widening += r.resolved;
        report.disagreements.extend(r.bad);
        report.oracle_misses.extend(r.missed);
    }
    Ok(report)
}

/// Distribution of subpencil sizes, handy for sizing runs.
pub fn subpencil_census(max_weight: usize, max_cols: usize) -> BTreeMap<(usize, usize), usize> {
    let mut out = BTreeMap::new();
    for w in characteristics_up_to(max_weight, Some(max_cols), &base_labels()) {
        *out.entry(w.dims()).or_insert(0) += 1;
    }
    out
}
