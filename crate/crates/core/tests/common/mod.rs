//! Exhaustive checks shared by the property tests and the acceptance run.
//! Each returns the number of cases checked, or the first failure.
#![allow(dead_code)]

use pencil_lab::bounds::{
    perturbation_bounds, PerturbationKind, PerturbationScenario, RankRelation,
};
use pencil_lab::builder::{
    build_pencil, eigenvalue_pool, random_equivalent, random_weyr_with, trial_rng,
};
use pencil_lab::enumerate::{characteristics_up_to, star_partitions};
use pencil_lab::invariants::weyr_characteristic;
use pencil_lab::par::Exec;
use pencil_lab::partition::{
    deficit_construct, deficit_feasible, gap_index, is_1step_majorized, is_conjugate_majorized,
    partitions_of, FiniteSeq, Partition, StarPartition,
};

pub type Check = Result<usize, String>;

/// Weakly decreasing sequences of length `len` with entries in `0..=max`.
pub fn decreasing(len: usize, max: usize) -> Vec<Vec<usize>> {
    if len == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for first in 0..=max {
        for mut rest in decreasing(len - 1, first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

pub fn stars_up_to(max_star_weight: usize) -> Vec<StarPartition> {
    let mut out = vec![StarPartition::default()];
    for z in 1..=max_star_weight {
        for t in 0..=max_star_weight - z {
            out.extend(star_partitions(z, t));
        }
    }
    out
}

/// `(len; conj(seq))`, the star partition of a list of minimal indices.
pub fn conj_star(seq: &[usize]) -> StarPartition {
    StarPartition::new(
        seq.len(),
        Partition::from_unsorted(seq.to_vec()).conjugate(),
    )
    .unwrap()
}

pub fn conjugation(max_weight: usize) -> Check {
    let mut count = 0;
    for n in 0..=max_weight {
        for p in partitions_of(n) {
            let c = p.conjugate();
            if c.weight() != n || c.conjugate() != p || c.len() != p.part(1) {
                return Err(format!("conjugation fails on {p}"));
            }
            count += 1;
        }
    }
    Ok(count)
}

/// `c ≺′ d` against `conj_star(d) ∠ conj_star(c)`, `len(c) = len(d) + 1 <= max_len`.
pub fn duality(max_len: usize, max_entry: usize) -> Check {
    let mut count = 0;
    for m in 0..max_len {
        let longs = decreasing(m + 1, max_entry);
        let shorts = decreasing(m, max_entry);
        for c in &longs {
            let cs = FiniteSeq(c.iter().map(|&x| x as i64).collect());
            let c_star = conj_star(c);
            for d in &shorts {
                let lhs =
                    is_1step_majorized(&cs, &FiniteSeq(d.iter().map(|&x| x as i64).collect()))
                        .map_err(|e| e.to_string())?;
                if lhs != is_conjugate_majorized(&conj_star(d), &c_star) {
                    return Err(format!("duality fails for c = {c:?}, d = {d:?}"));
                }
                count += 1;
            }
        }
    }
    Ok(count)
}

pub fn conjugate_majorized_pairs(max_star_weight: usize) -> Vec<(StarPartition, StarPartition)> {
    let all = stars_up_to(max_star_weight);
    let mut out = Vec::new();
    for r in &all {
        for s in all.iter().filter(|s| s.zeroth() + 1 == r.zeroth()) {
            if is_conjugate_majorized(s, r) {
                out.push((s.clone(), r.clone()));
            }
        }
    }
    out
}

/// Consequences of `s ∠ r` on the gap index `g`.
pub fn gap_lemmas(max_star_weight: usize) -> Check {
    let pairs = conjugate_majorized_pairs(max_star_weight);
    for (s, r) in &pairs {
        let g = gap_index(r, s).map_err(|e| e.to_string())?;
        let k = r.tail().weight() as i64 - s.tail().weight() as i64;
        if k > g as i64 {
            return Err(format!("k = {k} > g = {g} for {s} ∠ {r}"));
        }
        for i in g + 1..=r.support().max(s.support()) {
            let diff = s.get(i) as i64 - r.get(i) as i64;
            if !(0..=g as i64 - k).contains(&diff) {
                return Err(format!("s_{i} - r_{i} = {diff} for {s} ∠ {r}"));
            }
        }
        let c = r.tail().conjugate();
        if !(g == c.part(1) || g <= c.part(2)) {
            return Err(format!("g = {g}, c = {c} for {s} ∠ {r}"));
        }
    }
    Ok(pairs.len())
}

/// `deficit_feasible` against a search over all `q` with the right zeroth
/// term and tail weight; `deficit_construct` must produce such a `q`.
pub fn deficit(max_star_weight: usize, max_deficit: i64) -> Check {
    let mut count = 0;
    for p in stars_up_to(max_star_weight) {
        let tail = p.tail().weight() as i64;
        for x in -max_deficit..=max_deficit {
            let target = tail - x;
            let brute = p.zeroth() >= 1
                && target >= 0
                && star_partitions(p.zeroth() - 1, target as usize)
                    .iter()
                    .any(|q| is_conjugate_majorized(q, &p));
            if deficit_feasible(&p, x) != brute {
                return Err(format!("deficit_feasible({p}, {x}) != {brute}"));
            }
            match deficit_construct(&p, x) {
                Ok(q)
                    if !brute
                        || !is_conjugate_majorized(&q, &p)
                        || q.tail().weight() as i64 != target =>
                {
                    return Err(format!("deficit_construct({p}, {x}) = {q}"));
                }
                Err(_) if brute => return Err(format!("deficit_construct({p}, {x}) failed")),
                _ => {}
            }
            count += 1;
        }
    }
    Ok(count)
}

/// Coarser scenarios give wider intervals, on `count` random characteristics.
pub fn nesting(count: u64) -> Check {
    let kinds = [
        PerturbationKind::ColumnType,
        PerturbationKind::RowType,
        PerturbationKind::Unknown,
    ];
    let rels = [
        RankRelation::Equal,
        RankRelation::MinusOne,
        RankRelation::PlusOne,
        RankRelation::Unknown,
    ];
    let mut checks = 0;
    for t in 0..count {
        let omega = random_weyr_with(&mut trial_rng(21, t), 12);
        for kind in kinds {
            for rel in rels {
                let fine = PerturbationScenario::new(kind, rel);
                let fine_bounds = perturbation_bounds(&omega, fine);
                for coarse in fine.coarsenings() {
                    if !perturbation_bounds(&omega, coarse).contains(&fine_bounds) {
                        return Err(format!("{omega}: {coarse} does not contain {fine}"));
                    }
                    checks += 1;
                }
            }
        }
    }
    Ok(checks)
}

/// Extraction inverts construction on every characteristic up to `max_weight`.
pub fn round_trip(max_weight: usize, exec: Exec) -> Check {
    let all = characteristics_up_to(max_weight, None, &eigenvalue_pool());
    let failures = exec.map(&all, |omega| {
        match weyr_characteristic(&build_pencil(omega)) {
            Ok(w) if &w == omega => None,
            Ok(w) => Some(format!("{omega} came back as {w}")),
            Err(e) => Some(format!("{omega}: {e}")),
        }
    });
    match failures.into_iter().flatten().next() {
        Some(f) => Err(f),
        None => Ok(all.len()),
    }
}

/// Extraction after `count` random strict equivalences.
pub fn random_transforms(count: u64, budget: usize, exec: Exec) -> Check {
    let failures = exec.map_range(0..count, |t| {
        let mut rng = trial_rng(11, t);
        let omega = random_weyr_with(&mut rng, budget);
        let g = random_equivalent(&mut rng, &build_pencil(&omega));
        match weyr_characteristic(&g) {
            Ok(w) if w == omega => None,
            Ok(w) => Some(format!("trial {t}: {omega} came back as {w}")),
            Err(e) => Some(format!("trial {t}: {e}")),
        }
    });
    match failures.into_iter().flatten().next() {
        Some(f) => Err(f),
        None => Ok(count as usize),
    }
}
