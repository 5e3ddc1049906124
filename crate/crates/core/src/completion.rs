//! One-row completion: the full characterization in Weyr form, the
//! characterizations with one invariant prescribed, and the explicit
//! companion characteristics that realize them.
//!
//! Throughout, `H` is the `m x n` pencil and `H1` the `(m-1) x n` subpencil
//! with `H ~ [h; H1]`. `ω` and `ω1` are their Weyr characteristics.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::bounds::RankRelation;
use crate::builder::{random_rank_one_with, trial_rng};
use crate::error::{LabError, Result};
use crate::invariants::weyr_characteristic;
use crate::par::Exec;
use crate::partition::{deficit_construct, is_conjugate_majorized, Partition, StarPartition};
use crate::pencil::{EigenvalueLabel, RankOneKind, RationalPencil};
use crate::weyr::{RegularPart, WeyrCharacteristic};

/// A named condition of a characterization and whether it holds.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Condition {
    pub tag: String,
    pub holds: bool,
}

fn cond(tag: &str, holds: bool) -> Condition {
    Condition {
        tag: tag.to_string(),
        holds,
    }
}

fn all_hold(conditions: &[Condition]) -> bool {
    conditions.iter().all(|c| c.holds)
}

/// `w_i(λ) <= w1_i(λ) <= w_i(λ) + 1` for all `i`, `λ`.
pub fn interlaces_above(w: &RegularPart, w1: &RegularPart) -> bool {
    compare_regular(w, w1, |a, b| a <= b && b <= a + 1)
}

/// `w_i(λ) - 1 <= w1_i(λ) <= w_i(λ)` for all `i`, `λ`.
pub fn interlaces_below(w: &RegularPart, w1: &RegularPart) -> bool {
    compare_regular(w, w1, |a, b| b <= a && a <= b + 1)
}

fn compare_regular(w: &RegularPart, w1: &RegularPart, ok: impl Fn(usize, usize) -> bool) -> bool {
    let labels: BTreeSet<&EigenvalueLabel> = w.keys().chain(w1.keys()).collect();
    labels.into_iter().all(|l| {
        let zero = Partition::zero();
        let a = w.get(l).unwrap_or(&zero);
        let b = w1.get(l).unwrap_or(&zero);
        (1..=a.len().max(b.len())).all(|i| ok(a.part(i), b.part(i)))
    })
}

fn regular_weight(w: &RegularPart) -> i64 {
    w.values().map(Partition::weight).sum::<usize>() as i64
}

/// `Σ_λ z_1(λ)`, the number of nonzero Weyr entries.
fn total_z1(w: &RegularPart) -> i64 {
    w.values().map(Partition::len).sum::<usize>() as i64
}

fn tail_weight(p: &StarPartition) -> i64 {
    p.tail().weight() as i64
}

/// Rank of `full` relative to `sub` when the dimensions fit a one-row completion.
pub fn completion_relation(
    sub: &WeyrCharacteristic,
    full: &WeyrCharacteristic,
) -> Result<RankRelation> {
    let (m1, n1) = sub.dims();
    let (m, n) = full.dims();
    if n1 != n || m1 + 1 != m {
        return Err(LabError::input(format!(
            "a {m1}x{n1} subpencil cannot be completed by one row to a {m}x{n} pencil"
        )));
    }
    match RankRelation::observed(sub.rank(), full.rank()) {
        Some(rel @ (RankRelation::Equal | RankRelation::PlusOne)) => Ok(rel),
        _ => Err(LabError::input(format!(
            "ranks {} and {} are not those of a subpencil and a one-row completion",
            sub.rank(),
            full.rank()
        ))),
    }
}

/// Conditions of the full characterization for `ω` completing `ω1`.
pub fn completion_conditions(
    sub: &WeyrCharacteristic,
    full: &WeyrCharacteristic,
    rel: RankRelation,
) -> Result<Vec<Condition>> {
    let actual = completion_relation(sub, full)?;
    if actual != rel {
        return Err(LabError::input(format!(
            "ranks give {actual:?}, requested {rel:?}"
        )));
    }
    Ok(match rel {
        RankRelation::Equal => vec![
            cond(
                "interww1w+1",
                interlaces_above(full.regular(), sub.regular()),
            ),
            cond("coleqconj", full.col_star() == sub.col_star()),
            cond(
                "rowprecconj",
                is_conjugate_majorized(sub.row_star(), full.row_star()),
            ),
        ],
        _ => vec![
            cond(
                "interw-1w1w",
                interlaces_below(full.regular(), sub.regular()),
            ),
            cond(
                "colprecconj",
                is_conjugate_majorized(full.col_star(), sub.col_star()),
            ),
            cond("roweqconj", full.row_star() == sub.row_star()),
        ],
    })
}

/// Whether some row `h` gives `build(ω) ~ [h; build(ω1)]`.
pub fn check_completion_full(
    sub: &WeyrCharacteristic,
    full: &WeyrCharacteristic,
    rel: RankRelation,
) -> Result<bool> {
    Ok(all_hold(&completion_conditions(sub, full, rel)?))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum PrescribedInvariant {
    RegularPart,
    ColumnStar,
    RowStar,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Direction {
    /// `H1` is known, one invariant of `H` is prescribed.
    SubpencilPrescribed,
    /// `H` is known, one invariant of `H1` is prescribed.
    FullPrescribed,
}

/// What is prescribed. The rank relation is that of the unknown pencil
/// relative to the known one: `Equal` or `MinusOne` for
/// [`Direction::FullPrescribed`], `Equal` or `PlusOne` for
/// [`Direction::SubpencilPrescribed`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PrescriptionTarget {
    pub invariant: PrescribedInvariant,
    pub direction: Direction,
    pub rank_relation: RankRelation,
}

impl PrescriptionTarget {
    pub fn new(
        invariant: PrescribedInvariant,
        direction: Direction,
        rank_relation: RankRelation,
    ) -> Self {
        PrescriptionTarget {
            invariant,
            direction,
            rank_relation,
        }
    }

    fn validate(&self, prescribed: &Prescription) -> Result<()> {
        let rel_ok = matches!(
            (self.direction, self.rank_relation),
            (
                Direction::FullPrescribed,
                RankRelation::Equal | RankRelation::MinusOne
            ) | (
                Direction::SubpencilPrescribed,
                RankRelation::Equal | RankRelation::PlusOne
            )
        );
        if !rel_ok {
            return Err(LabError::input(format!(
                "rank relation {:?} does not apply to {:?}",
                self.rank_relation, self.direction
            )));
        }
        let shape_ok = matches!(
            (self.invariant, prescribed),
            (PrescribedInvariant::RegularPart, Prescription::Regular(_))
                | (
                    PrescribedInvariant::ColumnStar | PrescribedInvariant::RowStar,
                    Prescription::Star(_)
                )
        );
        if !shape_ok {
            return Err(LabError::input(format!(
                "prescription does not match {:?}",
                self.invariant
            )));
        }
        Ok(())
    }
}

/// The prescribed invariant itself.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Prescription {
    Regular(#[serde(with = "regular_serde")] RegularPart),
    Star(StarPartition),
}

mod regular_serde {
    use serde::{Deserialize, Deserializer, Serializer};

    use crate::weyr::{regular_from_json, regular_to_json, RegularPart};

    pub fn serialize<S: Serializer>(w: &RegularPart, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_some(&regular_to_json(w))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<RegularPart, D::Error> {
        let v = serde_json::Value::deserialize(d)?;
        regular_from_json(v).map_err(serde::de::Error::custom)
    }
}

impl Prescription {
    fn regular(&self) -> &RegularPart {
        match self {
            Prescription::Regular(w) => w,
            Prescription::Star(_) => unreachable!("validated"),
        }
    }

    fn star(&self) -> &StarPartition {
        match self {
            Prescription::Star(p) => p,
            Prescription::Regular(_) => unreachable!("validated"),
        }
    }

    /// The component of `omega` that `invariant` names.
    pub fn of(omega: &WeyrCharacteristic, invariant: PrescribedInvariant) -> Prescription {
        match invariant {
            PrescribedInvariant::RegularPart => Prescription::Regular(omega.regular().clone()),
            PrescribedInvariant::ColumnStar => Prescription::Star(omega.col_star().clone()),
            PrescribedInvariant::RowStar => Prescription::Star(omega.row_star().clone()),
        }
    }
}

/// `if p0 = 1 then d = a1; if p0 > 1 then d = a1 or d <= a2`, split into the
/// two tagged halves.
fn deficit_conditions(p: &StarPartition, d: i64, tag_one: &str, tag_many: &str) -> [Condition; 2] {
    let a = p.tail().conjugate();
    let (a1, a2) = (a.part(1) as i64, a.part(2) as i64);
    [
        cond(tag_one, p.zeroth() != 1 || d == a1),
        cond(tag_many, p.zeroth() <= 1 || d == a1 || d <= a2),
    ]
}

/// Conditions for the prescribed invariant of the unknown pencil, given the
/// characteristic `known` of the other one.
pub fn prescribed_conditions(
    known: &WeyrCharacteristic,
    target: PrescriptionTarget,
    prescribed: &Prescription,
) -> Result<Vec<Condition>> {
    target.validate(prescribed)?;
    use PrescribedInvariant as P;
    use RankRelation as R;
    let k = known;
    Ok(
        match (target.direction, target.rank_relation, target.invariant) {
            (Direction::FullPrescribed, R::Equal, P::RegularPart) => {
                let w1 = prescribed.regular();
                let d = regular_weight(w1) - regular_weight(k.regular());
                let [one, many] = deficit_conditions(k.row_star(), d, "eqws1", "eqws");
                vec![
                    cond("interww1w+1", interlaces_above(k.regular(), w1)),
                    cond("eqs0geq1", k.row_star().zeroth() >= 1),
                    one,
                    many,
                ]
            }
            (Direction::FullPrescribed, R::Equal, P::ColumnStar) => vec![
                cond("coleqconj", prescribed.star() == k.col_star()),
                cond("eqs0geq1", k.row_star().zeroth() >= 1),
            ],
            (Direction::FullPrescribed, R::Equal, P::RowStar) => {
                let s1 = prescribed.star();
                vec![
                    cond("rowprecconj", is_conjugate_majorized(s1, k.row_star())),
                    cond(
                        "abss1leqabss",
                        s1.star_weight() < k.row_star().star_weight(),
                    ),
                ]
            }
            (Direction::FullPrescribed, _, P::RegularPart) => {
                let w1 = prescribed.regular();
                vec![
                    cond("interw-1w1w", interlaces_below(k.regular(), w1)),
                    cond(
                        "eqwr+",
                        regular_weight(w1) - regular_weight(k.regular())
                            < tail_weight(k.col_star()),
                    ),
                ]
            }
            (Direction::FullPrescribed, _, P::ColumnStar) => {
                let r1 = prescribed.star();
                let x = tail_weight(r1) - tail_weight(k.col_star()) + 1;
                vec![
                    cond("colprecconj", is_conjugate_majorized(k.col_star(), r1)),
                    cond("eqrmins1leqz1", 0 <= x && x <= total_z1(k.regular())),
                ]
            }
            (Direction::FullPrescribed, _, P::RowStar) => vec![
                cond("roweqconj", prescribed.star() == k.row_star()),
                cond(
                    "eqabswabsrgeq1",
                    regular_weight(k.regular()) + k.col_star().star_weight() as i64
                        > k.col_star().zeroth() as i64,
                ),
            ],
            (Direction::SubpencilPrescribed, R::Equal, P::RegularPart) => {
                vec![cond(
                    "interww1w+1",
                    interlaces_above(prescribed.regular(), k.regular()),
                )]
            }
            (Direction::SubpencilPrescribed, R::Equal, P::ColumnStar) => {
                vec![cond("coleqconj", prescribed.star() == k.col_star())]
            }
            (Direction::SubpencilPrescribed, R::Equal, P::RowStar) => {
                let s = prescribed.star();
                let y = tail_weight(s) - tail_weight(k.row_star());
                vec![
                    cond("rowprecconj", is_conjugate_majorized(k.row_star(), s)),
                    cond("eqqsmins1leqz", 0 <= y && y <= total_z1(k.regular())),
                ]
            }
            (Direction::SubpencilPrescribed, _, P::RegularPart) => {
                let w = prescribed.regular();
                let d = regular_weight(w) - regular_weight(k.regular()) - 1;
                let [one, many] = deficit_conditions(k.col_star(), d, "eqwr1", "eqwr");
                vec![
                    cond("interw-1w1w", interlaces_below(w, k.regular())),
                    cond("eqr10", k.col_star().zeroth() >= 1),
                    one,
                    many,
                ]
            }
            (Direction::SubpencilPrescribed, _, P::ColumnStar) => {
                let r = prescribed.star();
                vec![
                    cond("colprecconj", is_conjugate_majorized(r, k.col_star())),
                    cond("eqrr1", tail_weight(k.col_star()) - tail_weight(r) + 1 >= 0),
                ]
            }
            (Direction::SubpencilPrescribed, _, P::RowStar) => vec![
                cond("roweqconj", prescribed.star() == k.row_star()),
                cond("eqr10", k.col_star().zeroth() >= 1),
            ],
        },
    )
}

/// Thms with `H` known: is there an `H1` with the prescribed invariant?
pub fn feasible_prescribed_sub(
    omega_h: &WeyrCharacteristic,
    target: PrescriptionTarget,
    prescribed: &Prescription,
) -> Result<bool> {
    if target.direction != Direction::FullPrescribed {
        return Err(LabError::input(
            "feasible_prescribed_sub needs FULL_PRESCRIBED",
        ));
    }
    Ok(all_hold(&prescribed_conditions(
        omega_h, target, prescribed,
    )?))
}

/// Thms with `H1` known: is there an `H` with the prescribed invariant?
pub fn feasible_prescribed_completion(
    omega_h1: &WeyrCharacteristic,
    target: PrescriptionTarget,
    prescribed: &Prescription,
) -> Result<bool> {
    if target.direction != Direction::SubpencilPrescribed {
        return Err(LabError::input(
            "feasible_prescribed_completion needs SUBPENCIL_PRESCRIBED",
        ));
    }
    Ok(all_hold(&prescribed_conditions(
        omega_h1, target, prescribed,
    )?))
}

/// The first of `0, 1, -1, 2, -2, ...` outside the spectrum of `w`.
pub fn fresh_eigenvalue(w: &RegularPart) -> EigenvalueLabel {
    (0i64..)
        .flat_map(|k| if k == 0 { vec![0] } else { vec![k, -k] })
        .map(EigenvalueLabel::int)
        .find(|l| !w.contains_key(l))
        .expect("spectrum is finite")
}

/// `w(λ0) + conj((x))` at a fresh `λ0`.
fn bump_fresh(w: &RegularPart, x: usize) -> RegularPart {
    let mut out = w.clone();
    if x > 0 {
        let l = fresh_eigenvalue(w);
        let cur = out.get(&l).cloned().unwrap_or_default();
        out.insert(l, cur.add(&Partition::ones(x)));
    }
    out
}

/// Lowers by one the last `x(λ)` nonzero entries of each `w(λ)`, with the
/// total `x` spread greedily in label order (each `x(λ) <= z_1(λ)`).
fn lower_tails(w: &RegularPart, mut x: usize) -> RegularPart {
    let mut out = RegularPart::new();
    for (l, p) in w {
        let z1 = p.len();
        let take = x.min(z1);
        x -= take;
        let parts: Vec<usize> = (1..=z1)
            .map(|i| {
                if i > z1 - take {
                    p.part(i) - 1
                } else {
                    p.part(i)
                }
            })
            .collect();
        out.insert(
            l.clone(),
            Partition::new(parts).expect("lowering the last entries keeps the order"),
        );
    }
    debug_assert_eq!(x, 0);
    out
}

fn star_seq(seq: Vec<usize>) -> StarPartition {
    StarPartition::from_sequence(&seq).expect("construction keeps the sequence weakly decreasing")
}

/// `p` with `p_0` raised by one and `p_{c1}` lowered by one, `c1 = conj(p.tail)_1`.
fn shift_last_column(p: &StarPartition) -> StarPartition {
    let c1 = p.tail().len();
    let mut seq: Vec<usize> = (0..=c1).map(|i| p.get(i)).collect();
    seq[0] += 1;
    seq[c1] -= 1;
    star_seq(seq)
}

/// `p_i - 1` for `0 <= i <= c1`, `c1 = conj(p.tail)_1`.
fn lower_through_support(p: &StarPartition) -> StarPartition {
    let c1 = p.tail().len();
    star_seq((0..=c1).map(|i| p.get(i) - 1).collect())
}

/// The full characteristic of the unknown pencil built by the constructive
/// proofs, checked against the full characterization before it is returned.
pub fn realize_companion(
    known: &WeyrCharacteristic,
    target: PrescriptionTarget,
    prescribed: &Prescription,
) -> Result<WeyrCharacteristic> {
    let conditions = prescribed_conditions(known, target, prescribed)?;
    if !all_hold(&conditions) {
        let failed: Vec<&str> = conditions
            .iter()
            .filter(|c| !c.holds)
            .map(|c| c.tag.as_str())
            .collect();
        return Err(LabError::domain(format!(
            "infeasible prescription, failing {}",
            failed.join(", ")
        )));
    }
    use PrescribedInvariant as P;
    use RankRelation as R;
    let k = known;
    let (w, r, s) = (k.regular(), k.col_star(), k.row_star());
    let companion = match (target.direction, target.rank_relation, target.invariant) {
        (Direction::FullPrescribed, R::Equal, P::RegularPart) => {
            let w1 = prescribed.regular();
            let x = regular_weight(w1) - regular_weight(w);
            WeyrCharacteristic::new(w1.clone(), r.clone(), deficit_construct(s, x)?)
        }
        (Direction::FullPrescribed, R::Equal, P::ColumnStar) => {
            let u1 = s.tail().len();
            WeyrCharacteristic::new(bump_fresh(w, u1), r.clone(), lower_through_support(s))
        }
        (Direction::FullPrescribed, R::Equal, P::RowStar) => {
            let s1 = prescribed.star();
            let x = (tail_weight(s) - tail_weight(s1)) as usize;
            WeyrCharacteristic::new(bump_fresh(w, x), r.clone(), s1.clone())
        }
        (Direction::FullPrescribed, _, P::RegularPart) => {
            let w1 = prescribed.regular();
            let x = regular_weight(w) - regular_weight(w1) - 1;
            let r1 = if x < 0 {
                shift_last_column(r)
            } else {
                r.add_from_zero(&Partition::ones(x as usize + 1))
            };
            WeyrCharacteristic::new(w1.clone(), r1, s.clone())
        }
        (Direction::FullPrescribed, _, P::ColumnStar) => {
            let r1 = prescribed.star();
            let x = (tail_weight(r1) - tail_weight(r) + 1) as usize;
            WeyrCharacteristic::new(lower_tails(w, x), r1.clone(), s.clone())
        }
        (Direction::FullPrescribed, _, P::RowStar) => {
            if r.tail().is_zero() {
                let (l0, p) = w.iter().next().expect("|W| > 0 when |r| = 0");
                let z1 = p.len();
                let parts: Vec<usize> = (1..=z1)
                    .map(|i| if i == z1 { p.part(i) - 1 } else { p.part(i) })
                    .collect();
                let mut w1 = w.clone();
                w1.insert(l0.clone(), Partition::new(parts)?);
                WeyrCharacteristic::new(w1, star_seq(vec![r.zeroth() + 1]), s.clone())
            } else {
                WeyrCharacteristic::new(w.clone(), shift_last_column(r), s.clone())
            }
        }
        (Direction::SubpencilPrescribed, R::Equal, P::RegularPart) => {
            let wp = prescribed.regular();
            let x = (regular_weight(w) - regular_weight(wp)) as usize;
            WeyrCharacteristic::new(
                wp.clone(),
                r.clone(),
                s.add_from_zero(&Partition::ones(x + 1)),
            )
        }
        (Direction::SubpencilPrescribed, R::Equal, P::ColumnStar) => {
            let mut seq = s.to_sequence();
            if seq.is_empty() {
                seq.push(0);
            }
            seq[0] += 1;
            WeyrCharacteristic::new(w.clone(), r.clone(), star_seq(seq))
        }
        (Direction::SubpencilPrescribed, R::Equal, P::RowStar) => {
            let sp = prescribed.star();
            let y = (tail_weight(sp) - tail_weight(s)) as usize;
            WeyrCharacteristic::new(lower_tails(w, y), r.clone(), sp.clone())
        }
        (Direction::SubpencilPrescribed, _, P::RegularPart) => {
            let wp = prescribed.regular();
            let x = regular_weight(wp) - regular_weight(w) - 1;
            WeyrCharacteristic::new(wp.clone(), deficit_construct(r, x)?, s.clone())
        }
        (Direction::SubpencilPrescribed, _, P::ColumnStar) => {
            let rp = prescribed.star();
            let x = (tail_weight(r) - tail_weight(rp) + 1) as usize;
            WeyrCharacteristic::new(bump_fresh(w, x), rp.clone(), s.clone())
        }
        (Direction::SubpencilPrescribed, _, P::RowStar) => {
            let c1 = r.tail().len();
            WeyrCharacteristic::new(bump_fresh(w, c1 + 1), lower_through_support(r), s.clone())
        }
    };
    let (sub, full) = match target.direction {
        Direction::FullPrescribed => (&companion, known),
        Direction::SubpencilPrescribed => (known, &companion),
    };
    let rel = match target.rank_relation {
        R::Equal => R::Equal,
        _ => R::PlusOne,
    };
    if !check_completion_full(sub, full, rel)? {
        return Err(LabError::domain(format!(
            "companion {companion} fails the completion conditions"
        )));
    }
    if Prescription::of(&companion, target.invariant) != *prescribed {
        return Err(LabError::domain(format!(
            "companion {companion} lost the prescribed invariant"
        )));
    }
    Ok(companion)
}

/// CLI-facing verdict.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub feasible: bool,
    pub conditions: Vec<Condition>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub companion: Option<WeyrCharacteristic>,
}

pub fn verdict(
    known: &WeyrCharacteristic,
    target: PrescriptionTarget,
    prescribed: &Prescription,
) -> Result<Verdict> {
    let conditions = prescribed_conditions(known, target, prescribed)?;
    let feasible = all_hold(&conditions);
    let companion = if feasible {
        Some(realize_companion(known, target, prescribed)?)
    } else {
        None
    };
    Ok(Verdict {
        feasible,
        conditions,
        companion,
    })
}

/// A witness found by [`search_rank_one_witness`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub trial: u64,
    pub perturbation: RationalPencil,
}

/// Random search for a rank-one `P` of the given kind with `ω(h + P) = target`.
///
/// Trial `t` draws its `P` from `trial_rng(seed, t)`, and the lowest
/// successful trial index is returned, so the result does not depend on
/// `exec`. `None` means nothing was found within `budget` trials.
pub fn search_rank_one_witness(
    h: &RationalPencil,
    target: &WeyrCharacteristic,
    kind: RankOneKind,
    budget: u64,
    seed: u64,
    exec: Exec,
) -> Result<Option<Witness>> {
    if target.dims() != (h.rows(), h.cols()) {
        return Err(LabError::input(format!(
            "target describes a {:?} pencil, h is {}x{}",
            target.dims(),
            h.rows(),
            h.cols()
        )));
    }
    if h.rows() == 0 || h.cols() == 0 {
        return Ok(None);
    }
    const CHUNK: u64 = 256;
    let mut start = 0;
    while start < budget {
        let end = (start + CHUNK).min(budget);
        let hits = exec.map_range(start..end, |t| {
            let p = random_rank_one_with(&mut trial_rng(seed, t), h.rows(), h.cols(), kind);
            let sum = h.add(&p).expect("same shape");
            match weyr_characteristic(&sum) {
                Ok(w) if &w == target => Some(Witness {
                    trial: t,
                    perturbation: p,
                }),
                _ => None,
            }
        });
        if let Some(w) = hits.into_iter().flatten().next() {
            return Ok(Some(w));
        }
        start = end;
    }
    Ok(None)
}
