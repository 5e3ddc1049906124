//! Interval bounds on the change of the Weyr characteristic under one-row
//! completion and rank-one perturbation, and the report that checks observed
//! changes against them.
//!
//! All intervals are uniform in the index `i` (and in `λ` for the regular
//! part), so one [`IntervalBound`] per invariant describes a whole theorem item.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{LabError, Result};
use crate::partition::isqrt;
use crate::pencil::{EigenvalueLabel, RankOneKind};
use crate::weyr::WeyrCharacteristic;

/// What is known about the kind of a rank-one perturbation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum PerturbationKind {
    ColumnType,
    RowType,
    Unknown,
}

impl From<RankOneKind> for PerturbationKind {
    fn from(k: RankOneKind) -> Self {
        match k {
            RankOneKind::ColumnType => PerturbationKind::ColumnType,
            RankOneKind::RowType => PerturbationKind::RowType,
        }
    }
}

/// Rank of the changed pencil relative to the reference one.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum RankRelation {
    Equal,
    MinusOne,
    PlusOne,
    Unknown,
}

impl RankRelation {
    /// The relation of `after` to `before`, if it is one of the three possible ones.
    pub fn observed(before: usize, after: usize) -> Option<RankRelation> {
        match after as i64 - before as i64 {
            0 => Some(RankRelation::Equal),
            -1 => Some(RankRelation::MinusOne),
            1 => Some(RankRelation::PlusOne),
            _ => None,
        }
    }

    const KNOWN: [RankRelation; 3] = [
        RankRelation::Equal,
        RankRelation::MinusOne,
        RankRelation::PlusOne,
    ];
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PerturbationScenario {
    pub kind: PerturbationKind,
    pub rank_relation: RankRelation,
}

impl PerturbationScenario {
    pub fn new(kind: PerturbationKind, rank_relation: RankRelation) -> Self {
        PerturbationScenario {
            kind,
            rank_relation,
        }
    }

    pub fn unknown() -> Self {
        PerturbationScenario::new(PerturbationKind::Unknown, RankRelation::Unknown)
    }

    /// This scenario and every coarser one, finest first, without repeats.
    pub fn coarsenings(&self) -> Vec<PerturbationScenario> {
        let mut out = Vec::new();
        for level in ScenarioLevel::ALL {
            let s = level.apply(*self);
            if !out.contains(&s) {
                out.push(s);
            }
        }
        out
    }
}

impl fmt::Display for PerturbationScenario {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}/{:?}", self.kind, self.rank_relation)
    }
}

/// How much of a scenario is kept when coarsening.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ScenarioLevel {
    /// Kind and rank relation.
    Exact,
    /// Kind only; the rank relation is forgotten.
    KindOnly,
    /// Rank relation only; the kind is forgotten.
    RankOnly,
    /// Nothing is known.
    None,
}

impl ScenarioLevel {
    pub const ALL: [ScenarioLevel; 4] = [
        ScenarioLevel::Exact,
        ScenarioLevel::KindOnly,
        ScenarioLevel::RankOnly,
        ScenarioLevel::None,
    ];

    pub fn apply(&self, exact: PerturbationScenario) -> PerturbationScenario {
        match self {
            ScenarioLevel::Exact => exact,
            ScenarioLevel::KindOnly => PerturbationScenario::new(exact.kind, RankRelation::Unknown),
            ScenarioLevel::RankOnly => {
                PerturbationScenario::new(PerturbationKind::Unknown, exact.rank_relation)
            }
            ScenarioLevel::None => PerturbationScenario::unknown(),
        }
    }
}

impl FromStr for ScenarioLevel {
    type Err = LabError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exact" => Ok(ScenarioLevel::Exact),
            "kind-only" => Ok(ScenarioLevel::KindOnly),
            "rank-only" => Ok(ScenarioLevel::RankOnly),
            "none" => Ok(ScenarioLevel::None),
            other => Err(LabError::input(format!("unknown scenario level {other:?}"))),
        }
    }
}

/// A closed integer interval; `None` ends are infinite.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IntervalBound {
    pub lower: Option<i64>,
    pub upper: Option<i64>,
    pub formula_tag: String,
}

impl IntervalBound {
    pub fn new(lower: i64, upper: i64, tag: &str) -> Self {
        debug_assert!(lower <= upper, "{tag}: [{lower}, {upper}]");
        IntervalBound {
            lower: Some(lower),
            upper: Some(upper),
            formula_tag: tag.to_string(),
        }
    }

    pub fn exact(value: i64, tag: &str) -> Self {
        IntervalBound::new(value, value, tag)
    }

    pub fn contains_value(&self, v: i64) -> bool {
        self.lower.is_none_or(|l| l <= v) && self.upper.is_none_or(|u| v <= u)
    }

    /// Whether `other` lies inside `self`.
    pub fn contains(&self, other: &IntervalBound) -> bool {
        let lower_ok = match (self.lower, other.lower) {
            (None, _) => true,
            (Some(_), None) => false,
            (Some(a), Some(b)) => a <= b,
        };
        let upper_ok = match (self.upper, other.upper) {
            (None, _) => true,
            (Some(_), None) => false,
            (Some(a), Some(b)) => b <= a,
        };
        lower_ok && upper_ok
    }

    /// Smallest interval containing both, tagged `tag`.
    pub fn hull(&self, other: &IntervalBound, tag: &str) -> IntervalBound {
        IntervalBound {
            lower: self.lower.zip(other.lower).map(|(a, b)| a.min(b)),
            upper: self.upper.zip(other.upper).map(|(a, b)| a.max(b)),
            formula_tag: tag.to_string(),
        }
    }

    fn retag(self, tag: &str) -> IntervalBound {
        IntervalBound {
            formula_tag: tag.to_string(),
            ..self
        }
    }
}

impl fmt::Display for IntervalBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let lo = self.lower.map_or("-inf".to_string(), |v| v.to_string());
        let hi = self.upper.map_or("+inf".to_string(), |v| v.to_string());
        write!(f, "[{lo}, {hi}] ({})", self.formula_tag)
    }
}

/// Intervals for `Δw_i(λ)` (`i >= 1`), `Δr_i` and `Δs_i` (`i >= 0`).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct InvariantBounds {
    pub w: IntervalBound,
    pub r: IntervalBound,
    pub s: IntervalBound,
}

impl InvariantBounds {
    pub fn contains(&self, other: &InvariantBounds) -> bool {
        self.w.contains(&other.w) && self.r.contains(&other.r) && self.s.contains(&other.s)
    }

    fn hull(&self, other: &InvariantBounds, tags: [&str; 3]) -> InvariantBounds {
        InvariantBounds {
            w: self.w.hull(&other.w, tags[0]),
            r: self.r.hull(&other.r, tags[1]),
            s: self.s.hull(&other.s, tags[2]),
        }
    }
}

fn sq(k: usize) -> i64 {
    isqrt(k as u64) as i64
}

/// Sizes entering the square-root formulas.
struct Sizes {
    r: usize,
    r_star: usize,
    s: usize,
    s_star: usize,
}

impl Sizes {
    fn of(omega: &WeyrCharacteristic) -> Self {
        Sizes {
            r: omega.col_star().tail().weight(),
            r_star: omega.col_star().star_weight(),
            s: omega.row_star().tail().weight(),
            s_star: omega.row_star().star_weight(),
        }
    }
}

/// Bounds for `ω − ω1` where `ω1` is the characteristic of a subpencil with
/// one row fewer. `rel` is the rank of `full` relative to `sub`; `Unknown`
/// gives the rank-free version.
pub fn completion_bounds(
    sub: &WeyrCharacteristic,
    full: &WeyrCharacteristic,
    rel: RankRelation,
) -> Result<InvariantBounds> {
    let s1_star = sub.row_star().star_weight();
    let r = full.col_star().tail().weight();
    Ok(match rel {
        RankRelation::Equal => InvariantBounds {
            w: IntervalBound::new(-1, 0, "eqgpboundw01req"),
            r: IntervalBound::exact(0, "eqgpboundr01lreq"),
            s: IntervalBound::new(1 - sq(s1_star + 1), 1, "eqgpbounds01lreq"),
        },
        RankRelation::PlusOne => InvariantBounds {
            w: IntervalBound::new(0, 1, "eqgpboundw01rdif"),
            r: IntervalBound::new(-1, sq(r), "eqgpboundr01lrdif"),
            s: IntervalBound::exact(0, "eqgpbounds01lrdif"),
        },
        RankRelation::Unknown => InvariantBounds {
            w: IntervalBound::new(-1, 1, "eqgpboundw01"),
            r: IntervalBound::new(-1, sq(r), "eqgpboundr01l"),
            s: IntervalBound::new(1 - sq(s1_star + 1), 1, "eqgpbounds01l"),
        },
        RankRelation::MinusOne => {
            return Err(LabError::input(
                "a one-row completion cannot lower the rank",
            ));
        }
    })
}

/// The four rank configurations of two completions `[h; H1]` and `[g; H1]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum TwoSidedCase {
    /// `rank G = rank H = rank H1`.
    AllEqual,
    /// `rank G = rank H = rank H1 + 1`.
    BothAbove,
    /// `rank G = rank H1 = rank H − 1`.
    Drop,
    /// `rank H = rank H1 = rank G − 1`.
    Rise,
}

impl TwoSidedCase {
    pub const ALL: [TwoSidedCase; 4] = [
        TwoSidedCase::AllEqual,
        TwoSidedCase::BothAbove,
        TwoSidedCase::Drop,
        TwoSidedCase::Rise,
    ];

    /// Cases numbered 1 to 4.
    pub fn from_number(k: u8) -> Result<Self> {
        TwoSidedCase::ALL
            .get((k as usize).wrapping_sub(1))
            .copied()
            .ok_or_else(|| LabError::input(format!("two-sided case must be 1..4, got {k}")))
    }
}

/// Bounds for `ω_G − ω_H` when both pencils complete a common `H1`.
pub fn two_sided_completion_bounds(
    omega_h: &WeyrCharacteristic,
    case: TwoSidedCase,
) -> InvariantBounds {
    let z = Sizes::of(omega_h);
    let w_equal = IntervalBound::new(-1, 1, "eqgpboundwrrr1");
    match case {
        TwoSidedCase::AllEqual => InvariantBounds {
            w: w_equal,
            r: IntervalBound::exact(0, "eqgpboundrrrr1"),
            s: if z.s == 0 {
                IntervalBound::new(0, 1, "eqgpboundsrrr1")
            } else {
                IntervalBound::new(-sq(z.s_star), sq(z.s_star), "eqgpboundsrrr1")
            },
        },
        TwoSidedCase::BothAbove => InvariantBounds {
            w: w_equal,
            r: if z.r == 0 {
                IntervalBound::new(0, 2, "eqgpboundrrrr1+")
            } else {
                IntervalBound::new(-sq(z.r) - 1, sq(z.r - 1) + 2, "eqgpboundrrrr1+")
            },
            s: IntervalBound::exact(0, "eqgpboundsrrr1+"),
        },
        TwoSidedCase::Drop => InvariantBounds {
            w: IntervalBound::new(-2, 0, "eqgpboundwrr+"),
            r: IntervalBound::new(-sq(z.r), 1, "eqgpboundrrr+"),
            s: IntervalBound::new(1 - sq(z.s_star + 1), 1, "eqgpboundsrr+"),
        },
        TwoSidedCase::Rise => InvariantBounds {
            w: IntervalBound::new(0, 2, "eqgpboundwr+r"),
            r: IntervalBound::new(-1, sq(z.r + 1), "eqgpboundrr+r"),
            s: IntervalBound::new(-1, sq(z.s_star) - 1, "eqgpboundsr+r"),
        },
    }
}

/// Perturbations `u v(s)^T`: a constant column factor.
fn column_type_bounds(omega: &WeyrCharacteristic, rel: RankRelation) -> InvariantBounds {
    match rel {
        RankRelation::Equal => {
            let all_equal = two_sided_completion_bounds(omega, TwoSidedCase::AllEqual);
            let above = two_sided_completion_bounds(omega, TwoSidedCase::BothAbove);
            InvariantBounds {
                w: all_equal.w,
                r: above.r,
                s: all_equal.s,
            }
        }
        RankRelation::MinusOne => two_sided_completion_bounds(omega, TwoSidedCase::Drop),
        RankRelation::PlusOne => two_sided_completion_bounds(omega, TwoSidedCase::Rise),
        RankRelation::Unknown => unreachable!("handled by the caller"),
    }
}

/// Perturbations `u(s) v^T`, by transposition of the column case.
fn row_type_bounds(omega: &WeyrCharacteristic, rel: RankRelation) -> InvariantBounds {
    let t = column_type_bounds(&omega.transpose(), rel);
    let (r_tag, s_tag) = match rel {
        RankRelation::Equal => ("eqgpboundrrrr1col", "eqgpboundsrrr1+col"),
        RankRelation::MinusOne => ("eqgpboundrrr+col", "eqgpboundsrr+col"),
        RankRelation::PlusOne => ("eqgpboundrr+rcol", "eqgpboundsr+rcol"),
        RankRelation::Unknown => unreachable!("handled by the caller"),
    };
    InvariantBounds {
        w: t.w,
        r: t.s.retag(r_tag),
        s: t.r.retag(s_tag),
    }
}

/// Either kind, known rank relation.
fn either_kind_bounds(omega: &WeyrCharacteristic, rel: RankRelation) -> InvariantBounds {
    let z = Sizes::of(omega);
    match rel {
        RankRelation::Equal => {
            let merged = |p: usize, p_star: usize, tag: &str| {
                if p == 0 {
                    IntervalBound::new(0, 2, tag)
                } else {
                    IntervalBound::new(
                        (-sq(p) - 1).min(-sq(p_star)),
                        (sq(p - 1) + 2).max(sq(p_star)),
                        tag,
                    )
                }
            };
            InvariantBounds {
                w: IntervalBound::new(-1, 1, "eqgpboundwrrr1"),
                r: merged(z.r, z.r_star, "eqgpboundrrrr1gilt"),
                s: merged(z.s, z.s_star, "eqgpboundrrrr1gilts"),
            }
        }
        RankRelation::MinusOne => InvariantBounds {
            w: IntervalBound::new(-2, 0, "eqgpboundwrr+"),
            r: IntervalBound::new(
                (1 - sq(z.r_star + 1)).min(-sq(z.r)),
                1,
                "eqgpboundrrr+rowcol",
            ),
            s: IntervalBound::new(
                (1 - sq(z.s_star + 1)).min(-sq(z.s)),
                1,
                "eqgpboundsrr+rowcol",
            ),
        },
        RankRelation::PlusOne => InvariantBounds {
            w: IntervalBound::new(0, 2, "eqgpboundwr+r"),
            r: IntervalBound::new(
                -1,
                (sq(z.r_star) - 1).max(sq(z.r + 1)),
                "eqgpboundrr+rrowcol",
            ),
            s: IntervalBound::new(
                -1,
                (sq(z.s_star) - 1).max(sq(z.s + 1)),
                "eqgpboundsr+rrowcol",
            ),
        },
        RankRelation::Unknown => unreachable!("handled by the caller"),
    }
}

/// Nothing known about the perturbation beyond its rank being one.
fn unknown_bounds(omega: &WeyrCharacteristic) -> InvariantBounds {
    let z = Sizes::of(omega);
    let side = |p: usize, p_star: usize, tag: &str| {
        if p == 0 {
            IntervalBound::new((1 - sq(p_star + 1)).min(-1), 2.max(sq(p_star) - 1), tag)
        } else {
            IntervalBound::new(
                (-sq(p_star)).min(-1 - sq(p)),
                (2 + sq(p - 1)).max(sq(p_star)),
                tag,
            )
        }
    };
    InvariantBounds {
        w: IntervalBound::new(-2, 2, "eqgpboundw"),
        r: side(z.r, z.r_star, "eqgpboundr"),
        s: side(z.s, z.s_star, "eqgpbounds"),
    }
}

/// Bounds for `ω(H + P) − ω(H)` under what is known about the rank-one `P`.
pub fn perturbation_bounds(
    omega: &WeyrCharacteristic,
    scenario: PerturbationScenario,
) -> InvariantBounds {
    use PerturbationKind as K;
    let known_rel = scenario.rank_relation != RankRelation::Unknown;
    match (scenario.kind, known_rel) {
        (K::ColumnType, true) => column_type_bounds(omega, scenario.rank_relation),
        (K::RowType, true) => row_type_bounds(omega, scenario.rank_relation),
        (K::Unknown, true) => either_kind_bounds(omega, scenario.rank_relation),
        (K::Unknown, false) => unknown_bounds(omega),
        (kind, false) => {
            let per_rel: Vec<InvariantBounds> = RankRelation::KNOWN
                .iter()
                .map(|&rel| perturbation_bounds(omega, PerturbationScenario::new(kind, rel)))
                .collect();
            let tag = |pick: fn(&InvariantBounds) -> &IntervalBound| {
                let parts: Vec<&str> = per_rel
                    .iter()
                    .map(|b| pick(b).formula_tag.as_str())
                    .collect();
                format!("hull({})", parts.join(","))
            };
            let tags = [tag(|b| &b.w), tag(|b| &b.r), tag(|b| &b.s)];
            let tags = tags.each_ref().map(String::as_str);
            per_rel[1..]
                .iter()
                .fold(per_rel[0].clone(), |acc, b| acc.hull(b, tags))
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Invariant {
    W,
    R,
    S,
}

/// One observed per-index difference `after_i − before_i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Difference {
    pub invariant: Invariant,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lambda: Option<EigenvalueLabel>,
    pub index: usize,
    pub value: i64,
    pub within: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundReport {
    pub scenario: PerturbationScenario,
    pub bounds: InvariantBounds,
    pub differences: Vec<Difference>,
    pub violations: Vec<Difference>,
}

impl BoundReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }

    /// The observed difference at one position (0 if never recorded).
    pub fn difference(
        &self,
        invariant: Invariant,
        lambda: Option<&EigenvalueLabel>,
        index: usize,
    ) -> i64 {
        self.differences
            .iter()
            .find(|d| d.invariant == invariant && d.lambda.as_ref() == lambda && d.index == index)
            .map_or(0, |d| d.value)
    }
}

/// All per-index differences `after − before`: `w` over `i >= 1` and every
/// eigenvalue of either side, `r` and `s` over `i >= 0`, each up to one past
/// the joint support.
pub fn differences(
    before: &WeyrCharacteristic,
    after: &WeyrCharacteristic,
) -> Vec<(Invariant, Option<EigenvalueLabel>, usize, i64)> {
    let mut out = Vec::new();
    let labels: BTreeSet<&EigenvalueLabel> = before.spectrum().chain(after.spectrum()).collect();
    for lambda in labels {
        let (w0, w1) = (before.w(lambda), after.w(lambda));
        for i in 1..=w0.len().max(w1.len()) + 1 {
            out.push((
                Invariant::W,
                Some(lambda.clone()),
                i,
                w1.part(i) as i64 - w0.part(i) as i64,
            ));
        }
    }
    for (inv, b, a) in [
        (Invariant::R, before.col_star(), after.col_star()),
        (Invariant::S, before.row_star(), after.row_star()),
    ] {
        for i in 0..=b.support().max(a.support()) {
            out.push((inv, None, i, a.get(i) as i64 - b.get(i) as i64));
        }
    }
    out
}

/// Compares `after − before` with the intervals of `scenario`.
pub fn check_bounds(
    before: &WeyrCharacteristic,
    after: &WeyrCharacteristic,
    scenario: PerturbationScenario,
) -> Result<BoundReport> {
    if before.dims() != after.dims() {
        return Err(LabError::input(format!(
            "characteristics describe {:?} and {:?} pencils",
            before.dims(),
            after.dims()
        )));
    }
    let bounds = perturbation_bounds(before, scenario);
    let differences: Vec<Difference> = differences(before, after)
        .into_iter()
        .map(|(invariant, lambda, index, value)| {
            let interval = match invariant {
                Invariant::W => &bounds.w,
                Invariant::R => &bounds.r,
                Invariant::S => &bounds.s,
            };
            Difference {
                invariant,
                lambda,
                index,
                value,
                within: interval.contains_value(value),
            }
        })
        .collect();
    let violations = differences.iter().filter(|d| !d.within).cloned().collect();
    Ok(BoundReport {
        scenario,
        bounds,
        differences,
        violations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::{Partition, StarPartition};
    use crate::weyr::RegularPart;

    fn star(seq: &[usize]) -> StarPartition {
        StarPartition::from_sequence(seq).unwrap()
    }

    fn omega(w0: &[usize], r: &[usize], s: &[usize]) -> WeyrCharacteristic {
        let mut reg = RegularPart::new();
        reg.insert(
            EigenvalueLabel::int(0),
            Partition::new(w0.to_vec()).unwrap(),
        );
        WeyrCharacteristic::new(reg, star(r), star(s))
    }

    fn constant_star(value: usize, count: usize) -> StarPartition {
        star(&vec![value; count])
    }

    #[test]
    fn completion_bound_values() {
        // |s*^1| = 3
        let sub = omega(&[], &[0], &[2, 1]);
        let full = omega(&[], &[0], &[3, 1]);
        let b = completion_bounds(&sub, &full, RankRelation::Equal).unwrap();
        assert_eq!((b.s.lower, b.s.upper), (Some(-1), Some(1)));
        assert_eq!((b.r.lower, b.r.upper), (Some(0), Some(0)));
        let b = completion_bounds(&sub, &full, RankRelation::PlusOne).unwrap();
        assert_eq!((b.r.lower, b.r.upper), (Some(-1), Some(0)));
        assert!(completion_bounds(&sub, &full, RankRelation::MinusOne).is_err());
    }

    #[test]
    fn two_sided_values() {
        let b = two_sided_completion_bounds(&omega(&[1], &[0], &[1]), TwoSidedCase::AllEqual);
        assert_eq!((b.s.lower, b.s.upper), (Some(0), Some(1)));
        // |r| = 113
        let mut seq = vec![11; 11];
        seq.extend([1, 1, 1]);
        let w = WeyrCharacteristic::new(RegularPart::new(), star(&seq), star(&[0]));
        assert_eq!(w.col_star().tail().weight(), 113);
        let b = two_sided_completion_bounds(&w, TwoSidedCase::BothAbove);
        assert_eq!((b.r.lower, b.r.upper), (Some(-11), Some(12)));
        let b = two_sided_completion_bounds(&w, TwoSidedCase::Rise);
        assert_eq!((b.w.lower, b.w.upper), (Some(0), Some(2)));
    }

    #[test]
    fn square_root_bounds_from_the_examples() {
        let big = WeyrCharacteristic::new(RegularPart::new(), star(&[0]), constant_star(101, 102));
        assert_eq!(big.row_star().star_weight(), 10302);
        let b = perturbation_bounds(
            &big,
            PerturbationScenario::new(PerturbationKind::ColumnType, RankRelation::Equal),
        );
        assert_eq!((b.s.lower, b.s.upper), (Some(-101), Some(101)));
        let hundred =
            WeyrCharacteristic::new(RegularPart::new(), star(&[0]), constant_star(10, 10));
        let b = perturbation_bounds(
            &hundred,
            PerturbationScenario::new(PerturbationKind::ColumnType, RankRelation::Equal),
        );
        assert_eq!(b.s.upper, Some(10));
        let b = perturbation_bounds(&hundred, PerturbationScenario::unknown());
        assert_eq!((b.w.lower, b.w.upper), (Some(-2), Some(2)));
        assert_eq!(b.w.formula_tag, "eqgpboundw");
    }

    #[test]
    fn row_type_is_the_transposed_column_type() {
        let w = omega(&[2, 1], &[3, 2, 2], &[2, 1]);
        for rel in RankRelation::KNOWN {
            let row = perturbation_bounds(
                &w,
                PerturbationScenario::new(PerturbationKind::RowType, rel),
            );
            let col = perturbation_bounds(
                &w.transpose(),
                PerturbationScenario::new(PerturbationKind::ColumnType, rel),
            );
            assert_eq!((row.r.lower, row.r.upper), (col.s.lower, col.s.upper));
            assert_eq!((row.s.lower, row.s.upper), (col.r.lower, col.r.upper));
            assert_eq!(row.w, col.w);
        }
    }

    #[test]
    fn either_kind_is_the_hull_of_both_kinds() {
        for w in [
            omega(&[1], &[0], &[0]),
            omega(&[2, 1], &[3, 2, 2], &[2, 1]),
            omega(&[], &[4, 1], &[1, 1, 1]),
        ] {
            for rel in RankRelation::KNOWN {
                let col = perturbation_bounds(
                    &w,
                    PerturbationScenario::new(PerturbationKind::ColumnType, rel),
                );
                let row = perturbation_bounds(
                    &w,
                    PerturbationScenario::new(PerturbationKind::RowType, rel),
                );
                let both = perturbation_bounds(
                    &w,
                    PerturbationScenario::new(PerturbationKind::Unknown, rel),
                );
                let hull = col.hull(&row, ["", "", ""]);
                assert_eq!(
                    (both.r.lower, both.r.upper),
                    (hull.r.lower, hull.r.upper),
                    "{w} {rel:?}"
                );
                assert_eq!(
                    (both.s.lower, both.s.upper),
                    (hull.s.lower, hull.s.upper),
                    "{w} {rel:?}"
                );
                assert_eq!((both.w.lower, both.w.upper), (hull.w.lower, hull.w.upper));
            }
        }
    }

    #[test]
    fn identical_characteristics_have_no_violations() {
        let w = omega(&[2, 1], &[1, 1], &[2, 2, 1]);
        for level in ScenarioLevel::ALL {
            let sc = level.apply(PerturbationScenario::new(
                PerturbationKind::RowType,
                RankRelation::Equal,
            ));
            let report = check_bounds(&w, &w, sc).unwrap();
            assert!(report.ok());
            assert!(report.differences.iter().all(|d| d.value == 0));
        }
    }

    #[test]
    fn example_one_differences() {
        let before = omega(&[1, 1], &[1], &[0]);
        let after = omega(&[2], &[1], &[0]);
        let sc = PerturbationScenario::new(PerturbationKind::ColumnType, RankRelation::Equal);
        let report = check_bounds(&before, &after, sc).unwrap();
        let zero = EigenvalueLabel::int(0);
        assert_eq!(report.difference(Invariant::W, Some(&zero), 1), 1);
        assert_eq!(report.difference(Invariant::W, Some(&zero), 2), -1);
        assert!(report.ok());
    }

    #[test]
    fn fabricated_jump_is_flagged() {
        let before = omega(&[1, 1, 1, 1], &[0], &[0]);
        let after = omega(&[4], &[0], &[0]);
        let report = check_bounds(&before, &after, PerturbationScenario::unknown()).unwrap();
        assert!(!report.ok());
        assert!(report
            .violations
            .iter()
            .any(|d| d.invariant == Invariant::W && d.value == 3));
    }

    #[test]
    fn dimension_mismatch_is_an_input_error() {
        let a = omega(&[1], &[0], &[0]);
        let b = omega(&[1, 1], &[0], &[0]);
        assert!(check_bounds(&a, &b, PerturbationScenario::unknown()).is_err());
    }

    #[test]
    fn coarsenings_are_distinct() {
        let sc = PerturbationScenario::new(PerturbationKind::RowType, RankRelation::PlusOne);
        assert_eq!(sc.coarsenings().len(), 4);
        assert_eq!(PerturbationScenario::unknown().coarsenings().len(), 1);
    }
}
