//! Reachability fixtures: chains `H -> H1 -> G` built from two prescribed
//! completions, whose end points attain the extreme values of the
//! perturbation bounds.
//!
//! Sequences are written run-length, `"11 x 11, 1 x 3"` for eleven 11s
//! followed by three 1s. Star partitions list the zeroth term first.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::bounds::{
    check_bounds, Invariant, PerturbationKind, PerturbationScenario, RankRelation,
};
use crate::completion::{
    check_completion_full, feasible_prescribed_completion, feasible_prescribed_sub,
    realize_companion, Direction, PrescribedInvariant, Prescription, PrescriptionTarget,
};
use crate::error::{LabError, Result};
use crate::partition::{Partition, StarPartition};
use crate::pencil::EigenvalueLabel;
use crate::weyr::{RegularPart, WeyrCharacteristic};

const REACHABILITY: &str = include_str!("../fixtures/reachability.json");

/// Expands `"a x k, b, ..."` into the explicit sequence.
pub fn expand_run_length(text: &str) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    for item in text.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        let (value, count) = match item.split_once('x') {
            Some((v, k)) => (v.trim(), k.trim()),
            None => (item, "1"),
        };
        let bad = |_| LabError::input(format!("bad run-length item {item:?}"));
        let value: usize = value.parse().map_err(bad)?;
        let count: usize = count.parse().map_err(bad)?;
        out.extend(std::iter::repeat_n(value, count));
    }
    Ok(out)
}

fn star(text: &str) -> Result<StarPartition> {
    StarPartition::from_sequence(&expand_run_length(text)?)
}

fn regular(entries: &BTreeMap<String, String>) -> Result<RegularPart> {
    let mut out = RegularPart::new();
    for (label, parts) in entries {
        let p = Partition::new(expand_run_length(parts)?)?;
        if !p.is_zero() {
            out.insert(label.parse()?, p);
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, Deserialize)]
struct RawCharacteristic {
    regular: BTreeMap<String, String>,
    r_star: String,
    s_star: String,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
enum RawValue {
    Star(String),
    Regular(BTreeMap<String, String>),
}

#[derive(Clone, Debug, Deserialize)]
struct RawStep {
    invariant: PrescribedInvariant,
    rank_relation: RankRelation,
    value: RawValue,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Attains {
    Lower,
    Upper,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExpectedDifference {
    pub invariant: Invariant,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda: Option<EigenvalueLabel>,
    pub index: usize,
    pub value: i64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub attains: Option<Attains>,
}

#[derive(Clone, Debug, Deserialize)]
struct RawCase {
    id: String,
    rank_relation: RankRelation,
    h: RawCharacteristic,
    sub: RawStep,
    completion: RawStep,
    expected: Vec<ExpectedDifference>,
}

#[derive(Deserialize)]
struct RawFile {
    cases: Vec<RawCase>,
}

/// One prescribed-invariant completion step.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixtureStep {
    pub target: PrescriptionTarget,
    pub prescribed: Prescription,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixtureCase {
    pub id: String,
    /// Rank of `G` relative to `H`.
    pub rank_relation: RankRelation,
    pub h: WeyrCharacteristic,
    /// `H` known, an invariant of `H1` prescribed.
    pub sub: FixtureStep,
    /// `H1` known, an invariant of `G` prescribed.
    pub completion: FixtureStep,
    pub expected: Vec<ExpectedDifference>,
}

fn step(raw: &RawStep, direction: Direction) -> Result<FixtureStep> {
    let prescribed = match (&raw.value, raw.invariant) {
        (RawValue::Regular(m), PrescribedInvariant::RegularPart) => {
            Prescription::Regular(regular(m)?)
        }
        (RawValue::Star(s), PrescribedInvariant::ColumnStar | PrescribedInvariant::RowStar) => {
            Prescription::Star(star(s)?)
        }
        _ => {
            return Err(LabError::input(format!(
                "value does not fit {:?}",
                raw.invariant
            )))
        }
    };
    Ok(FixtureStep {
        target: PrescriptionTarget::new(raw.invariant, direction, raw.rank_relation),
        prescribed,
    })
}

pub fn parse_fixtures(json: &str) -> Result<Vec<FixtureCase>> {
    let raw: RawFile = serde_json::from_str(json)?;
    raw.cases
        .into_iter()
        .map(|c| {
            Ok(FixtureCase {
                h: WeyrCharacteristic::new(
                    regular(&c.h.regular)?,
                    star(&c.h.r_star)?,
                    star(&c.h.s_star)?,
                ),
                sub: step(&c.sub, Direction::FullPrescribed)?,
                completion: step(&c.completion, Direction::SubpencilPrescribed)?,
                id: c.id,
                rank_relation: c.rank_relation,
                expected: c.expected,
            })
        })
        .collect()
}

/// The bundled reachability suite.
pub fn reachability_fixtures() -> Vec<FixtureCase> {
    parse_fixtures(REACHABILITY).expect("bundled fixtures parse")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckedDifference {
    #[serde(flatten)]
    pub expected: ExpectedDifference,
    pub actual: i64,
    pub lower: Option<i64>,
    pub upper: Option<i64>,
    pub ok: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FixtureOutcome {
    pub id: String,
    pub passed: bool,
    pub sub_feasible: bool,
    pub completion_feasible: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub h1: Option<WeyrCharacteristic>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub g: Option<WeyrCharacteristic>,
    pub checks: Vec<CheckedDifference>,
    pub violations: usize,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub failures: Vec<String>,
}

/// Runs both completion steps, then checks `(H, G)` against the column-type
/// bounds for the observed rank change and compares the listed differences.
pub fn run_fixture(case: &FixtureCase) -> FixtureOutcome {
    let mut out = FixtureOutcome {
        id: case.id.clone(),
        passed: false,
        sub_feasible: false,
        completion_feasible: false,
        h1: None,
        g: None,
        checks: Vec::new(),
        violations: 0,
        failures: Vec::new(),
    };
    if let Err(e) = run_into(case, &mut out) {
        out.failures.push(e.to_string());
    }
    out.passed = out.failures.is_empty();
    out
}

fn run_into(case: &FixtureCase, out: &mut FixtureOutcome) -> Result<()> {
    out.sub_feasible = feasible_prescribed_sub(&case.h, case.sub.target, &case.sub.prescribed)?;
    if !out.sub_feasible {
        out.failures
            .push("subpencil prescription infeasible".into());
        return Ok(());
    }
    let h1 = realize_companion(&case.h, case.sub.target, &case.sub.prescribed)?;
    out.completion_feasible =
        feasible_prescribed_completion(&h1, case.completion.target, &case.completion.prescribed)?;
    if !out.completion_feasible {
        out.failures
            .push("completion prescription infeasible".into());
        out.h1 = Some(h1);
        return Ok(());
    }
    let g = realize_companion(&h1, case.completion.target, &case.completion.prescribed)?;
    let full_rel = |r: RankRelation| {
        if r == RankRelation::Equal {
            r
        } else {
            RankRelation::PlusOne
        }
    };
    if !check_completion_full(&h1, &case.h, full_rel(case.sub.target.rank_relation))?
        || !check_completion_full(&h1, &g, full_rel(case.completion.target.rank_relation))?
    {
        out.failures
            .push("companion pair fails the completion conditions".into());
    }
    if RankRelation::observed(case.h.rank(), g.rank()) != Some(case.rank_relation) {
        out.failures.push(format!(
            "rank {} -> {} is not {:?}",
            case.h.rank(),
            g.rank(),
            case.rank_relation
        ));
    }
    let scenario = PerturbationScenario::new(PerturbationKind::ColumnType, case.rank_relation);
    let report = check_bounds(&case.h, &g, scenario)?;
    out.violations = report.violations.len();
    if out.violations > 0 {
        out.failures
            .push(format!("{} bound violations", out.violations));
    }
    for e in &case.expected {
        let actual = report.difference(e.invariant, e.lambda.as_ref(), e.index);
        let bound = match e.invariant {
            Invariant::W => &report.bounds.w,
            Invariant::R => &report.bounds.r,
            Invariant::S => &report.bounds.s,
        };
        let endpoint_ok = match e.attains {
            None => true,
            Some(Attains::Lower) => bound.lower == Some(actual),
            Some(Attains::Upper) => bound.upper == Some(actual),
        };
        let ok = actual == e.value && endpoint_ok;
        if !ok {
            out.failures.push(format!(
                "{:?}[{}] expected {} got {} (bound {})",
                e.invariant, e.index, e.value, actual, bound
            ));
        }
        out.checks.push(CheckedDifference {
            expected: e.clone(),
            actual,
            lower: bound.lower,
            upper: bound.upper,
            ok,
        });
    }
    out.h1 = Some(h1);
    out.g = Some(g);
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn run_length_expansion() {
        assert_eq!(
            expand_run_length("11 x 2, 1 x 3").unwrap(),
            vec![11, 11, 1, 1, 1]
        );
        assert_eq!(expand_run_length("2, 1").unwrap(), vec![2, 1]);
        assert_eq!(expand_run_length("").unwrap(), Vec::<usize>::new());
        assert!(expand_run_length("a x 2").is_err());
    }

    #[test]
    fn bundled_suite_has_thirteen_cases() {
        let cases = reachability_fixtures();
        assert_eq!(cases.len(), 13);
        let lower = cases.iter().find(|c| c.id == "reach-r-lower").unwrap();
        assert_eq!(lower.h.col_star().star_weight(), 11 * 11 + 3);
        assert_eq!(lower.h.col_star().tail().weight(), 113);
    }

    #[test]
    fn every_bundled_case_passes() {
        for case in reachability_fixtures() {
            let out = run_fixture(&case);
            assert!(out.passed, "{}: {:?}", case.id, out.failures);
        }
    }

    #[test]
    fn wrong_expectation_is_reported() {
        let mut case = reachability_fixtures().remove(0);
        case.expected[0].value = 2;
        let out = run_fixture(&case);
        assert!(!out.passed);
        assert!(!out.checks[0].ok);
    }
}
