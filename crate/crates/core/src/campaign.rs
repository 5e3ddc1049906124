//! Randomized soundness campaign for the perturbation bounds.
//!
//! Trial `t` draws everything from `trial_rng(seed, t)`: a characteristic
//! `ω`, a random pencil `H` strictly equivalent to `build_pencil(ω)`, and a
//! rank-one `P`. The characteristic of `H + P` is extracted and the change is
//! checked against the bounds of every scenario the trial satisfies. Trials
//! are independent, and the summary does not depend on the executor.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::bounds::{
    check_bounds, BoundReport, Difference, PerturbationKind, PerturbationScenario, RankRelation,
    ScenarioLevel,
};
use crate::builder::{
    build_pencil, random_constant_rank_one_with, random_equivalent, random_rank_one_with,
    random_weyr_with, rank_lowering_rank_one_with, trial_rng,
};
use crate::concordance::{run_concordance, ConcordanceReport};
use crate::error::{LabError, Result};
use crate::invariants::weyr_characteristic;
use crate::par::Exec;
use crate::pencil::{rank_one_kinds, RankOneKind, RationalPencil};
use crate::weyr::WeyrCharacteristic;

const SIZE_ATTEMPTS: usize = 1000;
const SPECTRUM_ATTEMPTS: usize = 32;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct CampaignConfig {
    pub seed: u64,
    pub trials: u64,
    /// Size budget handed to the characteristic generator.
    pub budget: usize,
    /// Largest number of rows or columns of a trial pencil.
    pub max_dim: usize,
    pub kinds: Vec<RankOneKind>,
    pub levels: Vec<ScenarioLevel>,
    /// Perturb by rank-two pencils instead; violations are reported, not asserted.
    pub fault_injection: bool,
    /// Counterexamples kept in the summary.
    pub max_counterexamples: usize,
    /// Weight of the exhaustive concordance run, 0 to skip it.
    pub concordance_weight: usize,
}

impl Default for CampaignConfig {
    fn default() -> Self {
        CampaignConfig {
            seed: 0,
            trials: 1000,
            budget: 6,
            max_dim: 6,
            kinds: vec![RankOneKind::ColumnType, RankOneKind::RowType],
            levels: ScenarioLevel::ALL.to_vec(),
            fault_injection: false,
            max_counterexamples: 10,
            concordance_weight: 4,
        }
    }
}

impl CampaignConfig {
    pub fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(LabError::input("trial count must be at least 1"));
        }
        if self.max_dim == 0 || (self.fault_injection && self.max_dim < 2) {
            return Err(LabError::input(
                "max_dim too small for the perturbations asked for",
            ));
        }
        if self.kinds.is_empty() || self.levels.is_empty() {
            return Err(LabError::input(
                "need at least one perturbation kind and one scenario level",
            ));
        }
        Ok(())
    }
}

/// Everything needed to replay a violation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub trial: u64,
    pub level: ScenarioLevel,
    pub scenario: PerturbationScenario,
    pub before: WeyrCharacteristic,
    pub after: WeyrCharacteristic,
    pub pencil: RationalPencil,
    pub perturbation: RationalPencil,
    pub violations: Vec<Difference>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LevelSummary {
    pub level: ScenarioLevel,
    pub checks: u64,
    pub violations: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CampaignSummary {
    pub config: CampaignConfig,
    pub trials: u64,
    pub checked_trials: u64,
    /// Trials with no pencil of admissible size or no rational spectrum after redraws.
    pub skipped_trials: u64,
    pub checks: u64,
    pub violations: u64,
    pub violating_trials: u64,
    pub zero_violations: bool,
    pub size_redraws: u64,
    pub irrational_redraws: u64,
    pub kinds: BTreeMap<String, u64>,
    pub rank_relations: BTreeMap<String, u64>,
    pub levels: Vec<LevelSummary>,
    pub counterexamples: Vec<Counterexample>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub concordance: Option<ConcordanceReport>,
    /// Zero violations (unless injecting faults) and full concordance.
    pub passed: bool,
}

/// Scenarios a perturbation of the given kinds and observed rank relation
/// satisfies, one per kind and level, with the level they came from.
pub fn satisfied_scenarios(
    kinds: &[PerturbationKind],
    rank_relation: RankRelation,
    levels: &[ScenarioLevel],
) -> Vec<(ScenarioLevel, PerturbationScenario)> {
    let mut out = Vec::new();
    for &kind in kinds {
        let exact = PerturbationScenario::new(kind, rank_relation);
        for &level in levels {
            let s = level.apply(exact);
            if !out.iter().any(|(_, t)| *t == s) {
                out.push((level, s));
            }
        }
    }
    out
}

/// Bound reports for `before -> after` under [`satisfied_scenarios`].
pub fn scenario_reports(
    before: &WeyrCharacteristic,
    after: &WeyrCharacteristic,
    kinds: &[PerturbationKind],
    levels: &[ScenarioLevel],
) -> Result<Vec<(ScenarioLevel, BoundReport)>> {
    let rel = RankRelation::observed(before.rank(), after.rank()).unwrap_or(RankRelation::Unknown);
    satisfied_scenarios(kinds, rel, levels)
        .into_iter()
        .map(|(level, s)| Ok((level, check_bounds(before, after, s)?)))
        .collect()
}

#[derive(Default)]
struct TrialOutcome {
    skipped: bool,
    kind: String,
    rank_relation: String,
    size_redraws: u64,
    irrational_redraws: u64,
    /// Checks and violations per configured level.
    levels: Vec<(u64, u64)>,
    counterexamples: Vec<Counterexample>,
}

fn kind_name(kinds: &[RankOneKind]) -> String {
    match kinds {
        [k] => k.to_string(),
        _ => "BOTH".into(),
    }
}

fn relation_name(rel: Option<RankRelation>, before: usize, after: usize) -> String {
    match rel {
        Some(r) => serde_json::to_value(r)
            .expect("plain enum")
            .as_str()
            .unwrap_or_default()
            .to_string(),
        None => format!("{:+}", after as i64 - before as i64),
    }
}

fn draw_perturbation<R: Rng>(
    rng: &mut R,
    h: &RationalPencil,
    config: &CampaignConfig,
) -> RationalPencil {
    let (m, n) = (h.rows(), h.cols());
    if config.fault_injection {
        loop {
            let k1 = *config.kinds.choose(rng).expect("validated");
            let k2 = *config.kinds.choose(rng).expect("validated");
            let p = random_rank_one_with(rng, m, n, k1)
                .add(&random_rank_one_with(rng, m, n, k2))
                .expect("same shape");
            if p.normal_rank() == 2 {
                return p;
            }
        }
    }
    // generic perturbations almost never lower the rank, so some are built to
    match rng.gen_range(0..8) {
        0 => random_constant_rank_one_with(rng, m, n),
        1 | 2 => {
            let kind = *config.kinds.choose(rng).expect("validated");
            rank_lowering_rank_one_with(rng, h, kind)
                .unwrap_or_else(|| random_rank_one_with(rng, m, n, kind))
        }
        _ => {
            let kind = *config.kinds.choose(rng).expect("validated");
            random_rank_one_with(rng, m, n, kind)
        }
    }
}

fn run_trial(config: &CampaignConfig, trial: u64) -> Result<TrialOutcome> {
    let mut out = TrialOutcome {
        levels: vec![(0, 0); config.levels.len()],
        ..Default::default()
    };
    let mut rng = trial_rng(config.seed, trial);
    let min_dim = if config.fault_injection { 2 } else { 1 };
    let admissible = |(m, n): (usize, usize)| {
        (min_dim..=config.max_dim).contains(&m) && (min_dim..=config.max_dim).contains(&n)
    };
    let mut omega = None;
    for _ in 0..SIZE_ATTEMPTS {
        let w = random_weyr_with(&mut rng, config.budget);
        if admissible(w.dims()) {
            omega = Some(w);
            break;
        }
        out.size_redraws += 1;
    }
    let Some(before) = omega else {
        out.skipped = true;
        return Ok(out);
    };
    let h = random_equivalent(&mut rng, &build_pencil(&before));

    let mut drawn = None;
    for _ in 0..SPECTRUM_ATTEMPTS {
        let p = draw_perturbation(&mut rng, &h, config);
        match weyr_characteristic(&h.add(&p)?) {
            Ok(after) => {
                drawn = Some((p, after));
                break;
            }
            Err(LabError::IrrationalSpectrum(_)) => out.irrational_redraws += 1,
            Err(e) => return Err(e),
        }
    }
    let Some((p, after)) = drawn else {
        out.skipped = true;
        return Ok(out);
    };

    let kinds: Vec<RankOneKind> = if config.fault_injection {
        out.kind = "RANK_TWO".into();
        config.kinds.clone()
    } else {
        let own = rank_one_kinds(&p)?;
        out.kind = kind_name(&own);
        config
            .kinds
            .iter()
            .copied()
            .filter(|k| own.contains(k))
            .collect()
    };
    let rel = RankRelation::observed(before.rank(), after.rank());
    out.rank_relation = relation_name(rel, before.rank(), after.rank());
    let kinds: Vec<PerturbationKind> = kinds.into_iter().map(PerturbationKind::from).collect();
    for (level, report) in scenario_reports(&before, &after, &kinds, &config.levels)? {
        let slot = config
            .levels
            .iter()
            .position(|l| *l == level)
            .expect("level from config");
        out.levels[slot].0 += 1;
        if !report.ok() {
            out.levels[slot].1 += 1;
            out.counterexamples.push(Counterexample {
                trial,
                level,
                scenario: report.scenario,
                before: before.clone(),
                after: after.clone(),
                pencil: h.clone(),
                perturbation: p.clone(),
                violations: report.violations,
            });
        }
    }
    Ok(out)
}

/// Runs the campaign and, if configured, the exhaustive concordance check.
pub fn run_campaign(config: &CampaignConfig, exec: Exec) -> Result<CampaignSummary> {
    config.validate()?;
    let outcomes = exec.map_range(0..config.trials, |t| run_trial(config, t));
    let mut s = CampaignSummary {
        config: config.clone(),
        trials: config.trials,
        checked_trials: 0,
        skipped_trials: 0,
        checks: 0,
        violations: 0,
        violating_trials: 0,
        zero_violations: true,
        size_redraws: 0,
        irrational_redraws: 0,
        kinds: BTreeMap::new(),
        rank_relations: BTreeMap::new(),
        levels: config
            .levels
            .iter()
            .map(|&level| LevelSummary {
                level,
                checks: 0,
                violations: 0,
            })
            .collect(),
        counterexamples: Vec::new(),
        concordance: None,
        passed: false,
    };
    for o in outcomes {
        let o = o?;
        s.size_redraws += o.size_redraws;
        s.irrational_redraws += o.irrational_redraws;
        if o.skipped {
            s.skipped_trials += 1;
            continue;
        }
        s.checked_trials += 1;
        *s.kinds.entry(o.kind).or_insert(0) += 1;
        *s.rank_relations.entry(o.rank_relation).or_insert(0) += 1;
        for (slot, (checks, bad)) in s.levels.iter_mut().zip(o.levels) {
            slot.checks += checks;
            slot.violations += bad;
            s.checks += checks;
            s.violations += bad;
        }
        if !o.counterexamples.is_empty() {
            s.violating_trials += 1;
        }
        let room = config
            .max_counterexamples
            .saturating_sub(s.counterexamples.len());
        s.counterexamples
            .extend(o.counterexamples.into_iter().take(room));
    }
    s.zero_violations = s.violations == 0;
    if config.concordance_weight > 0 {
        let w = config.concordance_weight;
        s.concordance = Some(run_concordance(
            w,
            w,
            &[-1, 0, 1],
            &[-2, -1, 0, 1, 2],
            exec,
        )?);
    }
    let concordant = s.concordance.as_ref().is_none_or(ConcordanceReport::ok);
    s.passed = concordant && (config.fault_injection || s.zero_violations);
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small(trials: u64) -> CampaignConfig {
        CampaignConfig {
            trials,
            concordance_weight: 0,
            ..Default::default()
        }
    }

    #[test]
    fn small_campaign_is_sound() {
        let s = run_campaign(&small(60), Exec::Sequential).unwrap();
        assert_eq!(s.violations, 0, "{:?}", s.counterexamples.first());
        assert!(s.passed);
        assert_eq!(s.checked_trials + s.skipped_trials, 60);
        assert!(s.checks >= 4 * s.checked_trials);
    }

    #[test]
    fn summary_is_deterministic_across_executors() {
        let a =
            serde_json::to_string(&run_campaign(&small(40), Exec::Sequential).unwrap()).unwrap();
        let b = serde_json::to_string(&run_campaign(&small(40), Exec::Parallel).unwrap()).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn rank_two_perturbations_are_reported_not_asserted() {
        let config = CampaignConfig {
            fault_injection: true,
            ..small(80)
        };
        let s = run_campaign(&config, Exec::Sequential).unwrap();
        assert!(s.passed);
        assert_eq!(s.kinds.get("RANK_TWO").copied(), Some(s.checked_trials));
        assert!(
            s.violations > 0,
            "rank-two perturbations should break some bound"
        );
        assert!(!s.counterexamples.is_empty());
    }

    #[test]
    fn zero_trials_rejected() {
        assert!(run_campaign(&small(0), Exec::Sequential).is_err());
    }

    #[test]
    fn scenarios_for_both_kinds() {
        let kinds = [PerturbationKind::ColumnType, PerturbationKind::RowType];
        let s = satisfied_scenarios(&kinds, RankRelation::Equal, &ScenarioLevel::ALL);
        // four per kind, with rank-only and none shared
        assert_eq!(s.len(), 6);
    }
}
