//! `pencil-lab`: command-line front end.
//!
//! Exit codes: 0 success, 1 verification failure, 2 input error.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use pencil_lab::bounds::{BoundReport, PerturbationKind, RankRelation, ScenarioLevel};
use pencil_lab::builder::{build_pencil, random_equivalent, random_rank_one, trial_rng};
use pencil_lab::campaign::{run_campaign, scenario_reports, CampaignConfig, CampaignSummary};
use pencil_lab::completion::{
    verdict, Direction, PrescribedInvariant, Prescription, PrescriptionTarget, Verdict,
};
use pencil_lab::fixtures::{parse_fixtures, reachability_fixtures, run_fixture, FixtureOutcome};
use pencil_lab::invariants::{strictly_equivalent, weyr_characteristic};
use pencil_lab::par::Exec;
use pencil_lab::pencil::rank_one_kinds;
use pencil_lab::weyr::regular_from_json;
use pencil_lab::{LabError, RankOneKind, RationalPencil, StarPartition, WeyrCharacteristic};
use serde::de::DeserializeOwned;
use serde::Serialize;

#[derive(Parser)]
#[command(
    name = "pencil-lab",
    version,
    about = "Invariants, perturbation bounds and completions of matrix pencils"
)]
struct Cli {
    #[arg(long, value_enum, global = true, default_value_t = Format::Json)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Row,
    Col,
}

impl From<Kind> for RankOneKind {
    fn from(k: Kind) -> Self {
        match k {
            Kind::Row => RankOneKind::RowType,
            Kind::Col => RankOneKind::ColumnType,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Scenario {
    Exact,
    KindOnly,
    RankOnly,
    None,
}

impl From<Scenario> for ScenarioLevel {
    fn from(s: Scenario) -> Self {
        match s {
            Scenario::Exact => ScenarioLevel::Exact,
            Scenario::KindOnly => ScenarioLevel::KindOnly,
            Scenario::RankOnly => ScenarioLevel::RankOnly,
            Scenario::None => ScenarioLevel::None,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Invariant {
    Regular,
    ColStar,
    RowStar,
}

#[derive(Clone, Copy, ValueEnum)]
enum Towards {
    /// The known pencil is the subpencil; an invariant of the completion is prescribed.
    Completion,
    /// The known pencil is the full one; an invariant of the subpencil is prescribed.
    Sub,
}

#[derive(Clone, Copy, ValueEnum)]
enum Rank {
    Equal,
    MinusOne,
    PlusOne,
}

#[derive(Subcommand)]
enum Command {
    /// Weyr characteristic of a pencil file.
    Invariants { pencil: PathBuf },
    /// Pencil with a given Weyr characteristic, randomized by equivalence when seeded.
    Generate {
        weyr: PathBuf,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Checks H + P against the bound intervals of every scenario it satisfies.
    Perturb {
        pencil: PathBuf,
        /// Rank-one perturbation file; a random one of `--kind` is drawn when absent.
        perturbation: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Kind::Col)]
        kind: Kind,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Only report this coarseness level.
        #[arg(long, value_enum)]
        scenario: Option<Scenario>,
    },
    /// Decides a one-row completion problem with one prescribed invariant.
    Feasible {
        /// Weyr characteristic of the known pencil.
        #[arg(long)]
        known: PathBuf,
        #[arg(long, value_enum)]
        direction: Towards,
        #[arg(long, value_enum)]
        invariant: Invariant,
        /// Rank of the unknown pencil relative to the known one.
        #[arg(long, value_enum)]
        rank: Rank,
        /// The prescribed regular part or star partition.
        #[arg(long)]
        value: PathBuf,
    },
    /// Runs the reachability fixtures.
    Fixtures {
        /// Fixture file to run instead of the bundled suite.
        #[arg(long)]
        file: Option<PathBuf>,
    },
    /// Randomized soundness campaign.
    Campaign {
        /// JSON config; flags override its fields.
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        trials: Option<u64>,
        #[arg(long)]
        budget: Option<usize>,
        #[arg(long, value_enum)]
        kind: Option<Kind>,
        #[arg(long, value_enum)]
        scenario: Option<Scenario>,
        /// Perturb by rank-two pencils; violations are reported, not asserted.
        #[arg(long)]
        fault_injection: bool,
        /// Weight of the exhaustive concordance run, 0 to skip it.
        #[arg(long)]
        concordance_weight: Option<usize>,
        #[arg(long)]
        sequential: bool,
    },
    /// Strict-equivalence test of two pencils.
    Equiv { first: PathBuf, second: PathBuf },
}

enum Failure {
    Verification,
    Input(String),
}

impl From<LabError> for Failure {
    fn from(e: LabError) -> Self {
        Failure::Input(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification) => ExitCode::from(1),
        Err(Failure::Input(msg)) => {
            eprintln!("pencil-lab: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> Outcome {
    let fmt = cli.format;
    match &cli.command {
        Command::Invariants { pencil } => {
            let h: RationalPencil = read_json(pencil)?;
            let omega = weyr_characteristic(&h)?;
            emit(fmt, &omega, || omega.to_string());
            Ok(())
        }
        Command::Generate { weyr, seed } => {
            let omega: WeyrCharacteristic = read_json(weyr)?;
            let mut h = build_pencil(&omega);
            if let Some(seed) = seed {
                h = random_equivalent(&mut trial_rng(*seed, 0), &h);
            }
            emit(fmt, &h, || pencil_text(&h));
            Ok(())
        }
        Command::Perturb {
            pencil,
            perturbation,
            kind,
            seed,
            scenario,
        } => perturb(
            fmt,
            pencil,
            perturbation.as_deref(),
            *kind,
            *seed,
            *scenario,
        ),
        Command::Feasible {
            known,
            direction,
            invariant,
            rank,
            value,
        } => feasible(fmt, known, *direction, *invariant, *rank, value),
        Command::Fixtures { file } => fixtures(fmt, file.as_deref()),
        Command::Campaign {
            config,
            seed,
            trials,
            budget,
            kind,
            scenario,
            fault_injection,
            concordance_weight,
            sequential,
        } => {
            let mut cfg: CampaignConfig = match config {
                Some(path) => read_json(path)?,
                None => CampaignConfig::default(),
            };
            cfg.seed = seed.unwrap_or(cfg.seed);
            cfg.trials = trials.unwrap_or(cfg.trials);
            cfg.budget = budget.unwrap_or(cfg.budget);
            cfg.concordance_weight = concordance_weight.unwrap_or(cfg.concordance_weight);
            cfg.fault_injection |= fault_injection;
            if let Some(k) = kind {
                cfg.kinds = vec![(*k).into()];
            }
            if let Some(s) = scenario {
                cfg.levels = vec![(*s).into()];
            }
            let exec = if *sequential {
                Exec::Sequential
            } else {
                Exec::default()
            };
            let summary = run_campaign(&cfg, exec)?;
            emit(fmt, &summary, || campaign_text(&summary));
            verified(summary.passed)
        }
        Command::Equiv { first, second } => {
            let g: RationalPencil = read_json(first)?;
            let h: RationalPencil = read_json(second)?;
            let equivalent = strictly_equivalent(&g, &h)?;
            let out = serde_json::json!({ "equivalent": equivalent });
            emit(fmt, &out, || {
                if equivalent {
                    "equivalent"
                } else {
                    "not equivalent"
                }
                .to_string()
            });
            verified(equivalent)
        }
    }
}

#[derive(Serialize)]
struct PerturbOutput {
    before: WeyrCharacteristic,
    after: WeyrCharacteristic,
    kinds: Vec<RankOneKind>,
    rank_relation: Option<RankRelation>,
    perturbation: RationalPencil,
    reports: Vec<LevelReport>,
    violations: usize,
}

#[derive(Serialize)]
struct LevelReport {
    level: ScenarioLevel,
    #[serde(flatten)]
    report: BoundReport,
}

fn perturb(
    fmt: Format,
    pencil: &Path,
    perturbation: Option<&Path>,
    kind: Kind,
    seed: u64,
    scenario: Option<Scenario>,
) -> Outcome {
    let h: RationalPencil = read_json(pencil)?;
    let p = match perturbation {
        Some(path) => read_json(path)?,
        None => random_rank_one(seed, h.rows(), h.cols(), kind.into()),
    };
    let kinds = rank_one_kinds(&p)?;
    let g = h.add(&p)?;
    let before = weyr_characteristic(&h)?;
    let after = weyr_characteristic(&g)?;
    let levels = match scenario {
        Some(s) => vec![s.into()],
        None => ScenarioLevel::ALL.to_vec(),
    };
    let pk: Vec<PerturbationKind> = kinds.iter().map(|&k| k.into()).collect();
    let reports: Vec<LevelReport> = scenario_reports(&before, &after, &pk, &levels)?
        .into_iter()
        .map(|(level, report)| LevelReport { level, report })
        .collect();
    let violations = reports.iter().map(|r| r.report.violations.len()).sum();
    let out = PerturbOutput {
        rank_relation: RankRelation::observed(before.rank(), after.rank()),
        before,
        after,
        kinds,
        perturbation: p,
        reports,
        violations,
    };
    emit(fmt, &out, || perturb_text(&out));
    verified(violations == 0)
}

fn feasible(
    fmt: Format,
    known: &Path,
    direction: Towards,
    invariant: Invariant,
    rank: Rank,
    value: &Path,
) -> Outcome {
    let known: WeyrCharacteristic = read_json(known)?;
    let invariant = match invariant {
        Invariant::Regular => PrescribedInvariant::RegularPart,
        Invariant::ColStar => PrescribedInvariant::ColumnStar,
        Invariant::RowStar => PrescribedInvariant::RowStar,
    };
    let direction = match direction {
        Towards::Completion => Direction::SubpencilPrescribed,
        Towards::Sub => Direction::FullPrescribed,
    };
    let rank = match rank {
        Rank::Equal => RankRelation::Equal,
        Rank::MinusOne => RankRelation::MinusOne,
        Rank::PlusOne => RankRelation::PlusOne,
    };
    let raw: serde_json::Value = read_json(value)?;
    let prescribed = match invariant {
        PrescribedInvariant::RegularPart => Prescription::Regular(regular_from_json(raw)?),
        _ => Prescription::Star(
            serde_json::from_value::<StarPartition>(raw).map_err(LabError::from)?,
        ),
    };
    let target = PrescriptionTarget::new(invariant, direction, rank);
    let v = verdict(&known, target, &prescribed)?;
    emit(fmt, &v, || verdict_text(&v));
    Ok(())
}

fn fixtures(fmt: Format, file: Option<&Path>) -> Outcome {
    let cases = match file {
        Some(path) => parse_fixtures(&read_text(path)?)?,
        None => reachability_fixtures(),
    };
    let outcomes: Vec<FixtureOutcome> = cases.iter().map(run_fixture).collect();
    let passed = outcomes.iter().all(|o| o.passed);
    let out = serde_json::json!({ "passed": passed, "cases": outcomes });
    emit(fmt, &out, || fixtures_text(&outcomes));
    verified(passed)
}

fn verified(ok: bool) -> Outcome {
    if ok {
        Ok(())
    } else {
        Err(Failure::Verification)
    }
}

fn read_text(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, Failure> {
    serde_json::from_str(&read_text(path)?)
        .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn emit<T: Serialize>(fmt: Format, value: &T, text: impl FnOnce() -> String) {
    match fmt {
        Format::Json => println!(
            "{}",
            serde_json::to_string_pretty(value).expect("plain data")
        ),
        Format::Text => println!("{}", text()),
    }
}

fn pencil_text(h: &RationalPencil) -> String {
    let mut lines = vec![format!("{} x {}", h.rows(), h.cols())];
    for i in 0..h.rows() {
        let row: Vec<String> = (0..h.cols())
            .map(|j| format!("{} + {} s", h.a().get(i, j), h.b().get(i, j)))
            .collect();
        lines.push(format!("[{}]", row.join(", ")));
    }
    lines.join("\n")
}

fn perturb_text(out: &PerturbOutput) -> String {
    let kinds: Vec<String> = out.kinds.iter().map(|k| k.to_string()).collect();
    let mut lines = vec![
        format!("before: {}", out.before),
        format!("after:  {}", out.after),
        format!("kinds: {}", kinds.join(" ")),
    ];
    for r in &out.reports {
        let status = if r.report.ok() {
            "ok".to_string()
        } else {
            format!("{} violations", r.report.violations.len())
        };
        lines.push(format!(
            "{:?} {}: w {} r {} s {}: {status}",
            r.level, r.report.scenario, r.report.bounds.w, r.report.bounds.r, r.report.bounds.s
        ));
        for v in &r.report.violations {
            lines.push(format!("  {v:?}"));
        }
    }
    lines.join("\n")
}

fn verdict_text(v: &Verdict) -> String {
    let mut lines = vec![format!("feasible: {}", v.feasible)];
    for c in &v.conditions {
        lines.push(format!(
            "  {} {}",
            if c.holds { "holds " } else { "fails " },
            c.tag
        ));
    }
    if let Some(c) = &v.companion {
        lines.push(format!("companion: {c}"));
    }
    lines.join("\n")
}

fn fixtures_text(outcomes: &[FixtureOutcome]) -> String {
    let mut lines = Vec::new();
    for o in outcomes {
        lines.push(format!(
            "{} {}",
            if o.passed { "PASS" } else { "FAIL" },
            o.id
        ));
        for c in o.checks.iter().filter(|c| !c.ok) {
            lines.push(format!(
                "  {:?}_{}: expected {}, got {}",
                c.expected.invariant, c.expected.index, c.expected.value, c.actual
            ));
        }
        for f in &o.failures {
            lines.push(format!("  {f}"));
        }
    }
    lines.join("\n")
}

fn campaign_text(s: &CampaignSummary) -> String {
    let mut lines = vec![
        format!(
            "trials {} checked {} skipped {}",
            s.trials, s.checked_trials, s.skipped_trials
        ),
        format!("checks {} violations {}", s.checks, s.violations),
    ];
    for l in &s.levels {
        lines.push(format!(
            "  {:?}: {} checks, {} violations",
            l.level, l.checks, l.violations
        ));
    }
    for (k, n) in &s.kinds {
        lines.push(format!("  kind {k}: {n}"));
    }
    for (k, n) in &s.rank_relations {
        lines.push(format!("  rank {k}: {n}"));
    }
    if let Some(c) = &s.concordance {
        lines.push(format!(
            "concordance: {} subpencils, {} disagreements",
            c.subpencils,
            c.disagreements.len()
        ));
    }
    lines.push(if s.passed { "PASSED" } else { "FAILED" }.to_string());
    lines.join("\n")
}
