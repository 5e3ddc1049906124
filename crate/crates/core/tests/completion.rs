use std::collections::BTreeSet;

use pencil_lab::bounds::{completion_bounds, differences, Invariant, RankRelation};
use pencil_lab::builder::{build_pencil, random_equivalent, random_weyr_with, trial_rng};
use pencil_lab::completion::{
    check_completion_full, completion_relation, feasible_prescribed_completion,
    feasible_prescribed_sub, realize_companion, Direction, PrescribedInvariant, Prescription,
    PrescriptionTarget,
};
use pencil_lab::concordance::base_labels;
use pencil_lab::enumerate::{characteristics_up_to, characteristics_with_dims};
use pencil_lab::invariants::weyr_characteristic;
use pencil_lab::{EigenvalueLabel, RationalPencil, WeyrCharacteristic};
use rand::Rng;

const INVARIANTS: [PrescribedInvariant; 3] = [
    PrescribedInvariant::RegularPart,
    PrescribedInvariant::ColumnStar,
    PrescribedInvariant::RowStar,
];

/// Rank of the unknown side relative to the known one, as the targets phrase it.
fn unknown_relative(direction: Direction, full_vs_sub: RankRelation) -> RankRelation {
    match (direction, full_vs_sub) {
        (Direction::SubpencilPrescribed, r) => r,
        (Direction::FullPrescribed, RankRelation::Equal) => RankRelation::Equal,
        (Direction::FullPrescribed, _) => RankRelation::MinusOne,
    }
}

/// A random subpencil and a random row on top of it, with both characteristics.
fn random_completion(t: u64) -> Option<(WeyrCharacteristic, WeyrCharacteristic, RankRelation)> {
    let mut rng = trial_rng(31, t);
    let omega1 = random_weyr_with(&mut rng, 7);
    let h1 = random_equivalent(&mut rng, &build_pencil(&omega1));
    let n = h1.cols();
    if n == 0 {
        return None;
    }
    let mut entries = || (0..n).map(|_| rng.gen_range(-2..=2)).collect::<Vec<i64>>();
    let (a, b) = (entries(), entries());
    let row = RationalPencil::from_i64(1, n, &a, &b);
    let h = h1.stack_below(&row).unwrap();
    let omega = weyr_characteristic(&h).ok()?;
    let rel = completion_relation(&omega1, &omega).unwrap();
    Some((omega1, omega, rel))
}

#[test]
fn observed_completions_satisfy_the_characterization() {
    let mut seen = BTreeSet::new();
    for t in 0..500 {
        let Some((sub, full, rel)) = random_completion(t) else {
            continue;
        };
        seen.insert(format!("{rel:?}"));
        assert!(
            check_completion_full(&sub, &full, rel).unwrap(),
            "trial {t}: {sub} -> {full}"
        );

        let bounds = completion_bounds(&sub, &full, rel).unwrap();
        for (inv, _, i, d) in differences(&sub, &full) {
            let interval = match inv {
                Invariant::W => &bounds.w,
                Invariant::R => &bounds.r,
                Invariant::S => &bounds.s,
            };
            assert!(
                interval.contains_value(d),
                "trial {t}: {inv:?}_{i} = {d} outside {interval}"
            );
        }

        let (r, r1) = (full.col_star().star_weight(), sub.col_star().star_weight());
        let (s, s1) = (full.row_star().star_weight(), sub.row_star().star_weight());
        match rel {
            RankRelation::Equal => assert!(s > s1, "trial {t}"),
            _ => assert!(r <= r1, "trial {t}"),
        }
    }
    assert_eq!(seen.len(), 2);
}

#[test]
fn companions_are_realized_for_observed_prescriptions() {
    let mut realized = 0;
    for t in 0..500 {
        let Some((sub, full, rel)) = random_completion(t) else {
            continue;
        };
        for invariant in INVARIANTS {
            for (direction, known, other) in [
                (Direction::SubpencilPrescribed, &sub, &full),
                (Direction::FullPrescribed, &full, &sub),
            ] {
                let target =
                    PrescriptionTarget::new(invariant, direction, unknown_relative(direction, rel));
                let prescribed = Prescription::of(other, invariant);
                let feasible = match direction {
                    Direction::SubpencilPrescribed => {
                        feasible_prescribed_completion(known, target, &prescribed)
                    }
                    Direction::FullPrescribed => {
                        feasible_prescribed_sub(known, target, &prescribed)
                    }
                }
                .unwrap();
                assert!(feasible, "trial {t}: {target:?} from {known}");
                let companion = realize_companion(known, target, &prescribed).unwrap();
                assert_eq!(Prescription::of(&companion, invariant), prescribed);
                let (s, f) = match direction {
                    Direction::SubpencilPrescribed => (&sub, &companion),
                    Direction::FullPrescribed => (&companion, &full),
                };
                assert!(
                    check_completion_full(s, f, rel).unwrap(),
                    "trial {t}: {s} -> {f}"
                );
                realized += 1;
            }
        }
    }
    assert!(realized > 1000);
}

fn labels_around(omega: &WeyrCharacteristic) -> Vec<EigenvalueLabel> {
    let mut labels: BTreeSet<EigenvalueLabel> = base_labels().into_iter().collect();
    labels.extend(omega.spectrum().cloned());
    labels.extend([EigenvalueLabel::int(1), EigenvalueLabel::int(-1)]);
    labels.into_iter().collect()
}

/// The prescribed-invariant predicates are the projections of the full
/// characterization: enumerate every companion of the right size.
#[test]
fn prescribed_predicates_are_projections() {
    for known in characteristics_up_to(5, None, &base_labels()) {
        let (m, n) = known.dims();
        let rho = known.rank();
        let labels = labels_around(&known);
        let mut cases: Vec<(Direction, RankRelation, Vec<WeyrCharacteristic>)> = Vec::new();
        // known is the subpencil: companions are (m + 1) x n
        for (rel, rank) in [(RankRelation::Equal, rho), (RankRelation::PlusOne, rho + 1)] {
            cases.push((
                Direction::SubpencilPrescribed,
                rel,
                characteristics_with_dims(m + 1, n, rank, &labels),
            ));
        }
        // known is the full pencil: companions are (m - 1) x n
        if m >= 1 {
            for (rel, rank) in [
                (RankRelation::Equal, Some(rho)),
                (RankRelation::PlusOne, rho.checked_sub(1)),
            ] {
                let Some(rank) = rank else { continue };
                cases.push((
                    Direction::FullPrescribed,
                    rel,
                    characteristics_with_dims(m - 1, n, rank, &labels),
                ));
            }
        }
        for (direction, rel, companions) in cases {
            let target_rel = unknown_relative(direction, rel);
            let fits = |c: &WeyrCharacteristic| match direction {
                Direction::SubpencilPrescribed => check_completion_full(&known, c, rel).unwrap(),
                Direction::FullPrescribed => check_completion_full(c, &known, rel).unwrap(),
            };
            let fitting: Vec<&WeyrCharacteristic> = companions.iter().filter(|c| fits(c)).collect();
            for invariant in INVARIANTS {
                let target = PrescriptionTarget::new(invariant, direction, target_rel);
                let candidates: BTreeSet<String> = companions
                    .iter()
                    .map(|c| serde_json::to_string(&Prescription::of(c, invariant)).unwrap())
                    .collect();
                for text in candidates {
                    let prescribed: Prescription = serde_json::from_str(&text).unwrap();
                    let exists = fitting
                        .iter()
                        .any(|c| Prescription::of(c, invariant) == prescribed);
                    let predicted = match direction {
                        Direction::SubpencilPrescribed => {
                            feasible_prescribed_completion(&known, target, &prescribed)
                        }
                        Direction::FullPrescribed => {
                            feasible_prescribed_sub(&known, target, &prescribed)
                        }
                    }
                    .unwrap();
                    assert_eq!(predicted, exists, "{known}, {target:?}, {text}");
                }
            }
        }
    }
}

#[test]
fn wrong_direction_and_relation_are_input_errors() {
    let omega = WeyrCharacteristic::default();
    let star = Prescription::of(&omega, PrescribedInvariant::ColumnStar);
    let t = PrescriptionTarget::new(
        PrescribedInvariant::ColumnStar,
        Direction::FullPrescribed,
        RankRelation::PlusOne,
    );
    assert!(feasible_prescribed_sub(&omega, t, &star).is_err());
    let t = PrescriptionTarget::new(
        PrescribedInvariant::ColumnStar,
        Direction::SubpencilPrescribed,
        RankRelation::Equal,
    );
    assert!(feasible_prescribed_sub(&omega, t, &star).is_err());
    let t = PrescriptionTarget::new(
        PrescribedInvariant::RegularPart,
        Direction::SubpencilPrescribed,
        RankRelation::Equal,
    );
    assert!(feasible_prescribed_completion(&omega, t, &star).is_err());
}
