use pencil_lab::completion::check_completion_full;
use pencil_lab::completion::completion_relation;
use pencil_lab::concordance::{predicted_completions, row_oracle, run_concordance};
use pencil_lab::par::Exec;

#[test]
fn small_weights_agree_with_rows_of_small_entries() {
    let report = run_concordance(4, 4, &[-1, 0, 1], &[-2, -1, 0, 1, 2], Exec::default()).unwrap();
    assert!(report.subpencils > 100);
    assert!(report.reachable > 0 && report.predicted > 0);
    assert!(
        report.disagreements.is_empty(),
        "{:#?}",
        report.disagreements
    );
    // every miss left after widening is a completion by one large Jordan block
    for miss in &report.oracle_misses {
        assert!(!miss.reached);
        assert!(check_completion_full(
            &miss.sub,
            &miss.full,
            completion_relation(&miss.sub, &miss.full).unwrap()
        )
        .unwrap());
        assert!(
            miss.full.regular().values().any(|w| w.len() >= 4),
            "{} -> {}",
            miss.sub,
            miss.full
        );
    }
}

#[test]
fn reports_do_not_depend_on_the_executor() {
    let a = run_concordance(3, 3, &[-1, 0, 1], &[], Exec::Sequential).unwrap();
    let b = run_concordance(3, 3, &[-1, 0, 1], &[], Exec::Parallel).unwrap();
    assert_eq!(a, b);
    assert!(a.ok());
}

#[test]
fn reached_completions_are_predicted_at_weight_three() {
    for sub in pencil_lab::enumerate::characteristics_up_to(
        3,
        Some(3),
        &pencil_lab::concordance::base_labels(),
    ) {
        if sub.dims().1 == 0 {
            continue;
        }
        let oracle = row_oracle(&sub, &[-1, 0, 1]).unwrap();
        let predicted = predicted_completions(&sub, 4).unwrap();
        for full in oracle
            .reachable
            .iter()
            .filter(|w| pencil_lab::enumerate::total_weight(w) <= 4)
        {
            assert!(predicted.contains(full), "{sub} -> {full}");
        }
    }
}

/// Weight five, with every subpencil that misses a completion rerun on
/// entries in `-2..=2`. Slow: run with `--ignored`.
#[test]
#[ignore]
fn weight_five_with_wide_entries() {
    let report = run_concordance(5, 5, &[-1, 0, 1], &[-2, -1, 0, 1, 2], Exec::default()).unwrap();
    assert!(
        report.disagreements.is_empty(),
        "{:#?}",
        report.disagreements
    );
    assert!(report.resolved_by_widening > 0);
}
