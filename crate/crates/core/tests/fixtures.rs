use pencil_lab::bounds::Invariant;
use pencil_lab::fixtures::{expand_run_length, parse_fixtures, reachability_fixtures, run_fixture};

#[test]
fn all_reachability_cases_pass() {
    let cases = reachability_fixtures();
    assert_eq!(cases.len(), 13);
    for case in &cases {
        let out = run_fixture(case);
        assert!(out.passed, "{}: {:?}", out.id, out.failures);
        assert!(out.sub_feasible && out.completion_feasible);
        assert_eq!(out.violations, 0);
        for check in &out.checks {
            assert!(check.ok);
            assert_eq!(check.actual, check.expected.value);
        }
    }
}

#[test]
fn extremal_values_are_attained() {
    let attained: Vec<(Invariant, i64)> = reachability_fixtures()
        .iter()
        .flat_map(|c| run_fixture(c).checks)
        .filter(|c| c.ok && c.expected.attains.is_some())
        .map(|c| (c.expected.invariant, c.actual))
        .collect();
    for (inv, value) in [
        (Invariant::S, -101),
        (Invariant::R, -11),
        (Invariant::R, 10),
        (Invariant::S, 10),
        (Invariant::R, -100),
        (Invariant::S, -50),
        (Invariant::S, 99),
        (Invariant::W, 1),
        (Invariant::W, -1),
        (Invariant::W, -2),
        (Invariant::W, 2),
    ] {
        assert!(
            attained.contains(&(inv, value)),
            "{inv:?} = {value} not attained"
        );
    }
}

#[test]
fn run_length_notation() {
    assert_eq!(
        expand_run_length("11 x 3, 2, 1 x 2").unwrap(),
        vec![11, 11, 11, 2, 1, 1]
    );
    assert_eq!(expand_run_length("").unwrap(), Vec::<usize>::new());
    assert!(expand_run_length("a x 2").is_err());
    assert!(parse_fixtures("{\"cases\": 3}").is_err());
}
