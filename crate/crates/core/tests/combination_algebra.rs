mod common;

use common::{cube_from_codes, frame};
use proptest::prelude::*;
use proptest::test_runner::RngSeed;
use pyramid_evidence::evidence::{
    combine, combine_all, simple_support, Clause, EvidenceError, MassFunction, CONFLICT_LIMIT,
};

fn config() -> ProptestConfig {
    ProptestConfig {
        cases: 256,
        rng_seed: RngSeed::Fixed(0xa1_6eb7a),
        failure_persistence: None,
        ..ProptestConfig::default()
    }
}

type Spec = Vec<(Vec<u8>, f64)>;

fn masses(n: usize, count: usize) -> impl Strategy<Value = Vec<Spec>> {
    prop::collection::vec(
        prop::collection::vec((prop::collection::vec(0u8..3, n), 0.01f64..1.0), 1..=5),
        count,
    )
}

fn build(n: usize, spec: &[(Vec<u8>, f64)]) -> MassFunction {
    let f = frame(n);
    MassFunction::normalized(&f, spec.iter().map(|(c, w)| (cube_from_codes(&f, c), *w))).unwrap()
}

fn gap(a: &MassFunction, b: &MassFunction) -> f64 {
    a.focals()
        .chain(b.focals())
        .map(|(c, _)| (a.mass(&c) - b.mass(&c)).abs())
        .fold(0.0, f64::max)
}

fn case(count: usize) -> impl Strategy<Value = (usize, Vec<Spec>)> {
    (1usize..=4).prop_flat_map(move |n| (Just(n), masses(n, count)))
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn commutative((n, ms) in case(2)) {
        let (a, b) = (build(n, &ms[0]), build(n, &ms[1]));
        match (combine(&a, &b), combine(&b, &a)) {
            (Ok(ab), Ok(ba)) => {
                prop_assert!(gap(&ab.result, &ba.result) <= 1e-12);
                prop_assert!((ab.conflict - ba.conflict).abs() <= 1e-12);
            }
            (Err(EvidenceError::TotalConflict(_)), Err(EvidenceError::TotalConflict(_))) => {}
            _ => prop_assert!(false, "only one order failed"),
        }
    }

    #[test]
    fn associative((n, ms) in case(3)) {
        let (a, b, c) = (build(n, &ms[0]), build(n, &ms[1]), build(n, &ms[2]));
        let left = combine(&a, &b).and_then(|ab| combine(&ab.result, &c));
        let right = combine(&b, &c).and_then(|bc| combine(&a, &bc.result));
        if let (Ok(l), Ok(r)) = (left, right) {
            prop_assert!(gap(&l.result, &r.result) <= 1e-9);
        }
    }

    #[test]
    fn vacuous_is_exact_identity((n, ms) in case(1)) {
        let m = build(n, &ms[0]);
        let v = MassFunction::vacuous(m.frame());
        let out = combine(&m, &v).unwrap();
        prop_assert_eq!(out.conflict, 0.0);
        prop_assert_eq!(&out.result, &m);
        prop_assert_eq!(&combine(&v, &m).unwrap().result, &m);
    }

    #[test]
    fn result_is_normalized((n, ms) in case(3)) {
        let built: Vec<MassFunction> = ms.iter().map(|s| build(n, s)).collect();
        if let Ok(out) = combine_all(&built) {
            prop_assert!((out.result.total() - 1.0).abs() <= 1e-9);
            prop_assert!(out.result.check().is_ok());
            prop_assert!(out.result.focals().all(|(_, m)| m > 0.0));
            prop_assert!((0.0..1.0).contains(&out.conflict));
        }
    }

    #[test]
    fn conflict_of_opposed_supports(s1 in 0.0f64..=1.0, s2 in 0.0f64..=1.0) {
        let f = frame(1);
        let a = simple_support(&f, &Clause::atom(&f, "a").unwrap(), s1).unwrap();
        let not_a = simple_support(&f, &Clause::negated(&f, "a").unwrap(), s2).unwrap();
        let k = s1 * s2;
        match combine(&a, &not_a) {
            Ok(out) => {
                prop_assert!(k < 1.0 - CONFLICT_LIMIT);
                prop_assert!((out.conflict - k).abs() <= 1e-15);
            }
            Err(EvidenceError::TotalConflict(reported)) => {
                prop_assert!(k >= 1.0 - CONFLICT_LIMIT);
                prop_assert_eq!(reported, k);
            }
            Err(e) => prop_assert!(false, "unexpected {e}"),
        }
    }
}

#[test]
fn total_conflict_threshold() {
    let f = frame(1);
    let a = simple_support(&f, &Clause::atom(&f, "a").unwrap(), 1.0).unwrap();
    let near = |s: f64| simple_support(&f, &Clause::negated(&f, "a").unwrap(), s).unwrap();
    assert!(matches!(combine(&a, &near(1.0)), Err(EvidenceError::TotalConflict(k)) if k == 1.0));
    assert!(matches!(
        combine(&a, &near(1.0 - 1e-13)),
        Err(EvidenceError::TotalConflict(_))
    ));
    let out = combine(&a, &near(1.0 - 1e-11)).unwrap();
    assert!((out.conflict - (1.0 - 1e-11)).abs() < 1e-15);
    assert_eq!(out.result.mass(&Clause::atom(&f, "a").unwrap()), 1.0);
}

#[test]
fn combine_all_reports_aggregate_conflict() {
    let f = frame(2);
    let ms = [
        simple_support(&f, &Clause::atom(&f, "a").unwrap(), 0.5).unwrap(),
        simple_support(&f, &Clause::negated(&f, "a").unwrap(), 0.5).unwrap(),
        simple_support(&f, &Clause::negated(&f, "b").unwrap(), 0.4).unwrap(),
        simple_support(&f, &Clause::atom(&f, "b").unwrap(), 0.5).unwrap(),
    ];
    let mut kept = 1.0;
    let mut acc = ms[0].clone();
    for m in &ms[1..] {
        let step = combine(&acc, m).unwrap();
        kept *= 1.0 - step.conflict;
        acc = step.result;
    }
    let all = combine_all(&ms).unwrap();
    assert!((all.conflict - (1.0 - kept)).abs() < 1e-15);
    assert!(all.conflict > 0.25);
    assert_eq!(all.result, acc);
}
