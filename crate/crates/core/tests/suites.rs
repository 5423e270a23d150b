use pnvd::suites::{bent_corpus, SEED_SHIFT_SAMPLES};
use pnvd::{run_suite, Error, SuiteOptions, SUITES};

#[test]
fn unknown_suite_is_an_error() {
    assert!(matches!(run_suite("no-such-suite", SuiteOptions::default()), Err(Error::UnknownSuite(_))));
}

#[test]
fn every_registered_suite_has_cases() {
    for (id, _) in SUITES {
        if *id == "linear-shifts-8-4" {
            continue;
        }
        let s = run_suite(id, SuiteOptions::default()).unwrap();
        assert!(!s.cases.is_empty(), "{id}");
        let failures: Vec<_> = s.failures().map(|c| &c.description).collect();
        assert!(s.passed, "{id}: {failures:?}");
    }
}

#[test]
fn linear_shift_suite_stays_inside_the_catalog() {
    let s = run_suite("linear-shifts-8-4", SuiteOptions::default()).unwrap();
    let outside = s.cases.iter().find(|c| c.description.contains("outside")).unwrap();
    assert!(outside.passed, "{}", outside.observed);
    let distinct = &s.cases[0];
    let n: usize = distinct.observed.parse().unwrap();
    assert!((12..=14).contains(&n), "{n} distinct in {SEED_SHIFT_SAMPLES} samples");
}

#[test]
fn suites_are_deterministic_in_the_seed() {
    let a = SuiteOptions { seed: 3, long: false };
    let x = run_suite("constraint-theorems", a).unwrap();
    let y = run_suite("constraint-theorems", a).unwrap();
    assert_eq!(x.cases.iter().map(|c| &c.observed).collect::<Vec<_>>(), y.cases.iter().map(|c| &c.observed).collect::<Vec<_>>());
}

#[test]
fn corpus_covers_the_required_shapes() {
    let c = bent_corpus();
    assert!(c.len() >= 12);
    for p in [2, 3, 5] {
        assert!(c.iter().any(|(_, f)| f.p() == p));
    }
    assert!(c.iter().all(|(_, f)| (f.p() as u64).pow(f.n()) <= 729));
}

#[test]
fn long_surjectivity_table_is_fully_surjective() {
    let s = run_suite("surjectivity-table", SuiteOptions { seed: 0, long: true }).unwrap();
    let failures: Vec<_> = s.failures().map(|c| &c.observed).collect();
    assert!(s.passed, "{failures:?}");
    assert_eq!(s.cases.len(), 5);
}
