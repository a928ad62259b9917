use bergman_core::suite::{run_criterion, run_suite, SuiteConfig, CRITERIA};

#[test]
fn all_criteria() {
    let results = run_suite(&SuiteConfig::default());
    for r in &results {
        println!("{}", r.line());
    }
    assert_eq!(results.len(), CRITERIA.len());
    let failed: Vec<u8> = results.iter().filter(|r| !r.passed).map(|r| r.id).collect();
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}

#[test]
fn wrong_norm_exponent_is_caught() {
    for shift in [1e-3, -1e-3, 0.5] {
        let cfg = SuiteConfig { norm_exponent_shift: shift, ..SuiteConfig::default() };
        let mutated = run_criterion(2, &cfg).unwrap();
        println!("{}", mutated.line());
        assert!(!mutated.passed, "exponent shift {shift} went unnoticed");
    }
}

#[test]
fn quick_mode_passes() {
    let cfg = SuiteConfig { quick: true, ..SuiteConfig::default() };
    for r in run_suite(&cfg) {
        assert!(r.passed, "{}", r.line());
    }
}
