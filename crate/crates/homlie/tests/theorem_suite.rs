//! Runs the full property suite against the default corpus and enforces the
//! coverage manifest: the executed case set must equal the manifest exactly
//! and every case must pass.

use homlie::oracle::suite::{default_corpus, theorem_suite, REQUIRED_CASES};

#[test]
fn suite_covers_manifest_and_passes() {
    let report = theorem_suite(&default_corpus());

    let executed = report.executed_ids();
    assert_eq!(
        executed,
        REQUIRED_CASES.to_vec(),
        "executed cases diverge from the manifest"
    );

    let mut failures = Vec::new();
    for outcome in &report.outcomes {
        println!(
            "{} {} - {}",
            if outcome.passed { "PASS" } else { "FAIL" },
            outcome.id,
            outcome.detail
        );
        if !outcome.passed {
            failures.push(outcome.id.clone());
        }
    }
    assert!(failures.is_empty(), "failing cases: {failures:?}");
}

#[test]
fn manifest_has_no_duplicates() {
    let mut ids = REQUIRED_CASES.to_vec();
    ids.sort_unstable();
    ids.dedup();
    assert_eq!(ids.len(), REQUIRED_CASES.len());
}
