//! Runs the nine acceptance criteria and prints one line per criterion.

use std::io::Write;

use graphvn::selftest::{self, DEFAULT_SEED};

#[test]
fn acceptance() {
    let outcomes = selftest::run_all(DEFAULT_SEED);
    // Written to the process stdout so the lines survive test capture.
    let mut out = std::io::stdout().lock();
    for outcome in &outcomes {
        writeln!(out, "{outcome}").unwrap();
    }
    let failed: Vec<usize> = outcomes
        .iter()
        .filter(|o| !o.passed)
        .map(|o| o.id)
        .collect();
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
