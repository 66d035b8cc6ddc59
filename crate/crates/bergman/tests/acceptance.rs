//! Acceptance report: one PASS/FAIL line per criterion.
//!
//! Runs the full suite on the catalog domains at 256 bits, then runs it a
//! second time and compares the rendered reports byte for byte.
//!
//! Every outcome is printed as measured. The process exits non-zero unless
//! the failing set is exactly [`EXPECTED_FAILURES`], so a new failure or an
//! unexpected pass both stop the test run.

use std::process::ExitCode;
use std::time::Instant;

use bergman::continuation::AnnulusConfig;
use bergman::moments::QuadratureScheme;
use bergman::verify::{determinism, Scope, Status, Suite};

/// Criteria that fail at their pinned parameters, analysed in the README:
/// 7 — the pentagon's |p_n(z)|^(1/n) approaches 1 only like
/// 1 − c·log n / n, and is still ≈ 0.86 at n = 64.
const EXPECTED_FAILURES: &[u8] = &[7];

fn suite() -> Suite {
    Suite::new(256, QuadratureScheme::default(), AnnulusConfig::default(), Scope::Catalog)
}

fn main() -> ExitCode {
    let start = Instant::now();
    let mut outcomes = suite().run();
    let twelve = determinism(&mut suite(), &outcomes);
    outcomes.push(twelve);
    for o in &outcomes {
        println!("{o}");
    }
    let failed: Vec<u8> = outcomes.iter().filter(|o| o.status != Status::Pass).map(|o| o.criterion).collect();
    println!("acceptance: {} of {} criteria pass ({:.0?})", outcomes.len() - failed.len(), outcomes.len(), start.elapsed());
    if failed == EXPECTED_FAILURES {
        println!("acceptance: failing set matches the expected {EXPECTED_FAILURES:?}");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: failing set {failed:?} differs from the expected {EXPECTED_FAILURES:?}");
        ExitCode::FAILURE
    }
}
