//! Reproduction criteria. Prints one PASS/FAIL line per criterion followed
//! by the individual comparisons, and exits non-zero if any criterion fails.

use std::process::ExitCode;

use casimir_core::validation::{run, Settings, CRITERIA};

fn main() -> ExitCode {
    let settings = Settings::default();
    let mut failed = 0;
    for &id in &CRITERIA {
        let report = run(id, &settings);
        let verdict = if report.pass() { "PASS" } else { "FAIL" };
        println!(
            "criterion {id}: {verdict}  {}  ({:.1} s, budget {} s)",
            report.title,
            report.elapsed.as_secs_f64(),
            report.budget.as_secs()
        );
        for c in &report.checks {
            let mark = if c.pass { "ok" } else { "!!" };
            if c.expected == 0.0 {
                println!("    [{mark}] {}: {:.3e} (limit {:.0e})", c.label, c.actual, c.tolerance);
            } else {
                println!(
                    "    [{mark}] {}: {:.6} (expected {} +/- {})",
                    c.label, c.actual, c.expected, c.tolerance
                );
            }
        }
        if !report.pass() {
            failed += 1;
        }
    }
    println!("{} of {} criteria passed", CRITERIA.len() - failed, CRITERIA.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
