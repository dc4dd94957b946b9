//! Acceptance suite: one line per criterion, non-zero exit on any failure.
//!
//! Criteria 1 to 9 run in-process with the full sweep configuration.
//! Criterion 10 runs `nielsen-kit verify-all` end to end and requires exit
//! code 0 within the total budget.

use std::process::{Command, ExitCode};
use std::time::Instant;

use nielsen_core::verify::{self, CriterionResult, VerifyConfig};
use serde_json::Value;

fn criterion_10() -> (bool, String) {
    let dir = tempfile::tempdir().expect("temp dir");
    let out = dir.path().join("report.json");
    let start = Instant::now();
    let status = Command::new(env!("CARGO_BIN_EXE_nielsen-kit"))
        .arg("verify-all")
        .arg("--json")
        .arg(&out)
        .output()
        .expect("spawn nielsen-kit");
    let elapsed = start.elapsed();
    let report: Option<Value> = std::fs::read_to_string(&out)
        .ok()
        .and_then(|s| serde_json::from_str(&s).ok());
    let all_checks = report
        .as_ref()
        .and_then(|r| r["checks"].as_array().cloned())
        .is_some_and(|c| c.len() == 10 && c.iter().all(|x| x["passed"] == true));
    let passed = status.status.code() == Some(0) && elapsed <= verify::TOTAL_BUDGET && all_checks;
    let line = format!(
        "[{}] 10 verify-all exits 0 within {} s ({:.2} s, exit {:?})",
        if passed { "PASS" } else { "FAIL" },
        verify::TOTAL_BUDGET.as_secs(),
        elapsed.as_secs_f64(),
        status.status.code()
    );
    (passed, line)
}

fn main() -> ExitCode {
    let cfg = VerifyConfig::default();
    let runs: [fn(&VerifyConfig) -> CriterionResult; 9] = [
        verify::criterion_1,
        verify::criterion_2,
        verify::criterion_3,
        verify::criterion_4,
        verify::criterion_5,
        verify::criterion_6,
        verify::criterion_7,
        verify::criterion_8,
        verify::criterion_9,
    ];
    let mut failed = 0;
    for run in runs {
        let c = run(&cfg);
        println!("{}", c.line());
        if !c.passed {
            failed += 1;
            println!("    details: {}", c.details);
        }
    }
    let (ok, line) = criterion_10();
    println!("{line}");
    if !ok {
        failed += 1;
    }
    println!("acceptance: {} of 10 criteria passed", 10 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
