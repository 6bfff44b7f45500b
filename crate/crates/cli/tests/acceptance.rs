//! Acceptance criteria 1-9. Prints one PASS/FAIL line per criterion and
//! exits nonzero if any criterion fails.

use std::path::Path;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use descent_core::verify::{run_suite, Suite, VerifyOptions};

/// Wall-clock bounds; counts are integer-exact, so no numeric tolerance applies.
const DESCENT_SUITE_BOUND: Duration = Duration::from_secs(60);
const POINT_COUNT_BOUND: Duration = Duration::from_secs(30);
const COHOMOLOGY_BOUND: Duration = Duration::from_secs(30);

fn bound(suite: Suite) -> Option<Duration> {
    match suite {
        Suite::MinimalDescent => Some(DESCENT_SUITE_BOUND),
        Suite::TwistedPointCounts => Some(POINT_COUNT_BOUND),
        Suite::Cohomology => Some(COHOMOLOGY_BOUND),
        _ => None,
    }
}

fn descent(args: &[&str]) -> (i32, Vec<u8>) {
    let out = Command::new(env!("CARGO_BIN_EXE_descent"))
        .args(args)
        .output()
        .expect("descent binary runs");
    (out.status.code().unwrap_or(-1), out.stdout)
}

fn determinism() -> Result<String, String> {
    let (code_a, verify_a) = descent(&["verify"]);
    let (code_b, verify_b) = descent(&["verify"]);
    if code_a != 0 || code_b != 0 || verify_a != verify_b {
        return Err(format!(
            "verify exit codes {code_a}/{code_b}, identical output: {}",
            verify_a == verify_b
        ));
    }
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../scenarios");
    let mut files: Vec<_> = std::fs::read_dir(&dir)
        .map_err(|e| format!("{}: {e}", dir.display()))?
        .map(|e| e.expect("directory entry").path())
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    files.sort();
    for file in &files {
        let file = file.to_str().expect("utf-8 path");
        let first = descent(&["run", file]);
        let again = descent(&["run", file]);
        let parallel = descent(&["run", "--parallel", file]);
        if first != again || first != parallel {
            return Err(format!("{file}: reports differ between runs"));
        }
    }
    Ok(format!(
        "verify and {} scenarios byte-identical across runs",
        files.len()
    ))
}

fn main() -> ExitCode {
    let options = VerifyOptions::default();
    let mut failed = 0;
    for suite in Suite::ALL {
        let start = Instant::now();
        let outcome = run_suite(suite, &options);
        let elapsed = start.elapsed();
        let (ok, detail) = match outcome {
            Ok(o) => {
                let slow = bound(suite).is_some_and(|b| elapsed > b);
                let detail = format!(
                    "{} cases, {} failures, {:.2}s{}",
                    o.cases,
                    o.failures.len(),
                    elapsed.as_secs_f64(),
                    if slow { " (over time bound)" } else { "" }
                );
                for f in o.failures.iter().take(5) {
                    eprintln!("  criterion {}: {f}", suite.criterion());
                }
                (o.passed() && o.cases > 0 && !slow, detail)
            }
            Err(e) => (false, e.to_string()),
        };
        println!(
            "criterion {} [{}]: {} ({detail})",
            suite.criterion(),
            suite.name(),
            if ok { "PASS" } else { "FAIL" }
        );
        failed += usize::from(!ok);
    }
    let (ok, detail) = match determinism() {
        Ok(d) => (true, d),
        Err(d) => (false, d),
    };
    println!(
        "criterion 9 [determinism]: {} ({detail})",
        if ok { "PASS" } else { "FAIL" }
    );
    failed += usize::from(!ok);
    if failed == 0 {
        println!("acceptance: all 9 criteria PASS");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {failed} criteria FAIL");
        ExitCode::FAILURE
    }
}
