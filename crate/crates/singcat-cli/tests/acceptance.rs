//! Acceptance check for the command line driver: the full verification
//! sweep must pass inside its time budget, and the built-in negative
//! control must flip the exit code.

use std::process::Command;
use std::time::Instant;

const SWEEP: [&str; 6] = [
    "1,1,3,2",
    "2,1,2,3",
    "1,1,4,3",
    "3,2,5,7",
    "4,3,4,5",
    "6,5,6,7",
];

fn report(name: &str, failures: &[String]) {
    println!(
        "criterion {name}: {}",
        if failures.is_empty() { "PASS" } else { "FAIL" }
    );
    assert!(failures.is_empty(), "criterion {name}: {failures:#?}");
}

#[test]
fn criterion_11_cli_verify_and_negative_control() {
    let mut failures = Vec::new();
    let start = Instant::now();
    for params in SWEEP {
        let out = Command::new(env!("CARGO_BIN_EXE_singcat"))
            .args(["verify", "--params", params])
            .output()
            .expect("driver runs");
        if out.status.code() != Some(0) {
            failures.push(format!(
                "verify {params}: exit {:?}\n{}",
                out.status.code(),
                String::from_utf8_lossy(&out.stdout)
            ));
        }
    }
    let secs = start.elapsed().as_secs();
    if secs >= 600 {
        failures.push(format!("sweep took {secs}s, budget 600s"));
    }
    // Flipping one structure constant must turn the run red.  The flip is
    // applied to the bare higher-operation entry, so the breakage is
    // shape-independent; the small parameters keep the re-runs cheap.
    for params in ["1,1,3,2", "2,1,2,3", "1,1,4,3"] {
        let out = Command::new(env!("CARGO_BIN_EXE_singcat"))
            .args(["verify", "--params", params, "--negative-control"])
            .output()
            .expect("driver runs");
        if out.status.code() != Some(1) {
            failures.push(format!(
                "negative control {params}: exit {:?}, expected 1",
                out.status.code()
            ));
        }
    }
    report("11 cli-verify", &failures);
}
