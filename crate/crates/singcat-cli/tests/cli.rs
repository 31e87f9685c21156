//! Contract tests for the command line surface: exit codes, output
//! determinism, and the documented shapes of each export.

use std::path::PathBuf;
use std::process::Command;

use serde_json::Value;

fn run(args: &[&str]) -> (Option<i32>, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_singcat"))
        .args(args)
        .output()
        .expect("driver runs");
    (
        out.status.code(),
        String::from_utf8(out.stdout).expect("utf-8 stdout"),
        String::from_utf8(out.stderr).expect("utf-8 stderr"),
    )
}

fn tmp(tag: &str) -> PathBuf {
    std::env::temp_dir().join(format!("singcat-cli-test-{}-{tag}", std::process::id()))
}

#[test]
fn invalid_configurations_exit_two() {
    let cases: &[&[&str]] = &[
        &["verify", "--params", "1,1,3,3"],
        &["verify", "--params", "1,1,3"],
        &["verify", "--params", "1,1,3,2", "--hecke", "5"],
        &["verify"],
        &["verify", "--params", "1,1,3,2", "--field", "fp:6"],
        &["verify", "--params", "1,1,3,2", "--window", "0"],
        &["ext", "--params", "1,1,3,2", "--i", "9"],
        &["quiver", "--params", "1,1,3,2", "--format", "csv"],
        &["transfer", "--params", "3,2,5,7"],
        &["params", "--hecke", "2"],
        &["group-theory"],
    ];
    for args in cases {
        let (code, _, stderr) = run(args);
        assert_eq!(code, Some(2), "args {args:?} gave stderr {stderr}");
    }
}

#[test]
fn verify_report_lists_every_named_check() {
    let (code, stdout, _) = run(&["verify", "--params", "1,1,3,2", "--format", "json"]);
    assert_eq!(code, Some(0));
    let report: Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(report["schema_version"], 1);
    assert_eq!(report["params"]["h"], 3);
    let names: Vec<&str> = report["checks"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["name"].as_str().unwrap())
        .collect();
    assert_eq!(
        names,
        [
            "d-squared",
            "homotopy",
            "hopf",
            "transfer",
            "stasheff",
            "ext-presentation",
            "end-dims",
            "duality",
            "harada-sai",
            "counts",
            "oracle",
        ]
    );
    for check in report["checks"].as_array().unwrap() {
        assert_eq!(check["pass"], true, "{check}");
        assert!(check["ms"].is_u64() && check["details"].is_string());
    }
    assert_eq!(report["summary"]["ok"], true);
    assert_eq!(report["summary"]["failed"], 0);
}

#[test]
fn skipped_checks_stay_listed_with_a_reason() {
    let (code, stdout, _) = run(&["verify", "--params", "4,3,4,5", "--format", "json"]);
    assert_eq!(code, Some(0));
    let report: Value = serde_json::from_str(&stdout).unwrap();
    let transfer = report["checks"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["name"] == "transfer")
        .expect("transfer stays listed");
    assert!(transfer["details"].as_str().unwrap().starts_with("skipped:"));
    assert_eq!(report["summary"]["skipped"], 1);
}

#[test]
fn repeated_exports_are_byte_identical() {
    let a = tmp("quiver-a.json");
    let b = tmp("quiver-b.json");
    for path in [&a, &b] {
        let (code, _, _) = run(&[
            "quiver",
            "--params",
            "6,5,6,7",
            "--format",
            "json",
            "--out",
            path.to_str().unwrap(),
        ]);
        assert_eq!(code, Some(0));
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    let _ = std::fs::remove_file(a);
    let _ = std::fs::remove_file(b);

    let (_, first, _) = run(&["ext", "--params", "3,2,5,7", "--i", "2", "--j", "3", "--format", "csv"]);
    let (_, second, _) = run(&["ext", "--params", "3,2,5,7", "--i", "2", "--j", "3", "--format", "csv"]);
    assert!(!first.is_empty() && first == second);
}

#[test]
fn quiver_exports_match_the_documented_shapes() {
    let (code, stdout, _) = run(&["quiver", "--params", "6,5,6,7", "--format", "json"]);
    assert_eq!(code, Some(0));
    let quiver: Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(quiver["vertices"].as_array().unwrap().len(), 25);
    assert_eq!(quiver["sigma_orbits"].as_array().unwrap().len(), 3);
    assert_eq!(quiver["hom_dims"].as_array().unwrap().len(), 25);

    let (code, stdout, _) = run(&["quiver", "--bar", "--params", "2,1,2,3", "--format", "json"]);
    assert_eq!(code, Some(0));
    let bar: Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(bar["vertices"].as_array().unwrap().len(), 3);

    let (code, stdout, _) = run(&["quiver", "--params", "2,1,2,3", "--format", "dot"]);
    assert_eq!(code, Some(0));
    assert!(stdout.starts_with("digraph"));
    assert_eq!(stdout.matches("\"X1@S0\"").count(), 1);
    assert!(!stdout.contains("->"), "a single vertex carries no arrows");
}

#[test]
fn ext_table_contains_the_unit_entry() {
    let (code, stdout, _) = run(&[
        "ext", "--params", "1,1,3,2", "--i", "1", "--j", "1", "--format", "csv",
    ]);
    assert_eq!(code, Some(0));
    assert!(stdout.lines().next() == Some("step,n,w,dim"));
    assert!(stdout.lines().any(|l| l == "0,0,0,1"));
}

#[test]
fn transfer_export_shows_one_higher_family() {
    let (code, stdout, _) = run(&["transfer", "--params", "1,1,4,3", "--format", "json"]);
    assert_eq!(code, Some(0));
    let dump: Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(dump["global_sign"], 1);
    let higher: Vec<&Value> = dump["ops"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|o| o["arity"].as_u64().unwrap() > 2)
        .collect();
    assert!(!higher.is_empty());
    assert!(higher.iter().all(|o| o["arity"] == 4));
    let bare = higher
        .iter()
        .find(|o| o["args"].as_array().unwrap().iter().all(|a| a == "o"))
        .expect("bare entry present");
    assert_eq!(bare["value"]["e^3"], "1");
}

#[test]
fn homology_export_lists_the_small_classes() {
    let (code, stdout, _) = run(&["homology", "--params", "1,1,3,2", "--format", "csv"]);
    assert_eq!(code, Some(0));
    assert!(stdout.lines().any(|l| l == "0,0,1"));
    assert!(stdout.lines().any(|l| l == "1,2,1"));
    assert!(stdout.lines().any(|l| l == "2,3,1"));
}

#[test]
fn params_export_summarizes_both_sides() {
    let (code, stdout, _) = run(&["params", "--hecke", "5", "--format", "json"]);
    assert_eq!(code, Some(0));
    let summary: Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(summary["params"]["a"], 4);
    assert_eq!(summary["sing_count"], 9);
    assert_eq!(summary["cosing_count"], 16);
    assert_eq!(summary["ar_shape"], serde_json::json!([3, 3]));

    let (code, stdout, _) = run(&["params", "--group", "3,1,2"]);
    assert_eq!(code, Some(0));
    assert!(stdout.contains("1 objects") && stdout.contains("4 objects"));
}
