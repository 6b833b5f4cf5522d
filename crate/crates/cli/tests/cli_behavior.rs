//! End-to-end behavior of the binary: exit codes, byte-stable JSON, and the
//! self-test probes through the real CLI boundary.

use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_torsor-verify"))
        .args(args)
        .output()
        .expect("binary runs")
}

#[test]
fn exit_zero_on_pass() {
    let out = run(&["counterexample", "--curve", "2 0 0 1 0 0", "--poly", "0,1"]);
    assert_eq!(out.status.code(), Some(0), "{out:?}");
}

#[test]
fn exit_one_on_fail() {
    let out = run(&["counterexample", "--curve", "2 1 0 0 0 1", "--poly", "0,1"]);
    assert_eq!(out.status.code(), Some(1));
    // The report is still emitted, with the refusal evidence.
    let body = String::from_utf8(out.stdout).unwrap();
    assert!(body.contains("counterexample-feasibility"));
}

#[test]
fn exit_two_on_usage_errors() {
    // Unknown flag.
    let out = run(&["cohomology", "--curve", "2 0 0 1 0 0", "--bogus"]);
    assert_eq!(out.status.code(), Some(2));
    // Missing required selection.
    let out = run(&["cohomology"]);
    assert_eq!(out.status.code(), Some(2));
    // Unparseable curve.
    let out = run(&["cohomology", "--curve", "not a curve"]);
    assert_eq!(out.status.code(), Some(2));
    // Odd characteristic in the counterexample pipeline.
    let out = run(&["counterexample", "--curve", "3 0 0 0 2 0", "--poly", "0,1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn json_reports_are_byte_identical_across_runs() {
    let args = ["counterexample", "--curve", "2 0 0 1 0 0", "--poly", "0,1"];
    let first = run(&args);
    let second = run(&args);
    assert_eq!(first.stdout, second.stdout);
    assert!(!first.stdout.is_empty());
}

#[test]
fn json_schema_has_anchors_on_every_check() {
    let out = run(&["cohomology", "--curve", "2 0 0 1 0 0"]);
    let body: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(body.get("version").is_some());
    assert!(body.get("fixture").is_some());
    assert!(body.get("status").is_some());
    let checks = body["checks"].as_array().unwrap();
    assert!(!checks.is_empty());
    for check in checks {
        assert!(!check["id"].as_str().unwrap().is_empty());
        assert!(!check["anchor"].as_str().unwrap().is_empty());
        assert!(check.get("inputs").is_some());
        assert!(check.get("outputs").is_some());
        assert!(check.get("verdict").is_some());
        assert!(check.get("expected").is_some());
    }
}

#[test]
fn fixture_files_drive_the_pipelines() {
    let dir = std::env::temp_dir().join("torsor-verify-fixtures");
    std::fs::create_dir_all(&dir).unwrap();
    let family = dir.join("family.json");
    std::fs::write(&family, r#"{ "curve": "2 0 0 1 0 0", "poly": [0, 1] }"#).unwrap();
    let out = run(&["counterexample", "--fixture", family.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));

    let curves = dir.join("curves.txt");
    std::fs::write(&curves, "# fixtures\n2 0 0 1 0 0\n2 1 0 0 0 1\n").unwrap();
    let out = run(&["cohomology", "--fixture", curves.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let body: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(body["checks"]
        .as_array()
        .unwrap()
        .iter()
        .any(|c| c["id"].as_str().unwrap().starts_with("curve1:")));

    let cover = dir.join("cover.json");
    std::fs::write(&cover, r#"{ "components": 2 }"#).unwrap();
    let out = run(&["saturation", "--fixture", cover.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn selftest_passes_and_probes_fail_through_the_cli() {
    let out = run(&["selftest", "--format", "text"]);
    assert_eq!(out.status.code(), Some(0), "{out:?}");
    let out = run(&["selftest", "--probe", "untwisted-lambda"]);
    assert_eq!(out.status.code(), Some(1));
    let out = run(&["selftest", "--probe", "negated-hasse"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn text_format_matches_json_status() {
    let out = run(&["saturation", "--components", "1", "--format", "text"]);
    assert_eq!(out.status.code(), Some(0));
    let body = String::from_utf8(out.stdout).unwrap();
    assert!(body.contains("status: pass"));
}
