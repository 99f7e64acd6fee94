//! End-to-end tests of the installed binary: output determinism, the JSON
//! report contract, exit codes, and the audit's fault-injection self-test.

use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_twistor4"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is one JSON document")
}

fn checks_of(report: &Value) -> &Vec<Value> {
    report["checks"].as_array().expect("sixteen check records")
}

#[test]
fn a14_audit_byte_determinism() {
    let args = [
        "audit",
        "g_lambda",
        "--k",
        "2",
        "--tau",
        "-4,0,0,0",
        "--seed",
        "7",
        "--samples",
        "26",
        "--format",
        "json",
    ];
    let first = run(&args);
    let second = run(&args);
    let pass = first.status.code() == Some(0)
        && second.status.code() == Some(0)
        && !first.stdout.is_empty()
        && first.stdout == second.stdout;
    println!(
        "ACCEPTANCE a14 audit byte determinism: {}",
        if pass { "PASS" } else { "FAIL" }
    );
    assert!(
        pass,
        "two runs with the same seed must agree byte for byte \
         (codes {:?}/{:?}, {} vs {} bytes)",
        first.status.code(),
        second.status.code(),
        first.stdout.len(),
        second.stdout.len()
    );
    let report = stdout_json(&first);
    assert_eq!(report["all_agree"], Value::Bool(true));
}

#[test]
fn analyze_reports_the_einstein_member() {
    let out = run(&[
        "analyze", "g_lambda", "--lambda", "1", "--k", "2", "--format", "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["curvature"]["einstein"], Value::Bool(true));
    assert_eq!(v["curvature"]["wplus_norm2"], Value::String("0".into()));
    assert_eq!(v["curvature"]["anti_self_dual"], Value::Bool(true));
    assert_eq!(v["curvature"]["self_dual"], Value::Bool(false));
    assert_eq!(v["audit"]["all_agree"], Value::Bool(true));
}

#[test]
fn analyze_flat_splits_verdicts_by_m() {
    let out = run(&["analyze", "flat", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    let checks = checks_of(&v);
    assert_eq!(checks.len(), 16);
    for rec in checks {
        let m = rec["m"].as_u64().unwrap();
        let verdict = rec["verdict"].as_bool().unwrap();
        assert_eq!(
            verdict,
            m <= 2,
            "m={m} components={} on the flat geometry",
            rec["components"]
        );
    }
}

#[test]
fn scan_k_isolates_the_self_dual_members() {
    let out = run(&[
        "scan", "--param", "k", "--values", "1/2,1,3/2,2,3", "--format", "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 5);
    for row in rows {
        let k = row["value"].as_str().unwrap();
        let wplus = row["wplus_norm2"].as_str().unwrap();
        assert_eq!(
            wplus == "0",
            k == "1" || k == "2",
            "wplus_norm2 = {wplus} at k = {k}"
        );
    }
}

#[test]
fn scan_mu1_brackets_the_conformal_root() {
    let out = run(&[
        "scan", "--param", "mu1", "--values", "3/2,2", "--lambda", "0", "--k", "1",
        "--format", "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    let rows = v["rows"].as_array().unwrap();
    // Sign change across [3/2, 2] on the opposite branch: the irrational
    // root sqrt(31) - 4 lies between the two sampled values.
    assert_eq!(rows[0]["conf_scalar_opp"], Value::String("9/8".into()));
    assert_eq!(rows[1]["conf_scalar_opp"], Value::String("-15/2".into()));
}

#[test]
fn unknown_target_is_an_input_error() {
    let out = run(&["analyze", "no_such_geometry"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.starts_with("error:"), "stderr was: {err}");
}

#[test]
fn malformed_document_is_an_input_error() {
    let path = std::env::temp_dir().join(format!(
        "twistor4_bad_doc_{}.json",
        std::process::id()
    ));
    std::fs::write(&path, "{\"kind\": \"lie_group\", \"gram\": [[").unwrap();
    let out = run(&["analyze", path.to_str().unwrap()]);
    std::fs::remove_file(&path).ok();
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("document"), "stderr was: {err}");
}

#[test]
fn fault_injection_trips_the_audit() {
    let out = run(&["audit", "flat", "--inject-fault", "--format", "json"]);
    assert_eq!(out.status.code(), Some(1));
    let v = stdout_json(&out);
    assert_eq!(v["all_agree"], Value::Bool(false));
    let rows = v["targets"][0]["audit"]["rows"].as_array().unwrap();
    let tripped: Vec<&Value> = rows
        .iter()
        .filter(|r| r["agree"] == Value::Bool(false))
        .collect();
    assert!(!tripped.is_empty(), "a corrupted operator must be noticed");
    assert!(
        tripped.iter().any(|r| !r["witness"].is_null()),
        "disagreement rows must carry a witness"
    );
}
