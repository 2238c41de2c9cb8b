use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sl3blocks"))
        .env_remove("SL3BLOCKS_FORMAT")
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut full = vec!["--format", "json"];
    full.extend_from_slice(args);
    let out = run(&full);
    let v = serde_json::from_slice(&out.stdout).expect("valid JSON report");
    (out.status.code().unwrap(), v)
}

#[test]
fn webs_matrix_for_four_points() {
    let (code, v) = json(&["webs", "--sigma", "1,1,2,2"]);
    assert_eq!(code, 0);
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["command"], "webs");
    assert_eq!(v["result"]["M"], serde_json::json!([[1, 0], [1, 1]]));
    assert_eq!(v["result"]["M_inv"], serde_json::json!([["1", "0"], ["-1", "1"]]));
}

#[test]
fn tableau_counts() {
    let (code, v) = json(&["tableaux", "--sigma", "1,1,1,1,1,1"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["count"], 5);
    assert_eq!(v["config"]["sigma"], serde_json::json!([1, 1, 1, 1, 1, 1]));
}

#[test]
fn indivisible_signature_is_a_usage_error() {
    let out = run(&["tableaux", "--sigma", "2,2"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("divisible"));
}

#[test]
fn unknown_flags_are_usage_errors() {
    assert_eq!(run(&["verify", "--which", "nonsense"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "--which", "bpz"]).status.code(), Some(2));
}

#[test]
fn limit_probabilities_at_integer_points() {
    let (code, v) = json(&[
        "prob",
        "--sigma",
        "1,1,2,2",
        "--tableau",
        "2",
        "--points",
        "0,1,2,3",
    ]);
    assert_eq!(code, 0);
    let p = &v["result"]["probabilities"];
    assert_eq!(p[0]["p"], "1/4");
    assert_eq!(p[1]["p"], "3/4");
    assert_eq!(v["result"]["sum"], "1");
    let out = run(&[
        "prob",
        "--sigma",
        "1,1,2,2",
        "--tableau",
        "2",
        "--points",
        "0,1,1,3",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn bpz_suite_passes() {
    let (code, v) = json(&["verify", "--sigma", "1,1,2,2", "--which", "bpz"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["checks"].as_array().unwrap().len(), 8);
    assert_eq!(v["result"]["failures"], 0);
}

#[test]
fn nonrectangular_ward_failures_are_expected() {
    let (code, v) = json(&["verify", "--which", "ward", "--nonrectangular"]);
    assert_eq!(code, 0);
    let checks = v["result"]["checks"].as_array().unwrap();
    let expected: Vec<&Value> = checks
        .iter()
        .filter(|c| c["detail"].as_str().unwrap().starts_with("expected nonzero"))
        .collect();
    assert_eq!(expected.len(), 3);
}

#[test]
fn covariance_is_seeded_and_deterministic() {
    let a = run(&[
        "verify",
        "--sigma",
        "1,1,2,2",
        "--which",
        "covariance",
        "--seed",
        "7",
    ]);
    let b = run(&[
        "verify",
        "--sigma",
        "1,1,2,2",
        "--which",
        "covariance",
        "--seed",
        "7",
    ]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn dimer_csv_for_three_points() {
    let out = run(&["dimer", "--sigma", "1,1,1", "--sizes", "8,12"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("size,lambda,finite_pr,limit_p,rel_err"));
    let errs: Vec<f64> = lines
        .map(|l| l.rsplit(',').next().unwrap().parse().unwrap())
        .collect();
    assert_eq!(errs.len(), 2);
    assert!(errs[1] <= errs[0]);
}

#[test]
fn format_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_sl3blocks"))
        .env("SL3BLOCKS_FORMAT", "json")
        .args(["tableaux", "--sigma", "1,1,2,2"])
        .output()
        .unwrap();
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["result"]["count"], 2);
}

#[test]
fn four_column_run_is_informational() {
    let (code, v) = json(&["verify", "--which", "specht-pde", "--max-n", "4"]);
    assert_eq!(code, 0);
    let info = v["result"]["extra"]["four_column_informational"]
        .as_array()
        .unwrap();
    assert_eq!(info.len(), 2);
    assert_eq!(info[1]["shape"], serde_json::json!([4, 4]));
    assert_eq!(v["result"]["checks"].as_array().unwrap().len(), 2);
}
