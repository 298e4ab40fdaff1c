//! End-to-end tests driving the `pcubed` binary.

use std::process::{Command, Output};

fn pcubed(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pcubed"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 output")
}

#[test]
fn count_spot_value() {
    let out = pcubed(&["count", "--p", "3", "--family", "heis", "--n", "3"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("167"));
}

#[test]
fn count_range_csv_is_exact() {
    let out = pcubed(&[
        "count", "--p", "3", "--family", "heis", "--n", "1..4", "--format", "csv",
    ]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "n,count\n1,9\n2,45\n3,167\n4,513\n");
}

#[test]
fn census_csv_columns() {
    let out = pcubed(&[
        "census", "--p", "3", "--family", "heis", "--n", "2", "--format", "csv",
    ]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "n,total,nondegenerate,degenerate_only\n2,45,5,40\n");
}

#[test]
fn census_zp3_row() {
    let out = pcubed(&[
        "census", "--p", "3", "--family", "zp3", "--n", "1", "--format", "csv",
    ]);
    assert_eq!(stdout(&out), "n,total,nondegenerate,degenerate_only\n1,27,1,26\n");
}

#[test]
fn groups_reports_structure() {
    let out = pcubed(&["groups", "--p", "3", "--family", "heis"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("order 27"));
    assert!(text.contains("center size: 3"));
    assert!(text.contains("conjugacy classes: 11"));
}

#[test]
fn dim_trivial_vector() {
    let out = pcubed(&[
        "dim", "--p", "3", "--family", "heis", "--k", "1,0,0,0,0,0,0,0,0,0,0",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("invariant dimension: 1"));
    assert!(text.contains("symmetric dimension: 1"));
    assert!(text.contains("skew dimension: 0"));
}

#[test]
fn dim_oracle_agrees() {
    let out = pcubed(&[
        "dim", "--p", "3", "--family", "heis", "--k", "1,0,0,0,0,0,0,0,0,1,1",
        "--oracle",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("invariant dimension: 3"));
    assert!(text.contains("oracle dimension: 3 (match)"));
}

#[test]
fn dim_basis_export() {
    let out = pcubed(&[
        "dim", "--p", "3", "--family", "heis", "--k", "0,0,0,0,0,0,0,0,0,1,1",
        "--basis", "--format", "json",
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("valid json");
    assert_eq!(v["oracle"]["dimension"], 2);
    assert_eq!(v["basis"].as_array().unwrap().len(), 2);
    // Entries are full coefficient arrays by default.
    assert_eq!(v["basis"][0][0][5].as_array().unwrap().len(), 18);
    // Compact mode collapses entries to root-of-unity strings.
    let out = pcubed(&[
        "dim", "--p", "3", "--family", "heis", "--k", "0,0,0,0,0,0,0,0,0,1,1",
        "--basis", "--compact", "--format", "json",
    ]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("valid json");
    assert_eq!(v["basis"][0][0][5], "1");
    assert_eq!(v["basis"][0][0][0], "0");
}

#[test]
fn witness_none_for_unmatched_pair() {
    let out = pcubed(&[
        "witness", "--p", "3", "--family", "heis", "--k", "0,1,0,0,0,0,0,0,0,0,0",
    ]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "none\n");
}

#[test]
fn witness_hyperbolic_pair() {
    let out = pcubed(&[
        "witness", "--p", "3", "--family", "heis", "--k", "0,1,1,0,0,0,0,0,0,0,0",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("[ 0  1 ]"));
    assert!(text.contains("[ 1  0 ]"));
}

#[test]
fn witness_json_compact() {
    let out = pcubed(&[
        "witness", "--p", "3", "--family", "zp3", "--k",
        "0,1,1,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0",
        "--format", "json", "--compact",
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("valid json");
    assert_eq!(v["schema"], 1);
    assert_eq!(v["witness"][0][1], "1");
    assert_eq!(v["witness"][0][0], "0");
}

#[test]
fn irreps_csv_table() {
    let out = pcubed(&[
        "irreps", "--p", "3", "--family", "gp", "--format", "csv",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    let mut lines = text.lines();
    assert!(lines.next().unwrap().starts_with("irrep,degree,dual,"));
    assert_eq!(text.lines().count(), 12);
    assert!(text.contains("rho_10,3,rho_11"));
}

#[test]
fn irreps_json_schema() {
    let out = pcubed(&[
        "irreps", "--p", "3", "--family", "zp3", "--format", "json",
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("valid json");
    assert_eq!(v["schema"], 1);
    assert_eq!(v["irreps"].as_array().unwrap().len(), 27);
    assert_eq!(v["irreps"][0]["degree"], 1);
    assert_eq!(v["irreps"][0]["dual"], 1);
    // Generator images are coefficient arrays of exact rationals.
    let coeffs = v["irreps"][1]["gen_images"][0][0][0].as_array().unwrap();
    assert_eq!(coeffs.len(), 18);
}

#[test]
fn charp_dimension() {
    let out = pcubed(&["charp", "--n", "5"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("dimension: 25"));
    let out = pcubed(&["charp", "--n", "3", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("valid json");
    assert_eq!(v["dimension"], 9);
}

#[test]
fn verify_small_sweep_exits_clean() {
    let out = pcubed(&["verify", "--p", "3", "--nmax", "1"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("verdict: all formulas match the oracle"));
}

#[test]
fn verify_respects_thread_env() {
    let out = Command::new(env!("CARGO_BIN_EXE_pcubed"))
        .args(["verify", "--p", "3", "--nmax", "1", "--family", "heis"])
        .env("PCUBED_THREADS", "1")
        .output()
        .expect("binary runs");
    assert!(out.status.success());
}

#[test]
fn deterministic_output() {
    let args = [
        "irreps", "--p", "3", "--family", "heis", "--format", "json",
    ];
    let a = pcubed(&args);
    let b = pcubed(&args);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn invalid_inputs_exit_one() {
    for args in [
        vec!["count", "--p", "4", "--family", "heis", "--n", "1"],
        vec!["count", "--p", "3", "--family", "d4", "--n", "1"],
        vec!["count", "--p", "3", "--family", "heis", "--n", "5..2"],
        vec!["dim", "--p", "3", "--family", "heis", "--k", "1,2"],
        vec!["count", "--p", "3", "--family", "heis"],
    ] {
        let out = pcubed(&args);
        assert_eq!(out.status.code(), Some(1), "args: {args:?}");
    }
}

#[test]
fn help_exits_zero() {
    let out = pcubed(&["--help"]);
    assert_eq!(out.status.code(), Some(0));
    let out = pcubed(&["count", "--help"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn output_file_flag() {
    let dir = std::env::temp_dir().join("pcubed-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("census.csv");
    let out = pcubed(&[
        "census", "--p", "3", "--family", "gp", "--n", "0..2", "--format", "csv",
        "--output", path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(stdout(&out).is_empty());
    let written = std::fs::read_to_string(&path).unwrap();
    assert!(written.starts_with("n,total,nondegenerate,degenerate_only\n"));
    assert_eq!(written.lines().count(), 4);
}
