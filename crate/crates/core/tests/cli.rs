//! End-to-end runs of the `bjortho` binary against golden files.

use std::path::PathBuf;
use std::process::{Command, Output};

fn dir(sub: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests").join(sub)
}

fn data(name: &str) -> String {
    dir("data").join(name).display().to_string()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bjortho")).args(args).env_remove("BJORTHO_TOL").output().expect("binary runs")
}

fn stdout_json(args: &[&str]) -> serde_json::Value {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

fn golden(name: &str, args: &[&str]) {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    let expected = std::fs::read_to_string(dir("golden").join(name)).unwrap();
    assert_eq!(String::from_utf8(out.stdout).unwrap(), expected, "golden file {name}");
}

#[test]
fn golden_outputs() {
    let (t, a) = (data("t_diag.json"), data("a_diag.json"));
    golden("bj_diag.json", &["bj", "--left", &t, "--right", &a]);
    golden("bj_diag_oracle.json", &["bj", "--left", &t, "--right", &a, "--oracle"]);
    golden("mt_rect.json", &["mt", "--matrix", &data("rect.csv")]);
    golden("example_2_5_n5.json", &["example", "--name", "2.5", "--n", "5"]);
    golden("smooth_rotation.json", &["smooth", "--matrix", &data("rotation.csv")]);
    golden("bj_vector_inf.json", &["bj-vector", "--x", "1,1", "--y", "1,-1", "--p", "inf"]);
    golden("norm_rect_inf.csv", &["norm", "--matrix", &data("rect.csv"), "--p", "inf", "--format", "csv"]);
    golden(
        "verify_adjoint_seed7.json",
        &["verify", "--suite", "adjoint", "--seed", "7", "--trials", "20", "--no-timing"],
    );
}

#[test]
fn example_matches_closed_form() {
    let v = stdout_json(&["example", "--name", "2.5", "--n", "5"]);
    assert!((v["gap"].as_f64().unwrap() - 0.1).abs() < 1e-9);
    assert!((v["lambda_star"].as_f64().unwrap() - 0.1).abs() < 1e-6);
    assert_eq!(v["orthogonal"], false);
}

#[test]
fn malformed_input_exits_2_with_location() {
    let out = run(&["norm", "--matrix", &data("bad_entry.csv")]);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("row 2, column 2"), "{err}");

    let out = run(&["mt", "--matrix", &data("bad_rows.json")]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("declared 2 rows, found 1"));

    let out = run(&["norm", "--matrix", &data("missing.json")]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn argument_errors_exit_2() {
    assert_eq!(run(&["verify", "--suite", "nope"]).status.code(), Some(2));
    assert_eq!(run(&["example", "--n", "1"]).status.code(), Some(2));
    assert_eq!(run(&["norm", "--matrix", &data("rect.csv"), "--p", "3"]).status.code(), Some(2));
    assert_eq!(run(&["norm", "--matrix", &data("rect.csv"), "--tol", "0"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    // a smooth operator has no witness pair
    assert_eq!(run(&["witness", "--matrix", &data("t_diag.json")]).status.code(), Some(2));
}

#[test]
fn verdict_false_still_exits_0() {
    let v = stdout_json(&["bj", "--left", &data("t_diag.json"), "--right", &data("identity.csv")]);
    assert_eq!(v["orthogonal"], false);
    assert!(v["lambda_min"].as_f64().unwrap() != 0.0);
}

#[test]
fn tolerance_from_environment_and_flag() {
    let m = data("t_diag.json");
    let out = Command::new(env!("CARGO_BIN_EXE_bjortho"))
        .args(["mt", "--matrix", &m])
        .env("BJORTHO_TOL", "0.6")
        .output()
        .unwrap();
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    // with a loose tolerance 1/2 counts as attaining the norm 1
    assert_eq!(v["multiplicity"], 2);
    assert_eq!(v["tol_used"], 0.6);
    let out = Command::new(env!("CARGO_BIN_EXE_bjortho"))
        .args(["mt", "--matrix", &m, "--tol", "1e-9"])
        .env("BJORTHO_TOL", "0.6")
        .output()
        .unwrap();
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["multiplicity"], 1);
}

#[test]
fn witness_pair_sums_to_input() {
    let v = stdout_json(&["witness", "--matrix", &data("rotation.csv")]);
    let get = |k: &str| {
        v[k]["data"]
            .as_array()
            .unwrap()
            .iter()
            .flat_map(|r| r.as_array().unwrap().clone())
            .map(|x| x.as_f64().unwrap())
            .collect::<Vec<_>>()
    };
    let (a1, a2) = (get("a1"), get("a2"));
    let sum: Vec<f64> = a1.iter().zip(&a2).map(|(x, y)| x + y).collect();
    assert_eq!(sum, vec![0.0, 2.0, -2.0, 0.0]);
}

#[test]
fn seeded_commands_are_reproducible() {
    let args = ["witness", "--x", "1,0,0", "--p", "1", "--seed", "9"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
    let v = stdout_json(&args);
    assert_eq!(v["found"], true);
    let args = ["smooth", "--matrix", &data("rect.csv"), "--target-p", "inf", "--seed", "3"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
    let d = ["descent", "--left", &data("t_diag.json"), "--right", &data("identity.csv"), "--seed", "5"];
    let v = stdout_json(&d);
    assert!(v["operator_norm_after"].as_f64().unwrap() < v["sigma1"].as_f64().unwrap());
    assert_eq!(run(&d).stdout, run(&d).stdout);
}

#[test]
fn remaining_subcommands() {
    let v = stdout_json(&["hyperplane-sup", "--matrix", &data("t_diag.json"), "--x0", "1,0"]);
    assert_eq!(v["hyperplane_sup"], 0.5);
    let v = stdout_json(&["smooth", "--x", "1,0", "--p", "1"]);
    assert_eq!(v["smooth"], false);
    assert_eq!(v["functionals"].as_array().unwrap().len(), 2);
    let v = stdout_json(&["descent", "--left", &data("t_diag.json"), "--right", &data("a_diag.json")]);
    assert!(v.is_null());
    let v = stdout_json(&["norm", "--matrix", &data("rect.csv")]);
    assert_eq!(v["norm"], 1.0);
}

#[test]
fn verify_report_schema() {
    let v = stdout_json(&["verify", "--suite", "vector-derivative", "--seed", "3", "--trials", "50"]);
    for key in ["schema_version", "suite", "seed", "trials", "agreements", "disagreements", "runtime_seconds"] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
    assert_eq!(v["agreements"], 50);
}
