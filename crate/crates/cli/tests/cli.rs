use std::path::Path;
use std::process::{Command, Output};

use qpart_core::{BigInt, Params, StatId, StatTable};
use serde_json::Value;

fn qpart(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qpart"))
        .args(args)
        .output()
        .expect("qpart runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 output")
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("utf-8 output")
}

fn csv_row(out: &Output, n: usize) -> String {
    stdout(out)
        .lines()
        .nth(n + 1)
        .expect("row present")
        .to_string()
}

#[test]
fn compute_b3() {
    let out = qpart(&["compute", "b", "--k", "3", "--n-max", "10"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out).lines().next(), Some("n,value"));
    assert_eq!(csv_row(&out, 5), "5,2");
}

#[test]
fn compute_a_residue() {
    let out = qpart(&["compute", "a", "--k", "3", "--p", "2", "--n-max", "5"]);
    assert_eq!(code(&out), 0);
    assert_eq!(csv_row(&out, 5), "5,11");
}

#[test]
fn compute_q_at_zero() {
    let out = qpart(&["compute", "q", "--n-max", "0"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "n,value\n0,1\n");
}

#[test]
fn compute_json_switches_to_strings_for_large_values() {
    let out = qpart(&["compute", "p", "--n-max", "300", "--format", "json"]);
    assert_eq!(code(&out), 0);
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["values"][5], 7);
    // p(300) = 9253082936723602 > 2^53
    assert_eq!(v["values"][300], "9253082936723602");
}

#[test]
fn compute_rejects_bad_params() {
    for (args, needle) in [
        (&["compute", "a", "--k", "3", "--p", "3"][..], "p < k"),
        (&["compute", "b", "--n-max", "5"][..], "requires --k"),
        (&["compute", "b", "--k", "0"][..], "k must be >= 1"),
        (&["compute", "m", "--ell", "0"][..], "ell must be >= 1"),
        (&["compute", "q", "--k", "2"][..], "does not take --k"),
        (&["compute", "zeta"][..], "unknown statistic"),
    ] {
        let out = qpart(args);
        assert_eq!(code(&out), 2, "{args:?}");
        assert!(stderr(&out).contains(needle), "{args:?}: {}", stderr(&out));
    }
}

#[test]
fn csv_round_trip_through_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("a.csv");
    let out = qpart(&[
        "compute",
        "a",
        "--k",
        "4",
        "--p",
        "1",
        "--n-max",
        "200",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    assert!(out.stdout.is_empty());
    let bytes = std::fs::read(&path).unwrap();
    assert!(!bytes.contains(&b'\r'));
    let params = Params::kp(4, 1);
    let back = StatTable::read_csv(StatId::Akp, params, bytes.as_slice()).unwrap();
    let direct = qpart_core::stats::compute(StatId::Akp, params, 200).unwrap();
    assert_eq!(back, direct);
}

#[test]
fn verify_full_default_grid_passes() {
    let out = qpart(&[
        "verify", "all", "--n-max", "60", "--k", "1..4", "--ell", "1..3",
    ]);
    assert_eq!(code(&out), 0, "{}", stdout(&out));
    assert!(stdout(&out).contains("all suites passed"));
}

#[test]
fn verify_bad_exponent_reports_witness() {
    let out = qpart(&["verify", "bad-exponent", "--n-max", "60"]);
    assert_eq!(code(&out), 1);
    assert!(
        stderr(&out).contains("smallest failing (n, ell) = (5, 2)"),
        "{}",
        stderr(&out)
    );
    assert!(stdout(&out).contains("smallest: BadExponent at n=5 k=2 ell=2"));
}

#[test]
fn verify_trunc_k2() {
    let out = qpart(&[
        "verify", "trunc", "--k", "2", "--ell", "1..4", "--n-max", "120",
    ]);
    assert_eq!(code(&out), 0);
}

#[test]
fn verify_config_errors_exit_2() {
    for args in [
        &["verify", "all", "--k", "0..2"][..],
        &["verify", "all", "--k", "4..1"][..],
        &["verify", "all", "--k", "1..5", "--n-max", "3"][..],
        &["verify", "nonsense"][..],
        &["verify", "gf", "--format", "csv"][..],
    ] {
        assert_eq!(code(&qpart(args)), 2, "{args:?}");
    }
}

#[test]
fn verify_json_is_identical_across_thread_counts() {
    let base = [
        "verify", "all", "--n-max", "40", "--k", "1..4", "--ell", "1..3", "--format", "json",
    ];
    let one = qpart(&[&["--threads", "1"][..], &base[..]].concat());
    let many = qpart(&[&["--threads", "4"][..], &base[..]].concat());
    let default = qpart(&base);
    assert_eq!(code(&one), 0);
    assert_eq!(one.stdout, many.stdout);
    assert_eq!(one.stdout, default.stdout);
    let v: Value = serde_json::from_slice(&one.stdout).unwrap();
    assert_eq!(v["passed"], true);
    assert_eq!(v["reports"].as_array().unwrap().len(), 9);
}

#[test]
fn export_counts_tables() {
    let out = qpart(&["export", "a,b,c", "--k", "1..3", "--n-max", "30"]);
    assert_eq!(code(&out), 0);
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    let doc = v.as_object().unwrap();
    // a_k x3, a_{k,p} for 1+2+3 residues, b_k x3, c_k x3
    assert_eq!(doc.len(), 15);
    assert_eq!(doc["b_k/k=3"]["values"][5], 2);
    assert_eq!(doc["a_kp/k=3,p=1"]["values"][5], 9);
    assert_eq!(doc["a_k/k=2"]["values"].as_array().unwrap().len(), 31);
}

#[test]
fn export_single_residue() {
    let out = qpart(&["export", "a", "--k", "1..3", "--p", "2", "--n-max", "10"]);
    assert_eq!(code(&out), 0);
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    let keys: Vec<&String> = v.as_object().unwrap().keys().collect();
    assert_eq!(keys, ["a_k/k=1", "a_k/k=2", "a_k/k=3", "a_kp/k=3,p=2"]);
}

#[test]
fn export_empty_selector() {
    let out = qpart(&["export", ""]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "{}\n");
}

#[test]
fn export_unwritable_path_exits_3() {
    let dir = tempfile::tempdir().unwrap();
    let target = dir.path().join("missing").join("out.json");
    let out = qpart(&["export", "b", "--out", target.to_str().unwrap()]);
    assert_eq!(code(&out), 3);
    assert!(!Path::new(&target).exists());
}

#[test]
fn export_is_deterministic_and_matches_core() {
    let args = [
        "export",
        "a,b,c,m,mp,q,p,cn",
        "--k",
        "1..3",
        "--ell",
        "1..2",
        "--n-max",
        "25",
    ];
    let first = qpart(&args);
    let second = qpart(&[&["--threads", "1"][..], &args[..]].concat());
    assert_eq!(code(&first), 0);
    assert_eq!(first.stdout, second.stdout);
    let v: Value = serde_json::from_slice(&first.stdout).unwrap();
    let mp = qpart_core::stats::mp_ell_series(1, 25).unwrap();
    let got: Vec<BigInt> = v["MP_ell/ell=1"]["values"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| BigInt::from(x.as_i64().unwrap()))
        .collect();
    assert_eq!(got, mp.values());
}
