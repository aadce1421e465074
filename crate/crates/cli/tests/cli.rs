use std::collections::BTreeSet;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fockalg")).args(args).output().expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let out = run(&all);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    serde_json::from_str(&stdout(&out)).unwrap()
}

fn r(s: &str) -> Value {
    serde_json::json!({ "r": s })
}

#[test]
fn list_has_every_family() {
    let out = run(&["list"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out).lines().count(), 16);
    assert_eq!(json(&["list"]).as_array().unwrap().len(), 16);
}

#[test]
fn list_filter_super() {
    let ids: Vec<String> = json(&["list", "--filter", "super"])
        .as_array()
        .unwrap()
        .iter()
        .map(|e| e["id"].as_str().unwrap().to_string())
        .collect();
    assert_eq!(ids, ["osp22", "osp22_translated", "osp22_metaplectic", "gl_super"]);
}

#[test]
fn verify_passing_rep_exits_zero() {
    let out = run(&["verify", "sl2_standard", "n=2"]);
    assert_eq!(code(&out), 0, "{}", stdout(&out));
    assert!(!stdout(&out).contains("FAIL"));
}

#[test]
fn verify_osp22_reports_sixteen_relation_lines() {
    let report = json(&["verify", "osp22", "n=3"]);
    let lines: BTreeSet<String> = report["checks"]
        .as_array()
        .unwrap()
        .iter()
        .filter_map(|c| c["name"].as_str()?.strip_prefix("relation ")?.split(':').next().map(String::from))
        .collect();
    assert_eq!(lines.len(), 16);
    assert!(report["checks"].as_array().unwrap().iter().all(|c| c["status"] == "PASS"));
}

#[test]
fn verify_failure_exits_one_with_witness() {
    // too few test states to separate the generators
    let out = run(&["verify", "sl2_standard", "n=2", "--cutoff", "2", "--format", "json"]);
    assert_eq!(code(&out), 1);
    let report: Value = serde_json::from_str(&stdout(&out)).unwrap();
    let failed: Vec<&Value> = report["checks"].as_array().unwrap().iter().filter(|c| c["status"] == "FAIL").collect();
    assert!(!failed.is_empty());
    assert!(failed.iter().all(|c| !c["witness"].is_null()));
}

#[test]
fn domain_guards_exit_two() {
    let out = run(&["verify", "sl2q", "alpha=2", "q=1"]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("q=1 not allowed"));
    let out = run(&["verify", "sl2_translated", "n=1", "delta=0"]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("delta=0 not allowed"));
}

#[test]
fn unknown_rep_exits_two() {
    let out = run(&["verify", "sl4_mystery"]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("unknown representation"));
}

#[test]
fn malformed_input_exits_two() {
    for args in [
        vec!["verify", "sl2_standard", "n=abc"],
        vec!["verify", "sl2_standard", "n"],
        vec!["verify", "sl2_standard", "n=1/0"],
        vec!["verify", "sl2_standard"],
        vec!["verify", "sl2_standard", "n=2", "--cutoff", "1"],
        vec!["frobnicate"],
        vec!["matrix", "sl2_standard", "n=2"],
        vec!["matrix", "sl2_standard", "n=2", "--gen", "J0", "--realization", "sideways"],
    ] {
        let out = run(&args);
        assert_eq!(code(&out), 2, "{args:?}");
        assert!(!stderr(&out).is_empty());
        assert!(stdout(&out).is_empty());
    }
}

#[test]
fn matrix_of_sl2_j0_is_diagonal() {
    let m = json(&["matrix", "sl2_standard", "n=2", "--gen", "J0"]);
    let want = serde_json::json!([
        [r("-1/1"), r("0/1"), r("0/1")],
        [r("0/1"), r("0/1"), r("0/1")],
        [r("0/1"), r("0/1"), r("1/1")],
    ]);
    assert_eq!(m["matrix"], want);
    assert_eq!(m["overflow_columns"], serde_json::json!([]));
}

#[test]
fn matrix_of_glk_raising_generator() {
    let m = json(&["matrix", "glk", "k=2", "n=1", "--gen", "J2+"]);
    let rows = m["matrix"].as_array().unwrap();
    assert_eq!(rows.len(), 2);
    assert!(rows.iter().all(|row| row.as_array().unwrap().len() == 2));
}

#[test]
fn lowering_operator_has_no_overflow() {
    let m = json(&["matrix", "sl2_metaplectic", "--gen", "J+", "--cutoff", "4"]);
    assert_eq!(m["overflow_columns"], serde_json::json!([]));
    assert_eq!(m["matrix"][0][2], r("1/1"));
}

#[test]
fn overflow_is_flagged_not_failed() {
    let m = json(&["matrix", "sl2_standard", "n=1/2", "--gen", "J+", "--cutoff", "2"]);
    assert_eq!(m["overflow_columns"], serde_json::json!([2]));
}

#[test]
fn realized_matrices_match_fock() {
    let fock = json(&["matrix", "sl2_translated", "n=2", "delta=1/2", "--gen", "J+"]);
    let fd = json(&["matrix", "sl2_translated", "n=2", "delta=1/2", "--gen", "J+", "--realization", "fd"]);
    assert_eq!(fock["matrix"], fd["matrix"]);
    let fock = json(&["matrix", "sl2q", "alpha=1", "q=2", "--gen", "J-", "--cutoff", "3"]);
    let jackson =
        json(&["matrix", "sl2q", "alpha=1", "q=2", "--gen", "J-", "--cutoff", "3", "--realization", "jackson"]);
    assert_eq!(fock["matrix"], jackson["matrix"]);
}

#[test]
fn unsupported_realization_exits_two() {
    let out = run(&["matrix", "sl2_standard", "n=2", "--gen", "J+", "--realization", "jackson"]);
    assert_eq!(code(&out), 2);
    let out = run(&["matrix", "sl2_standard", "n=2", "--gen", "Jx"]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("unknown generator"));
}

#[test]
fn casimir_values() {
    let c = json(&["casimir", "sl2q", "alpha=1", "q=2"]);
    assert_eq!(c["value"], r("-14/25"));
    assert_eq!(c["check"]["status"], "PASS");
    let c = json(&["casimir", "sl2_metaplectic"]);
    assert_eq!(c["value"], r("3/16"));
    let c = json(&["casimir", "sl2_standard", "n=2"]);
    assert_eq!(c["value"], r("-2/1"));
    assert_eq!(c["quoted_value"], r("-3/2"));
}

#[test]
fn casimir_missing_exits_two() {
    let out = run(&["casimir", "sl3_fock", "n=1"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn report_all_passes() {
    let out = run(&["report-all"]);
    assert_eq!(code(&out), 0, "{}", stdout(&out));
    assert!(stdout(&out).ends_with("16 representations, 0 failed\n"));
}

#[test]
fn output_is_deterministic() {
    let a = run(&["report-all", "--format", "json"]);
    let b = run(&["report-all", "--format", "json"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn out_flag_writes_file() {
    let dir = std::env::temp_dir().join(format!("fockalg-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("j0.json");
    let out =
        run(&["matrix", "sl2_standard", "n=2", "--gen", "J0", "--format", "json", "--out", path.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["generator"], "J0");
    std::fs::remove_dir_all(&dir).unwrap();

    let out = run(&["list", "--out", "/nonexistent-dir/list.txt"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn decimal_rendering() {
    let m = json(&["matrix", "sl2_standard", "n=1/2", "--gen", "J0", "--cutoff", "1", "--decimal"]);
    assert_eq!(m["matrix"][0][0], serde_json::json!(-0.25));
}
