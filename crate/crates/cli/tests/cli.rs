use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn mg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mg")).args(args).output().expect("runs")
}

fn mg_json(args: &[&str]) -> (i32, Value) {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    let out = mg(&full);
    let value = serde_json::from_slice(&out.stdout).expect("JSON report");
    (out.status.code().unwrap(), value)
}

fn path(dir: &Path, name: &str) -> String {
    dir.join(name).to_str().unwrap().to_string()
}

#[test]
fn free_counts_for_one_generator() {
    let (code, r) = mg_json(&["free", "--n", "1", "--counts"]);
    assert_eq!(code, 0);
    assert_eq!(r["existsPi"], 7);
    assert_eq!(r["pi"], 9);
    assert_eq!(r["algebra"], 72);
    assert_eq!(r["counts"]["all_pass"], true);
}

#[test]
fn free_counts_for_two_generators() {
    let out = mg(&["free", "--n", "2", "--counts"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("existsPi=71 pi=101"), "{text}");
    assert!(text.contains("all checks pass=true"));
}

#[test]
fn chain_then_classify() {
    let dir = tempfile::tempdir().unwrap();
    let file = path(dir.path(), "c.json");
    assert_eq!(mg(&["chain", "--coords", "1,0,0", "--out", &file]).status.code(), Some(0));
    let (code, r) = mg_json(&["classify", "--algebra", &file]);
    assert_eq!(code, 0);
    assert_eq!(r["classification"]["fsi"], true);
    assert_eq!(r["width"]["k"], 1);
    assert_eq!(r["heights"]["n_h"], 3);
    assert_eq!(r["heights"]["n_he"], 3);
    assert_eq!(r["discriminator"], false);
}

#[test]
fn check_reports_counterexamples_with_status_one() {
    let dir = tempfile::tempdir().unwrap();
    let file = path(dir.path(), "c.json");
    mg(&["chain", "--coords", "2,0,1", "--out", &file]);
    let (code, r) = mg_json(&["check", "--algebra", &file, "--identity", "A(x|y) = Ax | Ay"]);
    assert_eq!((code, &r["holds"]), (0, &Value::Bool(true)));
    let (code, r) = mg_json(&["check", "--algebra", &file, "--name", "HE_2"]);
    assert_eq!(code, 1);
    assert_eq!(r["holds"], false);
    assert!(r["counterexample"].is_object());
}

#[test]
fn dual_space_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let (a, s, b, d) = (
        path(dir.path(), "a.json"),
        path(dir.path(), "s.json"),
        path(dir.path(), "b.json"),
        path(dir.path(), "s.dot"),
    );
    mg(&["chain", "--coords", "2,1,0", "--out", &a]);
    assert_eq!(mg(&["dual", "--algebra", &a, "--out", &s, "--dot", &d]).status.code(), Some(0));
    assert!(std::fs::read_to_string(&d).unwrap().starts_with("digraph"));
    let (code, r) = mg_json(&["space", "--validate", &s, "--algebra-out", &b]);
    assert_eq!(code, 0);
    assert_eq!(r["algebra_size"], 4);
}

#[test]
fn invalid_space_is_a_verification_failure() {
    let dir = tempfile::tempdir().unwrap();
    let s = path(dir.path(), "s.json");
    // Point 0 lies below two incomparable points, so its up-set is not a chain.
    std::fs::write(&s, r#"{"size": 3, "leq": [[0,1],[0,2]], "classes": [[0],[1],[2]]}"#).unwrap();
    let (code, r) = mg_json(&["space", "--validate", &s]);
    assert_eq!(code, 1);
    assert_eq!(r["valid"], false);
}

#[test]
fn glivenko_outside_w1_fails() {
    let dir = tempfile::tempdir().unwrap();
    let a = path(dir.path(), "sq.json");
    std::fs::write(&a, r#"{"size": 4, "leq": [[0,1],[0,2],[1,3],[2,3]], "exists_image": [0,3]}"#).unwrap();
    let (code, r) = mg_json(&["glivenko", "--algebra", &a]);
    assert_eq!(code, 1);
    assert_eq!(r["in_w1"], false);
}

#[test]
fn glivenko_on_a_chain() {
    let dir = tempfile::tempdir().unwrap();
    let a = path(dir.path(), "c.json");
    mg(&["chain", "--coords", "2,0,1", "--out", &a]);
    let (code, r) = mg_json(&["glivenko", "--algebra", &a]);
    assert_eq!(code, 0);
    assert_eq!(r["carrier"], serde_json::json!([0, 3]));
    assert_eq!(r["g"], serde_json::json!([0, 3, 3, 3]));
}

#[test]
fn verify_paper_suite() {
    let out = mg(&["verify", "--suite", "paper", "--max-size", "6"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
}

#[test]
fn reports_do_not_depend_on_parallelism() {
    let run = |threads: &str| {
        Command::new(env!("CARGO_BIN_EXE_mg"))
            .args(["--json", "verify", "--max-size", "5"])
            .env("MG_MAX_PARALLELISM", threads)
            .output()
            .unwrap()
            .stdout
    };
    assert_eq!(run("1"), run("4"));
}

#[test]
fn dot_output() {
    let dir = tempfile::tempdir().unwrap();
    let d = path(dir.path(), "pi.dot");
    let (code, r) = mg_json(&["dot", "--free", "1", "--out", &d]);
    assert_eq!(code, 0);
    assert_eq!(r["points"], 9);
    let text = std::fs::read_to_string(&d).unwrap();
    assert_eq!(text.matches("subgraph cluster_").count(), 7);
}

#[test]
fn enumerate_writes_files() {
    let dir = tempfile::tempdir().unwrap();
    let (code, r) = mg_json(&["enumerate", "--max-size", "4", "--out-dir", dir.path().to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(r["total"], 9);
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 9);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(mg(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(mg(&["chain", "--coords", "2,1"]).status.code(), Some(2));
    assert_eq!(mg(&["classify", "--algebra", "/nonexistent.json"]).status.code(), Some(2));
    assert_eq!(mg(&["free", "--n", "3"]).status.code(), Some(2));
    assert_eq!(mg(&["verify", "--suite", "other"]).status.code(), Some(2));
}
