//! End-to-end checks of the command-line binary: JSON reports on stdout
//! and verdict-coded exit statuses.

use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value as Json;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_wta"))
}

fn write_file(dir: &std::path::Path, name: &str, contents: &str) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

fn report(output: &Output) -> Json {
    serde_json::from_slice(&output.stdout).expect("stdout is one JSON report")
}

const ARCTIC_ONE_STATE: &str = r#"{
  "algebra": {"kind": "arctic"},
  "alphabet": [{"symbol": "gamma", "rank": 1}, {"symbol": "alpha", "rank": 0}],
  "states": ["q"],
  "transitions": [
    {"symbol": "alpha", "children": [], "state": "q", "weight": 0},
    {"symbol": "gamma", "children": ["q"], "state": "q", "weight": 1}
  ],
  "roots": [{"state": "q", "weight": 0}]
}"#;

#[test]
fn eval_prints_the_value() {
    let dir = std::env::temp_dir().join("wta-cli-eval");
    std::fs::create_dir_all(&dir).unwrap();
    let file = write_file(&dir, "a.json", ARCTIC_ONE_STATE);

    let out = bin().arg("eval").arg(&file).args(["--tree", "gamma(gamma(gamma(alpha)))"]).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(report(&out)["value"], "3");
}

#[test]
fn decide_finite_image_exit_codes() {
    let dir = std::env::temp_dir().join("wta-cli-decide");
    std::fs::create_dir_all(&dir).unwrap();
    let file = write_file(&dir, "a.json", ARCTIC_ONE_STATE);

    let out = bin().args(["decide", "finite-image"]).arg(&file).output().unwrap();
    assert_eq!(out.status.code(), Some(1), "infinite image exits 1");
    let r = report(&out);
    assert_eq!(r["verdict"], "no");
    assert_eq!(r["witness"]["type"], "pump");
}

#[test]
fn preimage_output_is_loadable_and_correct() {
    let dir = std::env::temp_dir().join("wta-cli-preimage");
    std::fs::create_dir_all(&dir).unwrap();
    let file = write_file(&dir, "a.json", ARCTIC_ONE_STATE);
    let saved = dir.join("pre.json");

    let out = bin()
        .arg("preimage")
        .arg(&file)
        .args(["--weight", "2", "--out"])
        .arg(&saved)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));

    // the saved recognizer accepts exactly gamma(gamma(alpha))
    for (tree, expect) in [("gamma(gamma(alpha))", "1"), ("gamma(alpha)", "0"), ("alpha", "0")] {
        let out = bin().arg("eval").arg(&saved).args(["--tree", tree]).output().unwrap();
        assert_eq!(report(&out)["value"], expect, "on {tree}");
    }
}

#[test]
fn malformed_input_exits_3() {
    let dir = std::env::temp_dir().join("wta-cli-bad");
    std::fs::create_dir_all(&dir).unwrap();
    let file = write_file(&dir, "bad.json", "{\"algebra\": {\"kind\": \"arctic\"}}");

    let out = bin().args(["decide", "cost-finite"]).arg(&file).output().unwrap();
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(report(&out)["verdict"], "error");
}

#[test]
fn cfg_finite_verdicts() {
    let dir = std::env::temp_dir().join("wta-cli-cfg");
    std::fs::create_dir_all(&dir).unwrap();
    let finite = write_file(&dir, "finite.cfg", "S -> a b\n");
    let infinite = write_file(&dir, "infinite.cfg", "S -> a S\nS -> a\n");

    let out = bin().arg("cfg-finite").arg(&finite).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let out = bin().arg("cfg-finite").arg(&infinite).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn check_algebra_reports_violations() {
    let dir = std::env::temp_dir().join("wta-cli-alg");
    std::fs::create_dir_all(&dir).unwrap();
    let good = write_file(
        &dir,
        "arctic.json",
        r#"{"algebra": {"kind": "arctic"}, "samples": [1, 2, 5, "-inf"]}"#,
    );
    let out = bin().arg("check-algebra").arg(&good).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(report(&out)["violations"].as_array().unwrap().len(), 0);
}
