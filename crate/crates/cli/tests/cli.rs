use std::fs;
use std::process::{Command, Output};

use serde_json::Value;

const A2: &str = "[[2,-1],[-1,2]]";
const AFFINE: &str = "[[2,-2],[-2,2]]";

fn bgg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bgg")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn weyl_a2_with_dot() {
    let dir = tempfile::tempdir().unwrap();
    let gcm = dir.path().join("a2.json");
    fs::write(&gcm, r#"{"rank": 2, "entries": [[2,-1],[-1,2]]}"#).unwrap();
    let dot = dir.path().join("out.dot");
    let out = bgg(&["weyl", "--gcm", gcm.to_str().unwrap(), "--max-length", "3", "--dot", dot.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["level_sizes"], serde_json::json!([1, 2, 2, 1]));
    assert_eq!(v["arrows"].as_array().unwrap().len(), 8);
    let text = fs::read_to_string(dot).unwrap();
    assert_eq!(text.matches("label=\"").count(), 6 + 8);
}

#[test]
fn weyl_length_zero_is_one_node() {
    let out = bgg(&["weyl", "--gcm", AFFINE, "--max-length", "0"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["level_sizes"], serde_json::json!([1]));
}

#[test]
fn invalid_gcm_exits_2_with_diagnostics() {
    let out = bgg(&["weyl", "--gcm", "[[2,1],[0,3]]", "--max-length", "2"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("diagonal") && err.contains("zero pattern"), "{err}");
    assert_eq!(bgg(&["bgg", "--gcm", "/no/such/file.json"]).status.code(), Some(2));
    assert_eq!(bgg(&["bgg", "--gcm", A2, "--mu", "1"]).status.code(), Some(2));
    assert_eq!(bgg(&["bgg", "--gcm", AFFINE, "--mu", "1,0"]).status.code(), Some(2));
}

#[test]
fn bgg_a2_full_depth() {
    let out = bgg(&["bgg", "--gcm", A2, "--mu", "1,1", "--depth", "full", "--jobs", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["d_squared"], "ok");
    assert_eq!(v["degree0_match"], true);
    assert_eq!(v["degree0"]["total"], 8);
    assert!(v["trust_region"]["depth"].as_i64().unwrap() == 8);
}

#[test]
fn bgg_affine_depth_6_and_determinism() {
    let args = ["bgg", "--gcm", AFFINE, "--mu", "1,0", "--depth", "6"];
    let a = bgg(&args);
    assert_eq!(a.status.code(), Some(0));
    let b = bgg(&[&args[..], &["--jobs", "1"]].concat());
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(json(&a)["trusted_slices"], 28);
}

#[test]
fn mutated_sign_exits_4() {
    let out = bgg(&["bgg", "--gcm", A2, "--mu", "1,1", "--mutate", "flip:3"]);
    assert_eq!(out.status.code(), Some(4));
    assert!(json(&out)["d_squared"].is_array());
}

#[test]
fn bggl_a2_and_config_file() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.json");
    fs::write(&cfg, r#"{"gcm": [[2,-1],[-1,2]], "mu": [1,1], "S": [0], "depth": "full"}"#).unwrap();
    let report = dir.path().join("report.json");
    let out = bgg(&["bggl", "--config", cfg.to_str().unwrap(), "--out", report.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_str(&fs::read_to_string(report).unwrap()).unwrap();
    assert_eq!(v["quotient"]["representatives"], serde_json::json!([[], [1], [1, 0]]));
    assert_eq!(v["filtration"]["upward_nonzero_blocks"], 0);
}

#[test]
fn quantum_a2_symbolic() {
    let out = bgg(&["quantum", "--gcm", A2, "--mu", "1,1"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["field"], "Q(q)");
    assert_eq!(v["dichotomy_match"], true);
    let numeric = bgg(&["bgg", "--gcm", A2, "--mu", "1,0", "--engine", "quantum", "--q", "3/2"]);
    assert_eq!(numeric.status.code(), Some(0));
    assert_eq!(bgg(&["bgg", "--gcm", A2, "--engine", "quantum", "--q", "1"]).status.code(), Some(2));
}

#[test]
fn characters_denominator_identity() {
    let out = bgg(&["characters", "--gcm", AFFINE, "--depth", "6"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["denominator"]["matches"], true);
}
