use std::process::{Command, Output};

use serde_json::Value;

fn brauer(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_brauer"))
        .args(args)
        .env_remove("BRAUER_CACHE")
        .env_remove("BRAUER_FORMAT")
        .env_remove("BRAUER_OUTPUT")
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = brauer(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn json(args: &[&str]) -> Value {
    serde_json::from_str(&stdout(args)).unwrap()
}

#[test]
fn branch_example() {
    assert_eq!(stdout(&["branch", "--label", "[2,1]", "--d", "5"]).trim(), r#"{"[1]":1,"[2,1]":1}"#);
}

#[test]
fn casimir_example() {
    assert_eq!(stdout(&["casimir", "--algebra", "so", "--label", "[3,1]", "--d", "6"]).trim(), "48");
    assert_eq!(stdout(&["casimir", "--algebra", "u", "--label", "[2,1]", "--d", "4"]).trim(), "12");
}

#[test]
fn definetti_csv_example() {
    let csv = stdout(&["region", "definetti", "--n", "3", "--d", "3", "--format", "csv"]);
    let rows: Vec<&str> = csv.lines().collect();
    assert_eq!(rows[0], "f,b");
    assert_eq!(rows.len(), 4);
    assert_eq!(rows[1], "-1,0");
    assert_eq!(rows[2], "1,0");
    let b: f64 = rows[3].split(',').nth(1).unwrap().parse().unwrap();
    assert!((b - 5.0 / 9.0).abs() < 1e-15);
}

#[test]
fn coefficient_commands() {
    assert_eq!(stdout(&["lr", "--lambda", "[2,2]", "--mu", "[2]", "--nu", "[2]"]).trim(), "1");
    assert_eq!(stdout(&["lr", "--lambda", "[2,2]", "--mu", "[2]", "--nu", "[1,1]"]).trim(), "0");
    assert_eq!(stdout(&["nl", "--lambda", "[1]", "--mu", "[1]", "--nu", "[2]"]).trim(), "1");
    assert_eq!(stdout(&["nl", "--lambda", "[1]", "--mu", "[1]", "--nu", "[1]"]).trim(), "0");
    let t = json(&["tensor-o", "--a", "[1]", "--b", "[1]", "--d", "4"]);
    assert_eq!(t, serde_json::json!({"0": 1, "[1,1]": 1, "[2]": 1}));
    let u = json(&["tensor-u", "--mu", "[1]", "--nu", "[1]", "--d", "1"]);
    assert_eq!(u, serde_json::json!({"[2]": 1}));
    assert_eq!(json(&["modify", "--label", "[1,1,1]", "--d", "4"]), serde_json::json!({"label": "[1]*", "sign": 1}));
}

#[test]
fn check_queries() {
    let v = json(&["check", "--f", "-1", "--b", "0", "--d", "3", "--query", "werner"]);
    assert_eq!(v["inside"], true);
    let v = json(&["check", "--f", "0.5", "--b", "0.5", "--d", "3", "--query", "separable"]);
    assert_eq!(v["inside"], false);
    assert!((v["distance"].as_f64().unwrap() - (0.5 - 1.0 / 3.0)).abs() < 1e-12);
}

#[test]
fn region_outputs_are_deterministic() {
    let args = ["region", "limit", "--d", "3", "--samples", "2000", "--seed", "7"];
    assert_eq!(stdout(&args), stdout(&args));
    let r = json(&["region", "twosided", "--case", "1,3", "--d", "3", "--resolution", "128"]);
    assert_eq!(r["kind"], "region");
    assert_eq!(r["meta"]["curve"], "printed");
    let r = json(&["region", "oracle", "--mode", "definetti:3", "--d", "2", "--angles", "64"]);
    assert!(r["gap"].as_f64().unwrap() < 1e-9);
}

#[test]
fn files_cache_and_plot() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("lr.json");
    let cache_s = cache.to_str().unwrap();
    let first = stdout(&["--cache", cache_s, "lr", "--lambda", "[3,2,1]", "--mu", "[2,1]", "--nu", "[2,1]"]);
    let stored: Value = serde_json::from_str(&std::fs::read_to_string(&cache).unwrap()).unwrap();
    assert_eq!(stored["[3,2,1]|[2,1]|[2,1]"], 2);
    let second = stdout(&["--cache", cache_s, "lr", "--lambda", "[3,2,1]", "--mu", "[2,1]", "--nu", "[2,1]"]);
    assert_eq!(first, second);

    let region = dir.path().join("r.json");
    stdout(&["--output", region.to_str().unwrap(), "region", "definetti", "--n", "4", "--d", "3"]);
    let svg = stdout(&["plot", "--input", region.to_str().unwrap(), "--d", "3"]);
    assert!(svg.starts_with("<svg") && svg.contains("width=\"800\""));
}

#[test]
fn exit_codes() {
    assert_eq!(brauer(&["branch", "--label", "[2,x]", "--d", "3"]).status.code(), Some(2));
    assert_eq!(brauer(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(brauer(&["region", "twosided", "--case", "2,3", "--d", "3"]).status.code(), Some(2));
    let out = brauer(&["region", "oracle", "--mode", "twosided:2,2", "--d", "4", "--cap", "16"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!out.stderr.is_empty() && out.stdout.is_empty());
}

#[test]
fn validate_suites() {
    let out = brauer(&["validate", "--suites-only"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().filter(|l| l.starts_with("[PASS]")).count() >= 7);
    let out = brauer(&["validate", "--criteria", "1,3"]);
    assert_eq!(out.status.code(), Some(0));
}
