use std::collections::BTreeSet;
use std::process::Command as Process;

use nuchern::output::{report_json, strip_timing};
use nuchern::{run, Command, RunConfig};
use serde_json::Value;

fn small(command: Command) -> RunConfig {
    RunConfig { command, m: 1, n: 1, k: 1, l: 1, charts: 2, samples: 10, ..RunConfig::default() }
}

fn binary(args: &[&str]) -> (Option<i32>, String) {
    let out = Process::new(env!("CARGO_BIN_EXE_nuchern")).args(args).env_remove("NUCHERN_SEED").output().unwrap();
    (out.status.code(), String::from_utf8(out.stdout).unwrap())
}

fn json(args: &[&str]) -> (Option<i32>, Value) {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let (code, text) = binary(&all);
    let mut v: Value = serde_json::from_str(&text).unwrap();
    strip_timing(&mut v);
    (code, v)
}

#[test]
fn json_is_deterministic_apart_from_timing() {
    let args = ["verify-cocycle", "--m", "1", "--n", "1", "--samples", "20", "--seed", "9"];
    let (code, first) = json(&args);
    let (_, second) = json(&args);
    assert_eq!(code, Some(0));
    assert_eq!(first, second);
    assert_eq!(first["command"], "verify-cocycle");
    assert_eq!(first["config"]["seed"], "9");
    assert_eq!(first["overall"], "pass");
}

#[test]
fn seed_environment_overrides_flag() {
    let base = ["properties", "--samples", "3", "--format", "json"];
    let run_with = |env: Option<&str>, seed: &str| {
        let mut p = Process::new(env!("CARGO_BIN_EXE_nuchern"));
        p.args(base).args(["--seed", seed]);
        match env {
            Some(s) => p.env("NUCHERN_SEED", s),
            None => p.env_remove("NUCHERN_SEED"),
        };
        let mut v: Value = serde_json::from_slice(&p.output().unwrap().stdout).unwrap();
        strip_timing(&mut v);
        v
    };
    assert_eq!(run_with(Some("5"), "1")["config"]["seed"], "5");
    assert_eq!(run_with(Some("5"), "1"), run_with(None, "5"));
}

#[test]
fn all_is_the_union_of_the_other_commands() {
    let all = run(&small(Command::All)).unwrap();
    let mut union = Vec::new();
    for c in Command::PIPELINES {
        let mut v = report_json(&run(&small(c)).unwrap());
        strip_timing(&mut v);
        union.extend(v["checks"].as_array().unwrap().iter().cloned());
    }
    let mut whole = report_json(&all);
    strip_timing(&mut whole);
    let key = |v: &Value| v.to_string();
    let a: BTreeSet<String> = whole["checks"].as_array().unwrap().iter().map(key).collect();
    let b: BTreeSet<String> = union.iter().map(key).collect();
    assert_eq!(a.len(), whole["checks"].as_array().unwrap().len());
    assert_eq!(a, b);
}

#[test]
fn gluing_on_the_projective_line_passes() {
    let (code, text) = binary(&["verify-gluing", "--m", "1", "--n", "1"]);
    assert_eq!(code, Some(0), "{text}");
    assert!(text.contains("PASS gluing/p1|1/compose/1-2-3"));
    assert!(text.ends_with("0 failed)\n"));
}

#[test]
fn headline_cell_is_reported() {
    let (code, v) = json(&["nu-class", "--m", "2", "--n", "1", "--samples", "100"]);
    let checks = v["checks"].as_array().unwrap();
    let headline = checks.iter().find(|c| c["name"] == "delta-eta/p2|1/headline/2-4-1").unwrap();
    assert_eq!(headline["details"]["expected"], serde_json::json!(["-1/2", "0/1"]));
    assert!(headline["details"]["observed"].is_array());
    assert_eq!(code, Some(if v["overall"] == "pass" { 0 } else { 1 }));
}

#[test]
fn bad_configuration_exits_with_usage_error() {
    assert_eq!(binary(&["verify-gluing", "--m", "0"]).0, Some(2));
    assert_eq!(binary(&["frobnicate"]).0, Some(2));
    assert_eq!(binary(&["atlas", "--branch", "sideways"]).0, Some(2));
}

#[test]
fn out_file_matches_stdout() {
    let path = std::env::temp_dir().join(format!("nuchern-out-{}.json", std::process::id()));
    let p = path.to_str().unwrap();
    let (_, silent) = binary(&["atlas", "--format", "json", "--out", p]);
    assert!(silent.is_empty());
    let (_, printed) = binary(&["atlas", "--format", "json"]);
    let written = std::fs::read_to_string(&path).unwrap();
    std::fs::remove_file(&path).unwrap();
    let strip = |s: &str| {
        let mut v: Value = serde_json::from_str(s).unwrap();
        strip_timing(&mut v);
        v
    };
    assert_eq!(strip(&written), strip(&printed));
}

#[test]
fn synthetic_curvature_example_passes() {
    let (code, text) = binary(&["curvature", "--k", "2", "--l", "1", "--charts", "3", "--seed", "7"]);
    assert_eq!(code, Some(0), "{text}");
    for part in ["/bianchi/", "/gauge/", "/newton/"] {
        assert!(text.lines().any(|l| l.starts_with("PASS") && l.contains(part)), "{part}");
    }
}
