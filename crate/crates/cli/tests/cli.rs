// SPDX-License-Identifier: Apache-2.0

use std::path::Path;
use std::process::{Command, Output};

const SMALL: &str = "[run]\nseed = 7\n\n[family.3]\nk = 1.5\nchecks = homomorphism, skew, berezin\nsamples = 3\n";

fn superheis(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_superheis")).args(args).output().expect("binary runs")
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn small_manifest_passes() {
    let dir = tempfile::tempdir().unwrap();
    let manifest = write(dir.path(), "m.ini", SMALL);
    let report = dir.path().join("r.json");
    let out = superheis(&["verify", "--manifest", &manifest, "--report", report.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    let names: Vec<&str> = v["checks"].as_array().unwrap().iter().map(|c| c["check"].as_str().unwrap()).collect();
    assert_eq!(names, ["berezin", "homomorphism", "skew"]);
    assert_eq!(v["seed"], 7);
    for c in v["checks"].as_array().unwrap() {
        let keys: Vec<&String> = c.as_object().unwrap().keys().collect();
        assert_eq!(keys, ["check", "family", "max_residual", "notes", "samples", "status"]);
    }
}

#[test]
fn extreme_tolerance_fails() {
    let dir = tempfile::tempdir().unwrap();
    let manifest = write(dir.path(), "m.ini", SMALL);
    let out = superheis(&["verify", "--manifest", &manifest, "--tolerance", "1e-20"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stdout).contains("fail"));
}

#[test]
fn seed_override_reaches_report() {
    let dir = tempfile::tempdir().unwrap();
    let manifest = write(dir.path(), "m.ini", SMALL);
    let report = dir.path().join("r.json");
    let out = superheis(&["verify", "--manifest", &manifest, "--seed", "99", "--report", report.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(v["seed"], 99);
}

#[test]
fn parse_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write(dir.path(), "bad.ini", "[family.3]\nk = 0\n");
    let out = superheis(&["verify", "--manifest", &bad]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line 1") && err.contains("family 3 requires nonzero k"), "{err}");

    let unknown = write(dir.path(), "unknown.ini", "[family.1]\nchecks = all\nspeed = 3\n");
    let out = superheis(&["verify", "--manifest", &unknown]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 3"));

    let empty = write(dir.path(), "empty.ini", "");
    assert_eq!(superheis(&["verify", "--manifest", &empty]).status.code(), Some(2));
    let missing = dir.path().join("nope.ini");
    assert_eq!(superheis(&["verify", "--manifest", missing.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(superheis(&["verify", "--tolerance", "-1"]).status.code(), Some(2));
    assert_eq!(superheis(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn demo_r01_prints_both_parts() {
    let out = superheis(&["demo", "r01"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("inconsistent, no solution"), "{text}");
    assert!(text.contains("skew residual of d/dxi: 0e0"), "{text}");
}

#[test]
fn demo_f7_limit_runs() {
    let out = superheis(&["demo", "f7-limit"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("rho residual on eta-independent vectors: 0e0"));
}

#[test]
fn jacobi_table() {
    let out = superheis(&["jacobi"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8_lossy(&out.stdout);
    assert_eq!(text.lines().count(), 217);
    assert!(text.ends_with("max residual over 216 triples: 0e0\n"));
}

#[test]
fn list_families_shows_all() {
    let out = superheis(&["list-families"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8_lossy(&out.stdout);
    for id in 1..=7 {
        assert!(text.contains(&format!("family {id}\n")));
    }
    assert!(text.contains("R^(1|2)"));
}
