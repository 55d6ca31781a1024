use std::path::Path;
use std::process::{Command, Output};

fn curvlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_curvlab")).args(args).output().expect("binary runs")
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn gen_then_audit_g208_passes() {
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("g.rot");
    assert_eq!(curvlab(&["gen", "g208", "--out", path(&g)]).status.code(), Some(0));
    let out = curvlab(&["audit", path(&g)]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
}

#[test]
fn prism_audit_fails_citing_the_definition() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("prism5.rot");
    assert_eq!(curvlab(&["gen", "prism", "5", "--out", path(&p)]).status.code(), Some(0));
    let out = curvlab(&["--format", "json", "audit", path(&p)]);
    assert_eq!(out.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["verdict"], "fail");
    let failed: Vec<&serde_json::Value> = v["sections"]
        .as_array()
        .unwrap()
        .iter()
        .flat_map(|s| s["checks"].as_array().unwrap())
        .filter(|c| c["passed"] == false)
        .collect();
    assert!(failed.iter().any(|c| c["citation"] == "Def.1.1(iii)"));
}

#[test]
fn table_json_has_18_families() {
    let out = curvlab(&["table", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["families"], 18);
    assert_eq!(v["rows"].as_array().unwrap().len(), 18);
}

#[test]
fn audit_json_round_trips_and_carries_census() {
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("g13.rot");
    curvlab(&["gen", "gN", "13", "--out", path(&g)]);
    let out = curvlab(&["--format", "json", "audit", path(&g)]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let again: serde_json::Value = serde_json::from_str(&serde_json::to_string(&v).unwrap()).unwrap();
    assert_eq!(v, again);
    assert!(v["census"]["classes"].as_object().is_some_and(|m| !m.is_empty()));
    assert!(v["census"]["face_sizes"]["13"].as_u64().unwrap() >= 1);
}

#[test]
fn usage_and_input_errors_exit_2() {
    assert_eq!(curvlab(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(curvlab(&["audit", "/nonexistent/x.rot"]).status.code(), Some(2));
    assert_eq!(curvlab(&["gen", "prism"]).status.code(), Some(2));
    assert_eq!(curvlab(&["--help"]).status.code(), Some(0));
}

#[test]
fn bad_rotmap_is_a_parse_error() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("bad.rot");
    std::fs::write(&p, "this is not a rotation map\n").unwrap();
    assert_eq!(curvlab(&["audit", path(&p)]).status.code(), Some(2));
}

#[test]
fn discharge_report_has_exact_fractions() {
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("g.rot");
    let r = dir.path().join("r.json");
    curvlab(&["gen", "g208", "--out", path(&g)]);
    let out = curvlab(&["discharge", "--input", path(&g), "--report", path(&r), "--refine"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&r).unwrap()).unwrap();
    assert_eq!(v["total"], "2/209");
    let faces: Vec<&serde_json::Value> =
        v["targets"].as_array().unwrap().iter().filter(|t| t["size"] == 39).collect();
    assert_eq!(faces.len(), 2);
    assert!(faces.iter().all(|t| t["c"]["exact"] == "34/4389"));
    assert!(!v["pairing"].as_array().unwrap().is_empty());
}

#[test]
fn chains_and_surgery() {
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("g.rot");
    let s = dir.path().join("s.rot");
    curvlab(&["gen", "g208", "--out", path(&g)]);
    let out = curvlab(&["--format", "json", "chains", path(&g)]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v[0]["laws"]["length"], 52);
    let out = curvlab(&["surgery", path(&g), "--chain", "0", "--out", path(&s)]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(curvlab(&["audit", path(&s)]).status.code(), Some(0));
    assert_eq!(curvlab(&["surgery", path(&g), "--chain", "3"]).status.code(), Some(2));
}

#[test]
fn lp_subcommand() {
    assert_eq!(curvlab(&["lp"]).status.code(), Some(0));
    assert_eq!(curvlab(&["lp", "--optimize"]).status.code(), Some(0));
    let out = curvlab(&["--format", "json", "lp", "--perturb", "alpha=1/2"]);
    assert_eq!(out.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["flipped"], serde_json::json!(["8 final A>=4"]));
}

#[test]
fn lp_with_custom_files() {
    let dir = tempfile::tempdir().unwrap();
    let s = dir.path().join("one.txt");
    let w = dir.path().join("w.txt");
    std::fs::write(&s, "weight w = 1/4 in [0,1]\n1 only: weight(w) > 1/2  # toy\n").unwrap();
    assert_eq!(curvlab(&["lp", "--scenarios", path(&s)]).status.code(), Some(1));
    std::fs::write(&w, "w = 3/4\n").unwrap();
    assert_eq!(curvlab(&["lp", "--scenarios", path(&s), "--weights", path(&w)]).status.code(), Some(0));
    std::fs::write(&s, "1 only: weight(nope) > 0\n").unwrap();
    assert_eq!(curvlab(&["lp", "--scenarios", path(&s)]).status.code(), Some(2));
}

#[test]
fn certify_passes() {
    assert_eq!(curvlab(&["certify"]).status.code(), Some(0));
}

#[test]
fn thread_cap_does_not_change_results() {
    let dir = tempfile::tempdir().unwrap();
    let mut files = Vec::new();
    for n in ["8", "20", "41"] {
        let p = dir.path().join(format!("g{n}.rot"));
        curvlab(&["gen", "gN", n, "--out", path(&p)]);
        files.push(p);
    }
    let args: Vec<&str> = ["--format", "json", "audit"].into_iter().chain(files.iter().map(|p| path(p))).collect();
    let one = Command::new(env!("CARGO_BIN_EXE_curvlab")).args(&args).env("CURVLAB_THREADS", "1").output().unwrap();
    let many = Command::new(env!("CARGO_BIN_EXE_curvlab")).args(&args).env("CURVLAB_THREADS", "4").output().unwrap();
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(one.stdout, many.stdout);
}
