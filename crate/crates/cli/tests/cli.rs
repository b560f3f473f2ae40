use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn homotope(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_homotope")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn write_matrix(dir: &Path, name: &str, body: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, body).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn axioms_with_no_samples_is_an_empty_pass() {
    let out = homotope(&["axioms", "--family", "2.b", "--n", "2", "--samples", "0"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["report"]["samples"], Value::Array(vec![]));
    assert_eq!(v["report"]["all_pass"], Value::Bool(true));
}

#[test]
fn axioms_reports_each_sample() {
    let out = homotope(&["axioms", "--family", "1.b'", "--p", "2", "--q", "1", "--samples", "3", "--seed", "5"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let samples = v["report"]["samples"].as_array().unwrap();
    assert_eq!(samples.len(), 3);
    for s in samples {
        assert_eq!(s["pass"], Value::Bool(true));
        assert_eq!(s["lts"].as_array().unwrap().len(), 3);
    }
}

#[test]
fn twisted_family_takes_four_sizes() {
    let out = homotope(&["axioms", "--family", "tw-1", "--sizes", "1,2,2,1", "--samples", "2"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let out = homotope(&["axioms", "--family", "tw-1", "--sizes", "1,2", "--samples", "2"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn zero_size_is_a_usage_error() {
    let out = homotope(&["table", "--construction", "quat2", "--n", "0"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
}

#[test]
fn unknown_labels_and_rings_are_usage_errors() {
    assert_eq!(homotope(&["axioms", "--family", "9.z", "--n", "1"]).status.code(), Some(2));
    assert_eq!(homotope(&["axioms", "--family", "1.3.a", "--n", "1", "--ring", "Q"]).status.code(), Some(2));
    assert_eq!(homotope(&["table", "--construction", "nope", "--n", "1"]).status.code(), Some(2));
    assert_eq!(homotope(&["group", "--check", "nope"]).status.code(), Some(2));
    assert_eq!(homotope(&["group", "--ring", "HQ", "--n", "1"]).status.code(), Some(2));
}

#[test]
fn quat1_eigenspace_dims() {
    let out = homotope(&["eigenspaces", "--construction", "quat1", "--n", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["dims"], serde_json::json!([1, 2, 0, 1]));
    assert_eq!(v["direct_sum"], Value::Bool(true));
}

#[test]
fn table_json_and_markdown() {
    let out = homotope(&["table", "--construction", "proj", "--p", "1", "--q", "1", "--samples", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["cells"].as_array().unwrap().len(), 16);
    let out = homotope(&["table", "--construction", "proj", "--p", "1", "--q", "1", "--samples", "2", "--format", "md"]);
    assert_eq!(out.status.code(), Some(0));
    let md = String::from_utf8(out.stdout).unwrap();
    assert_eq!(md.lines().filter(|l| l.starts_with("| (")).count(), 4);
}

#[test]
fn group_checks_pass() {
    for check in ["axioms", "homomorphism", "tangent", "membership", "linearization", "all"] {
        let out = homotope(&["group", "--check", check, "--n", "2", "--samples", "4", "--seed", "3"]);
        assert_eq!(out.status.code(), Some(0), "{check}");
    }
    let out = homotope(&["group", "--n", "1", "--ring", "QI", "--samples", "4"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["all_pass"], Value::Bool(true));
}

#[test]
fn normal_form_from_file() {
    let dir = tempfile::tempdir().unwrap();
    let skew = write_matrix(dir.path(), "skew.json", r#"{"rows":2,"cols":2,"ring":"Q","entries":[["0","3"],["-3","0"]]}"#);
    let out = homotope(&["normal-form", "--kind", "skew", "--input", &skew]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["identity_verified"], Value::Bool(true));
    assert_eq!(v["isomorphism_verified"], Value::Bool(true));
    assert_eq!(v["a_nf"]["entries"], serde_json::json!([["0", "1"], ["-1", "0"]]));

    let herm = write_matrix(dir.path(), "herm.json", r#"{"rows":2,"cols":2,"ring":"QI","entries":[["1","0+1i"],["0-1i","2"]]}"#);
    let out = homotope(&["normal-form", "--kind", "hermitian", "--input", &herm]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));

    let out = homotope(&["normal-form", "--kind", "symmetric", "--input", &skew]);
    assert_eq!(out.status.code(), Some(2));
    let bad = write_matrix(dir.path(), "bad.json", "{not json");
    assert_eq!(homotope(&["normal-form", "--kind", "skew", "--input", &bad]).status.code(), Some(2));
    let missing = dir.path().join("missing.json");
    assert_eq!(homotope(&["normal-form", "--kind", "skew", "--input", missing.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn out_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("catalog.json");
    let out = homotope(&["list-families", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 55);
}

#[test]
fn list_families_markdown_has_one_row_per_family() {
    let out = homotope(&["list-families", "--format", "md"]);
    let md = String::from_utf8(out.stdout).unwrap();
    assert_eq!(md.lines().count(), 2 + 55);
}
