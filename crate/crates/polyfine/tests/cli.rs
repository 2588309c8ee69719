//! Exercises the binary end to end: output formats, exit codes and
//! batch error handling.

mod common;

use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_polyfine"))
}

fn corpus(name: &str) -> std::path::PathBuf {
    common::corpus_dir().join(format!("{name}.poly"))
}

#[test]
fn analyze_json_schema() {
    let out = bin()
        .args(["analyze", corpus("parallelepiped").to_str().unwrap()])
        .output()
        .expect("spawn");
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).expect("json");
    let keys: Vec<&str> = v.as_object().unwrap().keys().map(|k| k.as_str()).collect();
    assert_eq!(
        keys,
        vec![
            "name",
            "dim",
            "fine_interior",
            "support",
            "canonical_hull",
            "flags",
            "kodaira",
            "canonical_degree",
            "surface",
            "fibration",
            "codim2_ok",
            "lambda0",
            "lambda_closed_interval",
        ]
    );
    assert_eq!(v["dim"], 3);
    assert_eq!(v["fine_interior"]["vertices"][0][0], "1/2");
    assert_eq!(v["lambda0"], "1");
}

#[test]
fn analyze_text_output() {
    let out = bin()
        .args(["analyze", corpus("cube").to_str().unwrap(), "--text", "--no-thresholds"])
        .output()
        .expect("spawn");
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("kodaira"));
    assert!(text.contains("-inf"));
}

#[test]
fn missing_file_is_input_error() {
    let out = bin()
        .args(["analyze", "/nonexistent/nowhere.poly"])
        .output()
        .expect("spawn");
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn malformed_file_is_input_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.poly");
    std::fs::write(&path, "V 2 3\n0 0\n1 0\n").unwrap(); // missing a row
    let out = bin()
        .args(["analyze", path.to_str().unwrap()])
        .output()
        .expect("spawn");
    assert_eq!(out.status.code(), Some(1));

    std::fs::write(&path, "V 2 2\n0 0\n1 0\n").unwrap(); // not full-dim
    let out = bin()
        .args(["analyze", path.to_str().unwrap()])
        .output()
        .expect("spawn");
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn oracle_reports_equal() {
    let out = bin()
        .args(["oracle", corpus("parallelepiped").to_str().unwrap(), "--radius", "2"])
        .output()
        .expect("spawn");
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("EQUAL"), "got: {text}");
}

#[test]
fn batch_tolerates_bad_files() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::copy(corpus("diamond"), dir.path().join("diamond.poly")).unwrap();
    std::fs::write(dir.path().join("broken.poly"), "garbage\n").unwrap();
    let out_path = dir.path().join("out.jsonl");
    let out = bin()
        .args([
            "batch",
            dir.path().to_str().unwrap(),
            "--out",
            out_path.to_str().unwrap(),
        ])
        .output()
        .expect("spawn");
    assert!(out.status.success());
    let lines: Vec<String> = std::fs::read_to_string(&out_path)
        .unwrap()
        .lines()
        .map(String::from)
        .collect();
    assert_eq!(lines.len(), 3); // broken + diamond + summary
    let broken: serde_json::Value = serde_json::from_str(&lines[0]).unwrap();
    assert_eq!(broken["name"], "broken");
    assert!(broken["error"].is_string());
    let summary: serde_json::Value = serde_json::from_str(&lines[2]).unwrap();
    assert_eq!(summary["summary"]["total"], 2);
    assert_eq!(summary["summary"]["errors"], 1);
}
