use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use tempfile::tempdir;

fn uncolor(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_uncolor"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn gen_measure_verify_round_trip() {
    let dir = tempdir().unwrap();
    let g = dir.path().join("petersen.mg");
    assert!(uncolor(&["gen", "petersen", "-o", path(&g)])
        .status
        .success());
    let text = fs::read_to_string(&g).unwrap();
    assert!(text.contains("family=petersen"));
    assert!(text.lines().any(|l| l == "p 10 15"));

    let out = uncolor(&["measure", path(&g), "--all", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["schema"], 1);
    assert_eq!(report["chromatic_index"]["value"], 4);
    assert_eq!(report["resistance"]["value"], 2);
    assert_eq!(report["oddness"]["value"], 2);

    for key in ["chi", "r", "r-deletion", "rv", "rvp", "oddness"] {
        let cert = dir.path().join(format!("petersen.{key}.cert.json"));
        assert!(cert.exists(), "missing {key} certificate");
        let v = uncolor(&["verify", path(&g), path(&cert)]);
        assert_eq!(v.status.code(), Some(0), "{key}: {}", stdout(&v));
        assert!(stdout(&v).starts_with("PASS"));
    }
}

#[test]
fn tampered_certificate_fails() {
    let dir = tempdir().unwrap();
    let g = dir.path().join("k5.mg");
    assert!(uncolor(&["gen", "complete", "5", "-o", path(&g)])
        .status
        .success());
    assert_eq!(
        uncolor(&["measure", path(&g), "--chi", "--format", "table"])
            .status
            .code(),
        Some(0)
    );

    let cert = dir.path().join("k5.chi.cert.json");
    let mut v: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(&cert).unwrap()).unwrap();
    let colors = v["colors"].as_array_mut().unwrap();
    let first = colors[0].clone();
    colors[1] = first;
    fs::write(&cert, v.to_string()).unwrap();

    let out = uncolor(&["verify", path(&g), path(&cert)]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).starts_with("FAIL"));
}

#[test]
fn usage_and_parse_errors_exit_two() {
    let dir = tempdir().unwrap();
    let bad = dir.path().join("bad.mg");
    fs::write(&bad, "p 2 1\ne 0 0\n").unwrap();
    assert_eq!(uncolor(&["measure", path(&bad)]).status.code(), Some(2));
    assert_eq!(uncolor(&["gen", "complete"]).status.code(), Some(2));
    assert_eq!(uncolor(&["gen", "nonsense"]).status.code(), Some(2));
    let empty = tempdir().unwrap();
    assert_eq!(
        uncolor(&["survey", path(empty.path())]).status.code(),
        Some(2)
    );
}

#[test]
fn exhausted_budget_exits_three() {
    let dir = tempdir().unwrap();
    let g = dir.path().join("ok.mg");
    assert!(uncolor(&["gen", "ok", "1", "3", "-o", path(&g)])
        .status
        .success());
    let out = uncolor(&[
        "measure",
        path(&g),
        "--r",
        "--node-budget",
        "1",
        "--format",
        "table",
    ]);
    assert_eq!(out.status.code(), Some(3), "{}", stdout(&out));
}

#[test]
fn survey_sorts_rows_and_checks_invariants() {
    let dir = tempdir().unwrap();
    for (file, args) in [
        ("b-cycle.mg", vec!["cycle", "5"]),
        ("a-k4.mg", vec!["complete", "4"]),
        ("c-m4.mg", vec!["meredith", "4"]),
    ] {
        let mut full = vec!["gen"];
        full.extend(args);
        let p = dir.path().join(file);
        full.extend(["-o", path(&p)]);
        assert!(uncolor(&full).status.success());
    }
    let json = dir.path().join("rows.json");
    let out = uncolor(&["survey", path(dir.path()), "--json", path(&json)]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    let text = stdout(&out);
    let names: Vec<&str> = text
        .lines()
        .skip(1)
        .take(3)
        .map(|l| l.split_whitespace().next().unwrap())
        .collect();
    assert_eq!(names, ["a-k4", "b-cycle", "c-m4"]);
    assert!(text.contains("3 graphs, 0 with violations"));
    let rows: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(&json).unwrap()).unwrap();
    assert_eq!(rows.as_array().unwrap().len(), 3);
}

#[test]
fn join2_reads_its_inputs() {
    let dir = tempdir().unwrap();
    let p = dir.path().join("p.mg");
    let j = dir.path().join("j.mg");
    assert!(uncolor(&["gen", "petersen", "-o", path(&p)])
        .status
        .success());
    assert!(
        uncolor(&["gen", "join2", path(&p), "0", path(&p), "0", "-o", path(&j)])
            .status
            .success()
    );
    assert!(fs::read_to_string(&j)
        .unwrap()
        .lines()
        .any(|l| l == "p 20 30"));
}
