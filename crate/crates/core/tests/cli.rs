use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

const M1: &str = r#"{"worlds":["r","a","b"],"root":"r","edges":[["r","a"],["a","b"]],"valuation":{"p":["b"]}}"#;
const TREE: &str = r#"{"worlds":["r","a","b"],"root":"r","edges":[["r","a"],["r","b"]],"valuation":{"p":["a"]}}"#;
const POINT: &str = r#"{"worlds":["w"],"root":"w","edges":[["w","w"]],"valuation":{}}"#;

fn densify(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_densify")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("{e}: {}", String::from_utf8_lossy(&out.stdout));
    })
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn parse_and_model_check() {
    let out = densify(&["parse", "--formula", "<> <> p -> <> <> <> p"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["formula"], "<><>p -> <><><>p");
    assert_eq!(v["modal_depth"], 3);

    let bad = densify(&["parse", "--formula", "p & "]);
    assert_eq!(bad.status.code(), Some(4));
    assert!(String::from_utf8_lossy(&bad.stderr).contains("byte"));

    let dir = tempfile::tempdir().unwrap();
    let m1 = write(dir.path(), "m1.json", M1);
    assert_eq!(json(&densify(&["mc", "--model", &m1, "--formula", "<><>p"]))["holds"], true);
    assert_eq!(json(&densify(&["mc", "--model", &m1, "--formula", "<><><>p"]))["holds"], false);
    assert_eq!(json(&densify(&["mc", "--model", &m1, "--world", "a", "--formula", "<>p"]))["holds"], true);
}

#[test]
fn frame_check_and_saturate() {
    let dir = tempfile::tempdir().unwrap();
    let m1 = write(dir.path(), "m1.json", M1);
    let out = densify(&["frame-check", "--model", &m1, "--axioms", "2>3"]);
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(json(&out)["violations"]["2>3"], serde_json::json!([["r", "b"]]));

    let sat = dir.path().join("sat.json");
    let out = densify(&["saturate", "--model", &m1, "--axioms", "2>3", "--out", sat.to_str().unwrap()]);
    assert!(out.status.success());
    let out = densify(&["frame-check", "--model", sat.to_str().unwrap(), "--axioms", "2>3"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn unravel_map_verifies() {
    let dir = tempfile::tempdir().unwrap();
    let m1 = write(dir.path(), "m1.json", M1);
    let tree = dir.path().join("tree.json");
    let map = dir.path().join("map.json");
    let out = densify(&[
        "unravel",
        "--model",
        &m1,
        "--bound",
        "2",
        "--out",
        tree.to_str().unwrap(),
        "--map-out",
        map.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let out = densify(&[
        "verify-pmorphism",
        "--source",
        tree.to_str().unwrap(),
        "--target",
        &m1,
        "--map",
        map.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));

    let point = write(dir.path(), "point.json", POINT);
    let constant = write(dir.path(), "const.json", r#"{"map":{"r":"w","a":"w","b":"w"}}"#);
    let out = densify(&["verify-pmorphism", "--source", &m1, "--target", &point, "--map", &constant]);
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(json(&out)["report"]["back"][0]["source"], "b");
}

#[test]
fn bisim_table() {
    let dir = tempfile::tempdir().unwrap();
    let m1 = write(dir.path(), "m1.json", M1);
    let v = json(&densify(&["bisim", "--left", &m1, "--right", &m1, "--k", "1", "--vars", "p"]));
    let level1 = v["levels"][1].as_array().unwrap();
    assert_eq!(level1.len(), 3);
    let v = json(&densify(&["bisim", "--left", &m1, "--right", &m1]));
    assert_eq!(v["bisimilar_roots"], true);
}

#[test]
fn repair_exit_codes_and_census() {
    let dir = tempfile::tempdir().unwrap();
    let point = write(dir.path(), "point.json", POINT);
    let state = dir.path().join("state.json");
    let out = densify(&[
        "repair",
        "--model",
        &point,
        "--axioms",
        "2>3",
        "--budget",
        "2",
        "--max-steps",
        "3",
        "--out",
        state.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2));
    let table = String::from_utf8_lossy(&out.stdout);
    assert!(table.starts_with("defect"), "{table}");
    assert!(table.contains("total"));
    let saved: Value = serde_json::from_str(&std::fs::read_to_string(&state).unwrap()).unwrap();
    assert_eq!(saved["status"], "truncated");
    assert_eq!(saved["steps"], 3);

    let tree = write(dir.path(), "tree.json", TREE);
    let out = densify(&["repair", "--model", &tree, "--axioms", "2>3", "--budget", "2"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["status"], "saturated");

    let m1 = write(dir.path(), "m1.json", M1);
    let out = densify(&["repair", "--model", &m1, "--axioms", "2>3", "--budget", "2"]);
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn conditions_and_filtration() {
    let dir = tempfile::tempdir().unwrap();
    let point = write(dir.path(), "point.json", POINT);
    let out = densify(&["verify-conditions", "--model", &point, "--axioms", "2>3", "--k", "2"]);
    assert_eq!(out.status.code(), Some(3));
    let out = densify(&["verify-conditions", "--model", &point, "--axioms", "2>3", "--k", "0"]);
    assert_eq!(out.status.code(), Some(0));

    let tree = write(dir.path(), "tree.json", TREE);
    let quotient = dir.path().join("q.json");
    let report = dir.path().join("r.json");
    let out = densify(&[
        "filtrate",
        "--model",
        &tree,
        "--formula",
        "<>p",
        "--axioms",
        "2>3",
        "--out",
        quotient.to_str().unwrap(),
        "--report",
        report.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let r: Value = serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(r["ok"], true);
    let out = densify(&["mc", "--model", quotient.to_str().unwrap(), "--formula", "<>p"]);
    assert_eq!(json(&out)["holds"], true);

    let m1 = write(dir.path(), "m1.json", M1);
    let out = densify(&["filtrate", "--model", &m1, "--formula", "<><>p", "--axioms", "2>3", "--report", report.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    let r: Value = serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert!(r["precondition"].as_str().unwrap().contains("\"r\""));
}

#[test]
fn pipeline_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let tree = write(dir.path(), "tree.json", TREE);
    let out = densify(&["pipeline", "--model", &tree, "--formula", "<>p & <>~p", "--axioms", "2>3"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["quotient"]["root_satisfies"], true);

    let point = write(dir.path(), "point.json", POINT);
    let out = densify(&["pipeline", "--model", &point, "--formula", "<><>q", "--axioms", "2>3", "--max-steps", "2"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json(&out)["outcome"]["status"], "truncated");

    let bad = write(dir.path(), "bad.json", "{\"worlds\": [\"r\"],\n \"root\": ");
    let out = densify(&["pipeline", "--model", &bad, "--formula", "p", "--axioms", "2>3"]);
    assert_eq!(out.status.code(), Some(4));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));
}

#[test]
fn sat_oracle_command() {
    let v = json(&densify(&["sat", "--formula", "p", "--axioms", "2>3", "--max-size", "1"]));
    assert_eq!(v["satisfiable"], true);
    assert_eq!(v["model"]["valuation"]["p"], serde_json::json!(["w0"]));
    let v = json(&densify(&["sat", "--formula", "false", "--axioms", "2>3", "--max-size", "3"]));
    assert_eq!(v["satisfiable"], false);
    let out = densify(&["sat", "--formula", "p", "--axioms", "2>3", "--max-size", "6"]);
    assert_eq!(out.status.code(), Some(4));
}
