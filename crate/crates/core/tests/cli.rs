use std::process::{Command, Output};

use enriques_lattice::model::{build_model, RootLabel};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_enriques")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn g4_is_not_in_a_curve_orbit() {
    let o = run(&["classify", "curve", "G4"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("NotInCurveOrbit"));
    let o = run(&["--json", "classify", "curve", "G4"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["verdict"], "NotInCurveOrbit");
    assert_eq!(v["reason"], "DegreeNonPositive");
}

#[test]
fn hexagon_is_a_type_five_pencil() {
    let o = run(&["--json", "classify", "pencil", "E1+E12+E2+E23+E3+E13"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["type_index"], 5);
    assert_eq!(v["singular_fibers"], "2A5~+A2~+A1~");
    assert_eq!(v["mw_rank"], 0);
}

#[test]
fn coordinate_vectors_are_accepted() {
    let o = run(&["--json", "reduce", "2,2,2,-1,2,2,0,2,0,0"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["representative"], serde_json::json!(["0", "0", "0", "1", "0", "0", "0", "0", "0", "0"]));
    assert_eq!(v["word"], serde_json::json!(["s4"]));
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["classify", "curve", "1,2"]).status.code(), Some(2));
    assert_eq!(run(&["classify", "curve", "E9"]).status.code(), Some(2));
    assert_eq!(run(&["group", "normal-form", "s7"]).status.code(), Some(2));
    // wrong norm is a precondition failure
    assert_eq!(run(&["classify", "pencil", "E1"]).status.code(), Some(3));
    assert_eq!(run(&["enumerate", "--norm", "-4"]).status.code(), Some(3));
    assert_eq!(run(&["--model", "/nonexistent/model.json", "gram"]).status.code(), Some(3));
}

#[test]
fn corrupted_model_fails_verification() {
    let mut doc = build_model().unwrap().to_document();
    let (a, b) = (RootLabel::Vertex(1).index(), RootLabel::Vertex(2).index());
    doc.gram20[a][b] = 2;
    doc.gram20[b][a] = 2;
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(&path, doc.to_json()).unwrap();
    let o = run(&["--model", path.to_str().unwrap(), "verify", "--max-degree", "2", "--max-word-len", "1"]);
    assert_eq!(o.status.code(), Some(1), "{}", stdout(&o));
    assert!(stdout(&o).contains("FAIL"));
}

#[test]
fn csv_table_header() {
    let o = run(&["verify", "--csv", "--max-degree", "2", "--max-word-len", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("type,singular_fibers,mw_rank,count"));
    assert_eq!(lines.count(), 5);
}

#[test]
fn json_output_is_deterministic() {
    let args = ["--json", "verify", "--max-degree", "2", "--max-word-len", "1"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["summary"]["failed"], 0);
    assert_eq!(v["exit_status"], 0);
}

#[test]
fn group_commands() {
    let o = run(&["group", "multiply", "(1 2)", "s1", "(1 2)"]);
    assert_eq!(stdout(&o).trim(), "id s2");
    let o = run(&["group", "inverse", "(1 2 3) s1 s2"]);
    assert_eq!(o.status.code(), Some(0));
    let o = run(&["--json", "group", "faithfulness", "--max-word-len", "2"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["elements"], 24 * (1 + 4 + 12));
    assert_eq!(v["distinct_matrices"], v["elements"]);
}

#[test]
fn parabolic_listing() {
    let o = run(&["--json", "parabolics"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 29);
}

#[test]
fn closed_stdout_is_not_an_error() {
    let mut child = Command::new(env!("CARGO_BIN_EXE_enriques"))
        .args(["enumerate", "--norm", "-2", "--max-degree", "5"])
        .stdout(std::process::Stdio::piped())
        .stderr(std::process::Stdio::piped())
        .spawn()
        .unwrap();
    drop(child.stdout.take());
    let o = child.wait_with_output().unwrap();
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stderr.is_empty(), "{}", String::from_utf8_lossy(&o.stderr));
}
