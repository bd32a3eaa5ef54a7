use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_honeycomb")).args(args).output().expect("binary runs")
}

fn path(dir: &TempDir, name: &str) -> PathBuf {
    dir.path().join(name)
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn fractional_vertex_then_vertex_check() {
    let dir = TempDir::new().unwrap();
    let (g, h, f) = (path(&dir, "g.json"), path(&dir, "h.json"), path(&dir, "f.json"));
    let out = run(&["gen", "--kind", "fractional-vertex", "--k", "3", "--grid", s(&g), "--out", s(&h), "--fixed", s(&f)]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let out = run(&["vertex-check", "--grid", s(&g), "--in", s(&h), "--fixed", s(&f)]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_json(&out)["vertex"], Value::Bool(true));
}

#[test]
fn malformed_grid_exits_3_with_json_error() {
    let dir = TempDir::new().unwrap();
    let g = path(&dir, "g.json");
    std::fs::write(&g, "{\"triangles\": [ {\"up\": 1} ]").unwrap();
    let out = run(&["validate", "--grid", s(&g)]);
    assert_eq!(out.status.code(), Some(3));
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["error"], "Parse");
}

#[test]
fn missing_file_exits_3() {
    let out = run(&["validate", "--grid", "/nonexistent/grid.json"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn non_concave_input_exits_2() {
    let dir = TempDir::new().unwrap();
    let (g, h) = (path(&dir, "g.json"), path(&dir, "h.json"));
    std::fs::write(&g, r#"{"triangles":[{"up":true,"a":0,"b":0},{"up":false,"a":0,"b":0}]}"#).unwrap();
    // Rhombus with a convex bend across the shared edge.
    std::fs::write(
        &h,
        r#"{"edges":[
            {"a":0,"b":0,"dir":1,"value":"1/1"},
            {"a":1,"b":0,"dir":2,"value":"0/1"},
            {"a":1,"b":1,"dir":3,"value":"-1/1"},
            {"a":0,"b":1,"dir":1,"value":"-1/1"},
            {"a":0,"b":0,"dir":2,"value":"2/1"}]}"#,
    )
    .unwrap();
    let out = run(&["validate", "--grid", s(&g), "--in", s(&h)]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_json(&out)["concave"], false);
    let out = run(&["integralize", "--grid", s(&g), "--in", s(&h)]);
    assert_eq!(out.status.code(), Some(2));
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["error"], "NotConcave");
}

#[test]
fn unknown_subcommand_exits_64() {
    assert_eq!(run(&["frobnicate"]).status.code(), Some(64));
}

#[test]
fn integralize_counterexample_pipeline() {
    let dir = TempDir::new().unwrap();
    let (g, h, o, t) = (path(&dir, "g.json"), path(&dir, "h.json"), path(&dir, "o.json"), path(&dir, "t.jsonl"));
    assert!(run(&["gen", "--kind", "counterexample", "--grid", s(&g), "--out", s(&h)]).status.success());
    let out = run(&["integralize", "--grid", s(&g), "--in", s(&h), "--out", s(&o), "--trace", s(&t)]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let out = run(&["validate", "--grid", s(&g), "--in", s(&o)]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["integral"], true);
    assert_eq!(v["concave"], true);
    let trace = std::fs::read_to_string(&t).unwrap();
    assert!(!trace.is_empty());
    for line in trace.lines() {
        let step: Value = serde_json::from_str(line).unwrap();
        assert!(step["after"]["eta"].as_i64() < step["before"]["eta"].as_i64());
    }
}

#[test]
fn dualize_round_trip_through_files() {
    let dir = TempDir::new().unwrap();
    let (g, h, hc, g2, h2) =
        (path(&dir, "g"), path(&dir, "h"), path(&dir, "hc"), path(&dir, "g2"), path(&dir, "h2"));
    assert!(run(&["gen", "--kind", "random", "--n", "4", "--seed", "7", "--grid", s(&g), "--out", s(&h)])
        .status
        .success());
    assert!(run(&["dualize", "--to", "honeycomb", "--grid", s(&g), "--in", s(&h), "--out", s(&hc)]).status.success());
    let out = run(&["validate", "--kind", "honeycomb", "--in", s(&hc)]);
    assert_eq!(out.status.code(), Some(0));
    assert!(run(&["dualize", "--to", "grid", "--in", s(&hc), "--grid", s(&g2), "--out", s(&h2)]).status.success());
    assert_eq!(std::fs::read_to_string(&g).unwrap(), std::fs::read_to_string(&g2).unwrap());
    assert_eq!(std::fs::read_to_string(&h).unwrap(), std::fs::read_to_string(&h2).unwrap());
}

#[test]
fn legal_path_and_deform_on_hexagon() {
    let dir = TempDir::new().unwrap();
    let (g, h, hc, d, t) = (path(&dir, "g"), path(&dir, "h"), path(&dir, "hc"), path(&dir, "d"), path(&dir, "t"));
    assert!(run(&["gen", "--kind", "hexagon", "--k", "2", "--grid", s(&g), "--out", s(&h)]).status.success());
    assert!(run(&["dualize", "--to", "honeycomb", "--grid", s(&g), "--in", s(&h), "--out", s(&hc)]).status.success());
    let out = run(&["legal-path", "--in", s(&hc)]);
    assert_eq!(out.status.code(), Some(0));
    assert!(!stdout_json(&out)["edges"].as_array().unwrap().is_empty());
    for dir_flag in ["right", "left"] {
        let out = run(&["deform", "--in", s(&hc), "--direction", dir_flag, "--out", s(&d), "--trace", s(&t)]);
        assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
        assert_eq!(run(&["validate", "--kind", "honeycomb", "--in", s(&d)]).status.code(), Some(0));
    }
}

#[test]
fn deterministic_output() {
    let a = run(&["gen", "--kind", "random", "--n", "3", "--seed", "11"]);
    let b = run(&["gen", "--kind", "random", "--n", "3", "--seed", "11"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn selftest_passes() {
    let out = run(&["selftest"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().all(|l| l.starts_with("PASS")));
}
