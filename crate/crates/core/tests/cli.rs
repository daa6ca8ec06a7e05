use std::path::{Path, PathBuf};

use eigentwist::cli::main_with;
use eigentwist::coordinates::EdgeParams;
use eigentwist::fixtures;
use eigentwist::C64;
use serde_json::Value;

fn run(args: &[&str]) -> (Value, String, i32) {
    let mut full = vec!["eigentwist"];
    full.extend_from_slice(args);
    let (out, err, code) = main_with(full);
    let v = if out.is_empty() { Value::Null } else { serde_json::from_str(&out).expect("stdout is JSON") };
    (v, err, code)
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn one_holed_params() -> EdgeParams {
    EdgeParams {
        eigen: [(1, C64::new(1.5, 0.7)), (2, C64::new(-2.2, 0.3))].into(),
        twist: [(1, C64::new(0.8, -1.1))].into(),
    }
}

#[test]
fn example_genus_two_emits_surface_params_and_matrices() {
    let (v, _, code) = run(&["example", "genus2"]);
    assert_eq!(code, 0);
    assert_eq!(v["surface"]["genus"], 2);
    assert_eq!(v["surface"]["vertices"].as_array().unwrap().len(), 2);
    let gens = v["representation"]["generators"].as_object().unwrap();
    for g in ["alpha1", "alpha2", "beta1", "beta2"] {
        assert!(gens.contains_key(g), "{g}");
    }
    for r in v["representation"]["relations"].as_array().unwrap() {
        assert!(r["residual"].as_f64().unwrap() < 1e-9);
    }
}

#[test]
fn sample_on_genus_two_passes_every_point() {
    let (v, _, code) = run(&["sample", "--fixture", "genus2", "--n", "100", "--seed", "7"]);
    assert_eq!(code, 0);
    assert_eq!(v["passed"], 100);
    assert!(v["max_residual"].as_f64().unwrap() < 1e-9);
    let (w, _, _) = run(&["sample", "--fixture", "genus2", "--n", "20", "--seed", "3", "--mode", "fuchsian"]);
    assert_eq!(w["passed"], 20);
}

#[test]
fn output_is_deterministic() {
    let a = main_with(["eigentwist", "sample", "--fixture", "four-holed", "--n", "10", "--seed", "11"]);
    let b = main_with(["eigentwist", "sample", "--fixture", "four-holed", "--n", "10", "--seed", "11"]);
    assert_eq!(a, b);
    let c = main_with(["eigentwist", "example", "one-holed", "--seed", "4"]);
    let d = main_with(["eigentwist", "example", "one-holed", "--seed", "4"]);
    assert_eq!(c, d);
}

#[test]
fn malformed_graph_exits_with_schema_status() {
    let dir = tempfile::tempdir().unwrap();
    let mut surface: Value = serde_json::from_str(&fixtures::four_holed().to_json()).unwrap();
    surface["vertices"][0]["incident"].as_array_mut().unwrap().pop();
    let path = write(dir.path(), "bad.json", &surface.to_string());
    let (v, _, code) = run(&["validate", "--surface", s(&path)]);
    assert_eq!(code, 2);
    assert_eq!(v["valid"], false);
    assert!(!v["violations"].as_array().unwrap().is_empty());

    let garbage = write(dir.path(), "garbage.json", "{\"genus\": \"two\"}");
    let (_, err, code) = run(&["validate", "--surface", s(&garbage)]);
    assert_eq!(code, 2);
    let diag: Value = serde_json::from_str(&err).unwrap();
    assert_eq!(diag["error"], "schema");
}

#[test]
fn domain_and_degeneracy_statuses() {
    let dir = tempfile::tempdir().unwrap();
    let mut p = one_holed_params();
    p.eigen.insert(2, C64::new(1.0, 0.0));
    let bad = write(dir.path(), "p.json", &p.to_json());
    let (_, err, code) = run(&["validate", "--fixture", "one-holed", "--params", s(&bad)]);
    assert_eq!(code, 3, "{err}");

    // t₁e₁² = −1 is a pole of the shear-bend conversion
    let mut q = one_holed_params();
    q.eigen.insert(1, C64::new(2.0, 0.0));
    q.twist.insert(1, C64::new(-0.25, 0.0));
    let pole = write(dir.path(), "q.json", &q.to_json());
    let (_, err, code) = run(&["shearbend", "--params", s(&pole)]);
    assert_eq!(code, 4);
    let diag: Value = serde_json::from_str(&err).unwrap();
    assert_eq!(diag["factor"], "t1 e1^2 + 1");
}

#[test]
fn generators_round_trip_through_recover() {
    let dir = tempfile::tempdir().unwrap();
    let params = write(dir.path(), "p.json", &one_holed_params().to_json());
    let gens = dir.path().join("g.json");
    let (_, _, code) = run(&["generators", "--fixture", "one-holed", "--params", s(&params), "--out", s(&gens)]);
    assert_eq!(code, 0);
    let (v, _, code) = run(&["recover", "--fixture", "one-holed", "--generators", s(&gens)]);
    assert_eq!(code, 0);
    let got: EdgeParams = serde_json::from_value(v["params"].clone()).unwrap();
    // principal branch: |e| > 1 already holds for these inputs
    assert!(got.max_rel_diff(&one_holed_params()) < 1e-8);
    let (v, _, _) = run(&["recover", "--fixture", "one-holed", "--params", s(&params)]);
    assert_eq!(v["pass"], true);
}

#[test]
fn traces_default_and_explicit_words() {
    let dir = tempfile::tempdir().unwrap();
    let params = write(dir.path(), "p.json", &one_holed_params().to_json());
    let (v, _, _) = run(&["traces", "--fixture", "one-holed", "--params", s(&params)]);
    let rows = v["traces"].as_array().unwrap();
    assert_eq!(rows[0]["word"], "alpha1");
    let e1 = C64::new(1.5, 0.7);
    let chi = e1 + 1.0 / e1;
    let tr = &rows[0]["trace"];
    assert!((C64::new(tr[0].as_f64().unwrap(), tr[1].as_f64().unwrap()) - chi).norm() < 1e-12);
    let (v, _, _) = run(&["traces", "--fixture", "one-holed", "--params", s(&params), "--word", "alpha1 beta1^-1"]);
    assert_eq!(v["traces"].as_array().unwrap().len(), 1);
    let (_, _, code) = run(&["traces", "--fixture", "one-holed", "--params", s(&params), "--word", "beta7"]);
    assert_eq!(code, 2);
}

#[test]
fn act_and_move_commands() {
    let dir = tempfile::tempdir().unwrap();
    let params = write(dir.path(), "p.json", &one_holed_params().to_json());
    let (v, _, code) = run(&["act", "--fixture", "one-holed", "--params", s(&params), "--epsilon", "1"]);
    assert_eq!(code, 0, "a loop edge appears twice at its vertex");
    assert_eq!(v["params"]["eigen"]["1"][0], -1.5);
    let (_, _, code) = run(&["act", "--fixture", "one-holed", "--params", s(&params), "--epsilon", "2"]);
    assert_eq!(code, 3);
    let (_, _, code) = run(&["act", "--fixture", "one-holed", "--params", s(&params), "--flip", "2"]);
    assert_eq!(code, 0);
    let (v, _, code) = run(&["move", "--fixture", "one-holed", "--params", s(&params), "--kind", "dehn-right", "--target", "1"]);
    assert_eq!(code, 0);
    assert!(v["params"]["twist"]["1"].is_array());
    let (_, _, code) = run(&[
        "move", "--fixture", "one-holed", "--params", s(&params), "--kind", "one-holed", "--target", "1", "--branch", "-1.3,0.2",
    ]);
    assert_eq!(code, 0);
    let (_, _, code) = run(&["move", "--fixture", "one-holed", "--params", s(&params), "--kind", "four-holed", "--target", "1"]);
    assert_eq!(code, 3);
}

#[test]
fn fenchel_nielsen_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let p = EdgeParams {
        eigen: [(1, C64::new(-2.0, 0.0)), (2, C64::new(-3.0, 0.0))].into(),
        twist: [(1, C64::new(1.7, 0.0))].into(),
    };
    let params = write(dir.path(), "p.json", &p.to_json());
    let (v, _, code) = run(&["fn", "--fixture", "one-holed", "--params", s(&params)]);
    assert_eq!(code, 0);
    assert_eq!(v["convention"], "perpendicular-midpoint");
    let fnp = write(dir.path(), "fn.json", &v["fn_params"].to_string());
    let (w, _, code) = run(&["fn", "--fixture", "one-holed", "--params", s(&fnp), "--inverse"]);
    assert_eq!(code, 0);
    let back: EdgeParams = serde_json::from_value(w["params"].clone()).unwrap();
    assert!(back.max_rel_diff(&p) < 1e-10);
}

#[test]
fn shearbend_reports_the_cross_check() {
    let dir = tempfile::tempdir().unwrap();
    let params = write(dir.path(), "p.json", &one_holed_params().to_json());
    let (v, _, code) = run(&["shearbend", "--params", s(&params)]);
    assert_eq!(code, 0);
    assert_eq!(v["trace_check"]["pass"], true);
    let (v, _, code) = run(&["shearbend", "--pants", "-2,0", "--pants", "-3,0.5", "--pants", "1.5,-1"]);
    assert_eq!(code, 0);
    assert_eq!(v["edge_params"].as_array().unwrap().len(), 3);
    let (_, _, code) = run(&["shearbend", "--pants", "-2,0"]);
    assert_eq!(code, 2);
}
