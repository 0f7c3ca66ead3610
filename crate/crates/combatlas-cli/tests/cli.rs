use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use combatlas::atlas::atlas_to_json;
use combatlas::geometry::{af_atlas, family_atype};
use combatlas::matroid::{default_t_samples, matroid_atlas, Matroid, WeightProfile};
use serde_json::Value;
use tempfile::TempDir;

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_combatlas")).args(args).output().unwrap()
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut all = vec!["--format", "json"];
    all.extend_from_slice(args);
    let out = run(&all);
    let code = out.status.code().unwrap();
    let v = serde_json::from_slice(&out.stdout).unwrap_or_else(|_| panic!("stdout: {} stderr: {}", String::from_utf8_lossy(&out.stdout), String::from_utf8_lossy(&out.stderr)));
    (code, v)
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn check<'a>(report: &'a Value, prefix: &str) -> &'a Value {
    report["checks"].as_array().unwrap().iter().find(|c| c["name"].as_str().unwrap().starts_with(prefix)).unwrap()
}

const U24: &str = r#"{"n": 4, "kind": "bases", "sets": [[0,1],[0,2],[0,3],[1,2],[1,3],[2,3]]}"#;
const RECTS: &str = r#"{"dim": 2, "normals": [[1,0],[0,1],[-1,0],[0,-1]], "bodies": [{"name": "A", "offsets": [1,2,0,0]}, {"name": "B", "offsets": [3,1,0,0]}]}"#;

#[test]
fn mason_u24_is_an_equality() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "u24.json", U24);
    let (code, r) = json(&["mason", s(&f), "--k", "1", "--strong", "--atlas-route"]);
    assert_eq!(code, 0);
    assert_eq!(r["verdict"], true);
    assert_eq!(check(&r, "direct")["slack"], "0");
    assert_eq!(check(&r, "atlas:")["slack"], "0");
    assert_eq!(r["header"]["seed"], 0);
    assert_eq!(r["header"]["t_samples"].as_array().unwrap().len(), 5);
}

#[test]
fn recognize_rejects_the_witness_complex() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "non.json", r#"{"n": 4, "kind": "independent", "sets": [[0],[1],[2],[3],[0,1],[2,3]]}"#);
    let (code, r) = json(&["recognize", s(&f)]);
    assert_eq!(code, 1);
    assert_eq!(r["verdict"], false);
    let w = &check(&r, "sink hyperbolicity")["witness"];
    assert_eq!(w["matrix"], serde_json::json!([["0", "0", "0", "1"], ["0", "0", "1", "1"], ["0", "1", "0", "1"], ["1", "1", "1", "1"]]));
    assert_eq!(w["inertia"]["n_pos"], 2);
}

#[test]
fn lorentzian_witness_only_on_request() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "sq.json", r#"{"n": 2, "degree": 2, "terms": [{"coeff": "1", "exp": [2,0]}, {"coeff": "1", "exp": [0,2]}]}"#);
    let (code, r) = json(&["lorentzian", s(&f), "--witness"]);
    assert_eq!(code, 1);
    assert_eq!(check(&r, "Lorentzian")["witness"]["kind"], "support");
    let (_, r) = json(&["lorentzian", s(&f)]);
    assert!(check(&r, "Lorentzian")["witness"].is_null());
    assert_eq!(run(&["hessian", s(&f), "--at", "1,1"]).status.code(), Some(2));
}

#[test]
fn hessian_of_the_elementary_quadratic() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "e2.json", r#"{"n": 3, "degree": 2, "terms": [{"coeff": "1", "exp": [1,1,0]}, {"coeff": "1", "exp": [1,0,1]}, {"coeff": "1", "exp": [0,1,1]}]}"#);
    let (code, r) = json(&["hessian", s(&f), "--at", "1,1/2,3"]);
    assert_eq!(code, 0);
    assert_eq!(r["details"]["hessian"][0], serde_json::json!(["0", "1", "1"]));
    assert_eq!(run(&["hessian", s(&f), "--at", "1,1"]).status.code(), Some(2));
}

#[test]
fn mixvol_and_af_on_rectangles() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "rects.json", RECTS);
    let (code, r) = json(&["mixvol", s(&f), "--select", "A,B"]);
    assert_eq!(code, 0);
    assert!((r["details"]["mixed_volume"].as_f64().unwrap() - 3.5).abs() < 1e-12);
    let (code, r) = json(&["af", s(&f), "--A", "A", "--B", "B"]);
    assert_eq!(code, 0);
    assert!((check(&r, "direct")["slack"].as_f64().unwrap() - 6.25).abs() < 1e-9);
    assert_eq!(run(&["mixvol", s(&f), "--select", "A,C"]).status.code(), Some(2));
}

#[test]
fn af_needs_perturbation_for_different_normal_fans() {
    let dir = TempDir::new().unwrap();
    let f = write(
        &dir,
        "sd.json",
        r#"{"dim": 2, "normals": [[1,0],[0,1],[-1,0],[0,-1],[1,1],[-1,1],[-1,-1],[1,-1]],
            "bodies": [{"name": "S", "offsets": [1,1,1,1,2,2,2,2]}, {"name": "D", "offsets": [1,1,1,1,1,1,1,1]}]}"#,
    );
    let out = run(&["af", s(&f), "--A", "S", "--B", "D"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("--perturb"));
    let (code, r) = json(&["af", s(&f), "--A", "S", "--B", "D", "--perturb", "0.01"]);
    assert_eq!(code, 0);
    assert_eq!(r["details"]["perturbation"]["normals"], 8);
}

#[test]
fn bm_with_trace() {
    let dir = TempDir::new().unwrap();
    let a = write(&dir, "a.json", r#"{"bricks": [[0,2,0,1],[0,1,1,2]]}"#);
    let b = write(&dir, "b.json", r#"{"bricks": [[0,1,0,1]]}"#);
    let (code, r) = json(&["bm", s(&a), s(&b), "--trace"]);
    assert_eq!(code, 0);
    assert!(check(&r, "sqrt")["slack"].as_f64().unwrap() > 0.0);
    assert_eq!(check(&r, "split trace")["holds"], true);
    let (code, r) = json(&["bm", s(&b), s(&b)]);
    assert_eq!(code, 0);
    assert_eq!(check(&r, "equality")["holds"], true);
}

#[test]
fn atlas_verify_rational_and_float_files() {
    let dir = TempDir::new().unwrap();
    let ma = matroid_atlas(&Matroid::uniform(5, 3).unwrap(), 2, &WeightProfile::unweighted(), &default_t_samples()).unwrap();
    let f = write(&dir, "m.json", &atlas_to_json(&ma.atlas).to_string());
    let (code, r) = json(&["atlas", "verify", s(&f), "--all"]);
    assert_eq!(code, 0, "{r}");
    let (code, _) = json(&["atlas", "verify", s(&f), "--vertex", &ma.root]);
    assert_eq!(code, 0);

    let mut prism: Vec<Vec<f64>> = (0..6).map(|k| {
        let t = std::f64::consts::FRAC_PI_3 * k as f64;
        vec![t.cos(), t.sin(), 0.0]
    }).collect();
    prism.extend([vec![0.0, 0.0, 1.0], vec![0.0, 0.0, -1.0]]);
    let fam = family_atype(prism, vec![("P".into(), vec![1.0; 8])], 1e-9).unwrap();
    let af = af_atlas(&fam, &[0]).unwrap();
    let f = write(&dir, "af.json", &atlas_to_json(&af.atlas).to_string());
    let (code, _) = json(&["atlas", "verify", s(&f)]);
    assert_eq!(code, 1);
    let (code, r) = json(&["atlas", "verify", s(&f), "--allow-negative-diagonal"]);
    assert_eq!(code, 0, "{r}");
}

#[test]
fn input_errors_exit_with_two() {
    let dir = TempDir::new().unwrap();
    let bad = write(&dir, "bad.json", "{\"n\": 4,\n \"kind\": }");
    let out = run(&["recognize", s(&bad)]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));
    let schema = write(&dir, "schema.json", r#"{"n": 2, "kind": "independent", "sets": [[0], [5]]}"#);
    let out = run(&["recognize", s(&schema)]);
    assert!(String::from_utf8_lossy(&out.stderr).contains("$.sets[1][0]"));
    let u = write(&dir, "u24.json", U24);
    assert_eq!(run(&["mason", s(&u), "--k", "1", "--eps", "0"]).status.code(), Some(2));
    assert_eq!(run(&["mason", s(&u), "--k", "1", "--t-samples", "0,3/2"]).status.code(), Some(2));
    assert_eq!(run(&["mason", s(&u), "--k", "2"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["recognize", "missing.json"]).status.code(), Some(2));
}

#[test]
fn json_reports_are_reproducible() {
    let dir = TempDir::new().unwrap();
    let f = write(
        &dir,
        "sd.json",
        r#"{"dim": 2, "normals": [[1,0],[0,1],[-1,0],[0,-1],[1,1]], "bodies": [{"name": "S", "offsets": [1,1,0,0,2]}, {"name": "T", "offsets": [2,1,0,0,1.5]}]}"#,
    );
    let args = ["--format", "json", "--seed", "7", "af", s(&f), "--A", "S", "--B", "T", "--perturb", "0.1"];
    let first = run(&args);
    assert_eq!(first.status.code(), Some(0), "{}", String::from_utf8_lossy(&first.stderr));
    assert_eq!(first.stdout, run(&args).stdout);
}
