use std::f64::consts::{FRAC_1_SQRT_2, PI};
use std::process::{Command, Output};

fn bandcert(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bandcert")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> (serde_json::Value, Output) {
    let o = bandcert(args);
    (serde_json::from_str(&stdout(&o)).unwrap(), o)
}

fn csv_rows(text: &str) -> Vec<Vec<f64>> {
    text.lines().skip(1).map(|l| l.split(',').map(|x| x.parse().unwrap()).collect()).collect()
}

#[test]
fn analyze_pendant_json() {
    let (v, o) = json(&["analyze", "--builtin", "z_pendant", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(v["beta"], "2/3");
    assert_eq!(v["all_passed"], true);
    let gap = &v["omega_gaps"][0];
    assert!((gap["lo"].as_f64().unwrap() - 1.230959).abs() < 1e-6);
    assert!((gap["hi"].as_f64().unwrap() - 1.910633).abs() < 1e-6);
    let checks = v["certification"]["checks"].as_array().unwrap();
    assert!(checks.iter().all(|c| c["status"] != "fail"));
}

#[test]
fn analyze_triangular_json() {
    let (v, o) = json(&["analyze", "--builtin", "triangular", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(v["classification"]["precise_point"].is_null());
    assert_eq!(v["pi_flat_band"], "in_gap");
}

#[test]
fn json_output_round_trips() {
    let o = bandcert(&["analyze", "--builtin", "c4_pendant_chain", "--format", "json"]);
    let text = stdout(&o);
    let report = bandcert::report::SpectrumReport::from_json(&text).unwrap();
    assert_eq!(report.to_json() + "\n", text);
}

#[test]
fn text_matches_json() {
    let (v, _) = json(&["analyze", "--builtin", "z_two_pendants", "--format", "json"]);
    let text = stdout(&bandcert(&["analyze", "--builtin", "z_two_pendants"]));
    for g in v["omega_gaps"].as_array().unwrap() {
        assert!(text.contains(&format!("{:.9}", g["lo"].as_f64().unwrap())));
        assert!(text.contains(&format!("{:.9}", g["hi"].as_f64().unwrap())));
    }
    assert!(text.contains("β = 1/2"));
}

#[test]
fn missing_file_is_an_input_error() {
    let o = bandcert(&["analyze", "missing.graph"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("missing.graph"));
}

#[test]
fn bad_input_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("bad.graph");
    std::fs::write(&p, "dim 1\nvertex a\nedge a b 1\n").unwrap();
    let o = bandcert(&["analyze", "--file", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("undeclared vertex b"));
    for args in [
        &["analyze", "--builtin", "nope"][..],
        &["analyze", "--builtin", "z1_lattice", "--zmax", "-1"],
        &["analyze", "--builtin", "z1_lattice", "--format", "xml"],
        &["analyze"],
        &["frobnicate"],
    ] {
        assert_eq!(bandcert(args).status.code(), Some(1), "{args:?}");
    }
}

#[test]
fn graph_file_input() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("pendant.graph");
    std::fs::write(&p, "# pendant chain\ndim 1\nvertex a\nvertex p\nedge a a 1\nedge a p 0\n").unwrap();
    let (v, o) = json(&["analyze", p.to_str().unwrap(), "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(v["beta"], "2/3");
}

#[test]
fn bands_lattice_sweep() {
    let o = bandcert(&["bands", "--builtin", "z1_lattice", "--path", "0;pi", "--samples", "5"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(text.lines().next().unwrap(), "s,theta1,lambda1");
    let rows = csv_rows(&text);
    let want = [-1.0, -FRAC_1_SQRT_2, 0.0, FRAC_1_SQRT_2, 1.0];
    assert_eq!(rows.len(), 5);
    for (r, w) in rows.iter().zip(want) {
        assert!((r[2] - w).abs() < 1e-12);
    }
}

#[test]
fn bands_hexagonal_dirac_point() {
    let o = bandcert(&["bands", "--builtin", "hexagonal", "--path", "0,0;2pi/3,4pi/3;pi,pi", "--samples", "9"]);
    assert_eq!(o.status.code(), Some(0));
    let rows = csv_rows(&stdout(&o));
    let k = rows
        .iter()
        .find(|r| (r[1] - 2.0 * PI / 3.0).abs() < 1e-12 && (r[2] - 4.0 * PI / 3.0).abs() < 1e-12)
        .unwrap();
    assert!(k[3].abs() < 1e-12 && k[4].abs() < 1e-12);
}

#[test]
fn bands_sweep_out_and_errors() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("sweep.csv");
    let o = bandcert(&["bands", "--builtin", "z_pendant", "--path", "0;pi", "--sweep-out", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let text = std::fs::read_to_string(&p).unwrap();
    assert_eq!(text.lines().next().unwrap(), "s,theta1,lambda1,lambda2");
    assert_eq!(text.lines().count(), 66);
    assert_eq!(bandcert(&["bands", "--builtin", "z1_lattice", "--path", ""]).status.code(), Some(1));
    assert_eq!(bandcert(&["bands", "--builtin", "z1_lattice", "--path", "0,0;1,1"]).status.code(), Some(1));
}

#[test]
fn analyze_sweep_out_writes_grid() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("grid.csv");
    let o = bandcert(&["analyze", "--builtin", "z_pendant", "--grid", "16", "--sweep-out", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let text = std::fs::read_to_string(&p).unwrap();
    assert_eq!(text.lines().count(), 1 + 16 + 2);
}

#[test]
fn verify_examples() {
    let o = bandcert(&["verify", "--builtin", "hexagonal", "--oracle-n", "6"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("verify hexagonal: PASS"));

    let (v, o) = json(&["verify", "--builtin", "c4_pendant_chain", "--format", "json", "--seed", "9"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(v["certification"]["seed"], 9);
    let checks = v["certification"]["checks"].as_array().unwrap();
    let flat = checks.iter().find(|c| c["name"] == "fundamental_bipartite_flat").unwrap();
    assert_eq!(flat["status"], "pass");
    assert!(checks.iter().any(|c| c["name"] == "oracle_equivalence" && c["status"] == "pass"));

    let o = bandcert(&["verify", "--builtin", "z_pendant", "--grid", "8"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn list_builtins() {
    let o = bandcert(&["list-builtins"]);
    assert_eq!(o.status.code(), Some(0));
    let names: Vec<String> = stdout(&o).lines().map(String::from).collect();
    assert_eq!(names.len(), bandcert::graph::BUILTIN_NAMES.len());
    assert!(names.contains(&"hexagonal".to_string()));
}
