use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn graph(name: &str) -> String {
	let root = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data/graphs").join(name);
	root.to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> Output {
	Command::new(env!("CARGO_BIN_EXE_crystalframe")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
	serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn realize_k4_is_all_green() {
	let out = run(&["realize", &graph("k4.graph"), "--summand", "zero"]);
	assert_eq!(out.status.code(), Some(0));
	let v = json(&out);
	let report = &v["report"];
	assert_eq!(report["harmonic"], true);
	assert_eq!(report["tight_constant"], "1");
	assert_eq!(report["distortion_ratio"], 1.0);
	assert_eq!(report["torus_volume_squared"], "16");
	assert_eq!(report["realism"]["passes"], true);
	assert_eq!(v["homology_basis"].as_array().unwrap().len(), 3);
}

#[test]
fn realize_delta4_gives_diamond_bonds() {
	let v = json(&run(&["realize", &graph("delta4.graph")]));
	assert_eq!(v["report"]["passes"], true);
	assert_eq!(v["report"]["torus_volume_squared"], "4");
	let g = &v["geometry"];
	let vertices = g["vertices"].as_array().unwrap();
	for e in g["edges"].as_array().unwrap() {
		let a = &vertices[e["from"].as_u64().unwrap() as usize]["pos"];
		let b = &vertices[e["to"].as_u64().unwrap() as usize]["pos"];
		let d2: f64 = (0..3).map(|j| (a[j].as_f64().unwrap() - b[j].as_f64().unwrap()).powi(2)).sum();
		assert!((d2 - 0.75).abs() < 1e-9);
	}
}

#[test]
fn honeycomb_obj() {
	let out = run(&["realize", &graph("hexquot.graph"), "--summand", "zero", "--export", "obj"]);
	assert_eq!(out.status.code(), Some(0));
	let text = String::from_utf8(out.stdout).unwrap();
	assert_eq!(text.lines().filter(|l| l.starts_with("v ")).count(), 18);
	assert!(text.lines().any(|l| l.starts_with("l ")));
}

#[test]
fn output_is_deterministic() {
	let a = run(&["realize", &graph("kagome.graph"), "--radius", "2"]);
	let b = run(&["realize", &graph("kagome.graph"), "--radius", "2"]);
	assert_eq!(a.stdout, b.stdout);
}

#[test]
fn enumerate_rows() {
	let v = json(&run(&["enumerate", &graph("bouquet3.graph"), "--dim", "2", "--height-bound", "sqrt(3)"]));
	assert_eq!(v["count"], 13);
	let empty = json(&run(&["enumerate", &graph("k4.graph"), "--dim", "2", "--height-bound", "1/2"]));
	assert_eq!(empty["count"], 0);
	let big = run(&["enumerate", &graph("k4.graph"), "--dim", "2", "--height-bound", "1000"]);
	assert_eq!(big.status.code(), Some(2));
	assert!(String::from_utf8_lossy(&big.stderr).contains("bound too large"));
}

#[test]
fn verify_suites() {
	let ok = run(&["verify", "jacobian"]);
	assert_eq!(ok.status.code(), Some(0));
	assert_eq!(json(&ok)["passed"], true);
	assert_eq!(run(&["verify", "--suite", "frames"]).status.code(), Some(0));
	let bad = run(&["verify", "--suite", "nosuch"]);
	assert_eq!(bad.status.code(), Some(2));
	assert!(String::from_utf8_lossy(&bad.stderr).contains("unknown verification suite"));
}

#[test]
fn jacobian_output() {
	let v = json(&run(&["jacobian", &graph("k4.graph")]));
	assert_eq!(v["invariants"], serde_json::json!(["4", "4"]));
	assert_eq!(v["kappa"], "16");
	assert_eq!(v["abel_jacobi_table"].as_array().unwrap().len(), 4);
	assert_eq!(v["pairing_table"].as_array().unwrap().len(), 2);
	let json_graph = json(&run(&["jacobian", &graph("k4.json")]));
	assert_eq!(json_graph, v);
}

#[test]
fn input_errors_exit_with_two() {
	let bad_row = run(&["realize", &graph("k4.graph"), "--summand", "1 0 0\n0 x 1"]);
	assert_eq!(bad_row.status.code(), Some(2));
	assert!(String::from_utf8_lossy(&bad_row.stderr).contains("line 2"));
	let dir = std::env::temp_dir().join(format!("crystalframe-cli-{}", std::process::id()));
	std::fs::create_dir_all(&dir).unwrap();
	let tri = dir.join("triangle.graph");
	std::fs::write(&tri, "V 3\nE 1 0 1\nE 2 1 2\nE 3 2 0\n").unwrap();
	let tri = tri.to_string_lossy().into_owned();
	assert_eq!(run(&["jacobian", &tri]).status.code(), Some(2));
	assert_eq!(run(&["jacobian", "--allow-low-degree", &tri]).status.code(), Some(0));
	let broken = dir.join("broken.graph");
	std::fs::write(&broken, "V 2\nE 1 0 1\nE 2 0 x\n").unwrap();
	let out = run(&["basis", &broken.to_string_lossy()]);
	assert_eq!(out.status.code(), Some(2));
	assert!(String::from_utf8_lossy(&out.stderr).contains("line 3"));
	let unknown = dir.join("extra.json");
	std::fs::write(&unknown, r#"{"vertices": 1, "edges": [[1,0,0],[2,0,0],[3,0,0]], "name": "x"}"#).unwrap();
	assert_eq!(run(&["basis", &unknown.to_string_lossy()]).status.code(), Some(2));
}

#[test]
fn frame_analysis() {
	let v = json(&run(&["frame", "simplex:2"]));
	assert_eq!(v["naimark"], true);
	assert_eq!(v["tight_constant"], "1");
	assert_eq!(v["automorphisms"]["strongly_isotropic"], true);
	let sq = json(&run(&["frame", "polygon:4"]));
	assert_eq!(sq["automorphisms"]["isotropic"], true);
	assert_eq!(sq["automorphisms"]["strongly_isotropic"], false);
	let penta = json(&run(&["frame", "polygon:5"]));
	assert_eq!(penta["crystallographic"], false);
	assert_eq!(run(&["frame", "polygon:x"]).status.code(), Some(2));
}
