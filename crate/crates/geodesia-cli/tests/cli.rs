//! End-to-end tests of the command-line binary.

use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_geodesia"))
}

#[test]
fn validate_reports_builtin_meshes() {
    let out = bin().args(["validate", "--mesh", "cube"]).output().unwrap();
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["valid"], true);
    assert_eq!(v["edges"], 18);
    assert_eq!(v["meta"]["schema"], "geodesia/1");
    assert!(v["meta"]["mesh_hash"].as_str().unwrap().len() == 16);
}

#[test]
fn validate_rejects_a_non_convex_mesh() {
    // an octahedron with one vertex pulled toward the center
    let off = "OFF\n6 8 0\n-0.5 0 0\n-1 0 0\n0 1 0\n0 -1 0\n0 0 1\n0 0 -1\n\
               3 0 2 4\n3 2 1 4\n3 1 3 4\n3 3 0 4\n3 2 0 5\n3 1 2 5\n3 3 1 5\n3 0 3 5\n";
    let dir = std::env::temp_dir().join("geodesia-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("nonconvex.off");
    std::fs::write(&path, off).unwrap();
    let out = bin().args(["validate", "--mesh", path.to_str().unwrap()]).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["valid"], false);
}

#[test]
fn distance_between_tetrahedron_opposite_edge_midpoints() {
    let out = bin()
        .args(["distance", "--mesh", "tetrahedron", "--source", "0:0.5", "--target", "5:0.5"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    // normalized to unit diameter; the surface distance between opposite
    // edge midpoints of a regular tetrahedron equals the edge length
    let d = v["distance"].as_f64().unwrap();
    assert!((d - 1.0).abs() <= 1e-9, "distance {d}");
}

#[test]
fn sweep_output_is_deterministic() {
    let run = || bin().args(["sweep", "--mesh", "hull:8:2", "--edge", "4", "--seed", "9"]).output().unwrap();
    let (a, b) = (run(), run());
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout, "sweep output not byte-identical");
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert!(v["sigma"].as_array().unwrap().len() >= 3);
    assert_eq!(v["meta"]["seed"], 9);
}

#[test]
fn star_svg_is_deterministic_and_well_formed() {
    let run = || bin().args(["star", "--mesh", "tetrahedron", "--source", "0:0.375"]).output().unwrap();
    let (a, b) = (run(), run());
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let s = String::from_utf8(a.stdout).unwrap();
    assert!(s.starts_with("<svg "));
    assert!(s.trim_end().ends_with("</svg>"));
}

#[test]
fn tolerance_overrides_are_bounded() {
    let out = bin()
        .args(["validate", "--mesh", "tetrahedron", "--tol", "point=0.5"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let out = bin()
        .args(["validate", "--mesh", "tetrahedron", "--tol", "point=1e-8"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["meta"]["tolerances"]["point"], 1e-8);
}

#[test]
fn query_stream_answers_json_lines() {
    use std::io::Write;
    use std::process::Stdio;
    let mut child = bin()
        .args(["query", "--mesh", "hull:8:2", "--edge", "1"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .as_mut()
        .unwrap()
        .write_all(b"1 0.3 5 0.5\n1 0.7 2 0.25\n0 0.5 1 0.5\n")
        .unwrap();
    let out = child.wait_with_output().unwrap();
    assert!(out.status.success());
    let lines: Vec<serde_json::Value> = String::from_utf8(out.stdout)
        .unwrap()
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(lines.len(), 3);
    assert!(lines[0]["distance"].as_f64().unwrap() > 0.0);
    assert!(lines[1]["probes"].as_u64().unwrap() >= 1);
    assert!(lines[2]["error"].as_str().unwrap().contains("source edge"));
}
