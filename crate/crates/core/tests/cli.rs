use std::path::PathBuf;
use std::process::Command;

use naqm::cli::run;
use serde_json::Value;

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("data")
        .join(name)
        .display()
        .to_string()
}

fn naqm(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("naqm").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn json(args: &[&str]) -> Value {
    let (code, out, err) = naqm(args);
    assert_eq!(code, 0, "{err}");
    serde_json::from_str(&out).unwrap()
}

#[test]
fn demo_octonion_values() {
    let v = json(&["demo", "octonion"]);
    assert_eq!(v["dim"], 8);
    assert_eq!(v["exact"], true);
    assert_eq!(v["enveloping_dim"], 64);
    assert_eq!(v["multiplication_table"][1][2], "e3");
    assert_eq!(v["axioms"]["passed"], true);
    assert_eq!(v["trace_axioms"]["passed"], true);
    for key in [
        "signed_permutations",
        "phase_matrices",
        "e1_to_e7_product_is_minus_identity",
        "clifford_relations",
    ] {
        assert_eq!(v["structure"][key], true, "{key}");
    }
    let ct = &v["commutator_trace"];
    assert!(ct[0].as_f64().unwrap().abs() < 1e-12);
    assert!((ct[1].as_f64().unwrap() - 2.0).abs() < 1e-12);
    assert!((v["uncertainty"]["delta_a"].as_f64().unwrap() - 1.0).abs() < 1e-10);
    assert!((v["uncertainty"]["delta_b"].as_f64().unwrap() - 1.0).abs() < 1e-10);
    assert_eq!(v["uncertainty"]["minimum_uncertainty"], true);
    assert_eq!(v["tracial_state"]["commutant_dim"], 1);
    assert_eq!(v["tracial_state"]["pure"], true);
}

#[test]
fn demo_jordan_values() {
    let v = json(&["demo", "jordan", "2"]);
    assert_eq!(v["enveloping_dim"], 16);
    assert_eq!(v["commutative"], true);
    assert_eq!(v["tracial_gns_dim"], 4);
    assert_eq!(v["pauli"]["bonafide_hamiltonian_equals_z"], true);
    assert_eq!(v["pauli"]["z_constant_of_motion"], true);
    let v3 = json(&["demo", "jordan", "3"]);
    assert_eq!(v3["enveloping_dim"], 81);
    assert!(v3.get("pauli").is_none());
}

#[test]
fn env_dim_variants() {
    assert_eq!(json(&["env", "dim", "--algebra", "builtin:jordan:2"])["dim"], 16);
    let v = json(&["env", "dim", "--algebra", "builtin:matrix:2"]);
    assert_eq!(v["dim"], 4);
    assert_eq!(v["full_matrix_algebra"], false);
    assert_eq!(
        json(&["env", "dim", "--algebra", "builtin:matrix:2", "--generators", "both"])["dim"],
        16
    );
    let q = json(&["env", "dim", "--algebra", &data("quaternions.json"), "--float"]);
    assert_eq!(q["exact"], false);
    assert_eq!(q["dim"], 4);
}

#[test]
fn algebra_check_files() {
    let v = json(&["algebra", "check", "--algebra", &data("quaternions.json")]);
    assert_eq!(v["passed"], true);
    let (code, out, err) = naqm(&["algebra", "check", "--algebra", &data("corrupted.json")]);
    assert_eq!(code, 2);
    assert!(err.contains("validation failed"));
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["axioms"]["passed"], false);
}

#[test]
fn parse_errors_carry_line_context() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(&path, "{\n \"dim\": 2,\n \"structure\": [1, 2,\n}").unwrap();
    let (code, _, err) = naqm(&["algebra", "check", "--algebra", path.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(err.contains("line 3"), "{err}");
    let (code, _, err) = naqm(&["algebra", "check", "--algebra", "/nonexistent/alg.json"]);
    assert_eq!(code, 2);
    assert!(err.starts_with("error:"));
    let (code, _, _) = naqm(&["algebra", "check", "--algebra", "builtin:nothing"]);
    assert_eq!(code, 2);
}

#[test]
fn usage_errors() {
    assert_eq!(naqm(&["bogus"]).0, 2);
    assert_eq!(naqm(&["--exact", "--float", "demo", "octonion"]).0, 2);
    assert_eq!(naqm(&["--tol", "-1", "demo", "octonion"]).0, 2);
    let (code, _, err) = naqm(&[
        "--exact",
        "eigen",
        "--algebra",
        "builtin:pauli",
        "--operator",
        &data("pauli_z.json"),
    ]);
    assert_eq!(code, 2);
    assert!(err.contains("--exact"));
    let (code, out, _) = naqm(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("Usage"));
}

#[test]
fn gns_reports() {
    let v = json(&["gns", "--algebra", &data("quaternions.json")]);
    assert_eq!(v["quotient_dim"], 4);
    assert_eq!(v["pure"], true);
    assert_eq!(v["state"], "tracial");
    let o = json(&["gns", "--algebra", "builtin:octonion"]);
    assert_eq!(o["operator_basis_dim"], 64);
    assert_eq!(o["commutant_dim"], 1);
}

#[test]
fn eigen_output() {
    let v = json(&[
        "eigen",
        "--algebra",
        "builtin:pauli",
        "--operator",
        &data("pauli_z.json"),
    ]);
    let lambdas: Vec<f64> = v
        .as_array()
        .unwrap()
        .iter()
        .map(|p| p["lambda"][0].as_f64().unwrap())
        .collect();
    assert_eq!(lambdas.len(), 4);
    let want = [1.0, 0.0, 0.0, -1.0];
    for (l, w) in lambdas.iter().zip(want) {
        assert!((l - w).abs() < 1e-12);
    }
    for p in v.as_array().unwrap() {
        assert!(p["residual"].as_f64().unwrap() < 1e-10);
        assert_eq!(p["generalized"], false);
    }
}

#[test]
fn uncertainty_octonion() {
    let v = json(&[
        "uncertainty",
        "--algebra",
        "builtin:octonion",
        "--a",
        &data("i_e1.json"),
        "--b",
        &data("i_e2.json"),
    ]);
    assert_eq!(v["holds"], true);
}

#[test]
fn evolve_csv() {
    let (code, out, err) = naqm(&["evolve", "--scenario", &data("pauli_evolve.json")]);
    assert_eq!(code, 0, "{err}");
    let mut reader = csv_rows(&out);
    let header = reader.remove(0);
    assert_eq!(header[0], "t");
    assert_eq!(header.last().unwrap(), "exp_0");
    assert_eq!(header.len(), 1 + 2 * 4 + 1);
    assert_eq!(reader.len(), 51);
    // ψ₀ = ½(𝟙 + z) with H = 2ẑ: a = ½cos 2t, d = −½ i sin 2t
    for row in &reader {
        let t: f64 = row[0].parse().unwrap();
        let a: f64 = row[1].parse().unwrap();
        let d_im: f64 = row[8].parse().unwrap();
        assert!((a - 0.5 * (2.0 * t).cos()).abs() < 1e-9);
        assert!((d_im + 0.5 * (2.0 * t).sin()).abs() < 1e-9);
    }
    let (code, _, _) = naqm(&["evolve", "--scenario", &data("pauli_evolve.json"), "--steps", "0"]);
    assert_eq!(code, 2);
}

fn csv_rows(text: &str) -> Vec<Vec<String>> {
    text.lines()
        .map(|l| l.split(',').map(str::to_string).collect())
        .collect()
}

#[test]
fn output_is_deterministic_and_out_flag_writes_file() {
    let (_, first, _) = naqm(&["demo", "octonion"]);
    let (_, second, _) = naqm(&["demo", "octonion"]);
    assert_eq!(first, second);
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let (code, out, _) = naqm(&["--out", path.to_str().unwrap(), "demo", "octonion"]);
    assert_eq!(code, 0);
    assert!(out.is_empty());
    assert_eq!(std::fs::read_to_string(&path).unwrap(), first);
}

#[test]
fn binary_entry_point() {
    let exe = env!("CARGO_BIN_EXE_naqm");
    let ok = Command::new(exe)
        .args(["env", "dim", "--algebra", "builtin:jordan:2"])
        .output()
        .unwrap();
    assert!(ok.status.success());
    let v: Value = serde_json::from_slice(&ok.stdout).unwrap();
    assert_eq!(v["dim"], 16);
    let bad = Command::new(exe)
        .args(["algebra", "check", "--algebra", &data("corrupted.json")])
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(2));
    let tol = Command::new(exe)
        .env("NAQM_TOL", "1e-6")
        .args(["demo", "jordan", "2", "--float"])
        .output()
        .unwrap();
    assert!(tol.status.success());
}
