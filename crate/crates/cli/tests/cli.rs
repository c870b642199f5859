//! End-to-end behaviour of the binary: output formats, exit codes and error
//! messages.

use std::path::Path;
use std::process::{Command, Output};

fn cohlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cohlab")).args(args).output().expect("binary runs")
}

fn write(path: &Path, content: &str) {
    std::fs::write(path, content).unwrap();
}

const PLUS: &str =
    r#"{"rows":2,"cols":2,"data":[[0.5,0.0],[0.5,0.0],[0.5,0.0],[0.5,0.0]],"dims":[2]}"#;
const DIAGONAL: &str =
    r#"{"rows":2,"cols":2,"data":[[0.3,0.0],[0.0,0.0],[0.0,0.0],[0.7,0.0]],"dims":[2]}"#;

#[test]
fn coherence_of_the_plus_state() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("plus.json");
    write(&input, PLUS);
    let out = cohlab(&["coherence", "--in", input.to_str().unwrap()]);
    assert!(out.status.success());
    let stdout = String::from_utf8(out.stdout).unwrap();
    let report: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(report["c_l1"], 1.0);
    assert_eq!(report["is_incoherent"], false);
}

#[test]
fn convert_output_reparses_to_an_identical_matrix() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("plus.json");
    write(&input, PLUS);
    let first = cohlab(&["convert", "--in", input.to_str().unwrap(), "--d", "2", "--n", "3"]);
    assert!(first.status.success());
    let converted = dir.path().join("converted.json");
    write(&converted, std::str::from_utf8(&first.stdout).unwrap().trim());
    let second = cohlab(&["convert", "--in", input.to_str().unwrap(), "--d", "2", "--n", "3"]);
    assert_eq!(first.stdout, second.stdout);
    // the emitted state is valid input for another subcommand
    let gme = cohlab(&["gme", "--in", converted.to_str().unwrap()]);
    assert!(gme.status.success());
    let stdout = String::from_utf8(gme.stdout).unwrap();
    let reports: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(reports[0]["name"], "c-gme-pure");
    let value = reports[0]["value"].as_f64().unwrap();
    assert!((value - 1.0).abs() < 1e-9);
}

#[test]
fn malformed_json_exits_1_with_a_position() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("broken.json");
    write(&input, r#"{"rows":2,"cols":2,"data":[[0.5,"#);
    let out = cohlab(&["coherence", "--in", input.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let stderr = String::from_utf8(out.stderr).unwrap();
    assert!(stderr.contains("line") && stderr.contains("column"), "stderr: {stderr}");
}

#[test]
fn invalid_density_exits_1_naming_the_invariant() {
    let dir = tempfile::tempdir().unwrap();

    let trace_violation = dir.path().join("trace.json");
    write(
        &trace_violation,
        r#"{"rows":2,"cols":2,"data":[[0.9,0.0],[0.0,0.0],[0.0,0.0],[0.0,0.0]],"dims":[2]}"#,
    );
    let out = cohlab(&["coherence", "--in", trace_violation.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8(out.stderr).unwrap().contains("trace"));

    let negative = dir.path().join("negative.json");
    write(
        &negative,
        r#"{"rows":2,"cols":2,"data":[[1.2,0.0],[0.0,0.0],[0.0,0.0],[-0.2,0.0]],"dims":[2]}"#,
    );
    let out = cohlab(&["coherence", "--in", negative.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let stderr = String::from_utf8(out.stderr).unwrap();
    assert!(
        stderr.contains("positive semidefinite") && stderr.contains("-0.2"),
        "stderr: {stderr}"
    );

    let skewed = dir.path().join("skewed.json");
    write(
        &skewed,
        r#"{"rows":2,"cols":2,"data":[[0.5,0.0],[0.5,0.0],[0.0,0.0],[0.5,0.0]],"dims":[2]}"#,
    );
    let out = cohlab(&["coherence", "--in", skewed.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8(out.stderr).unwrap().contains("Hermitian"));
}

#[test]
fn expect_violation_gates_the_exit_code() {
    let dir = tempfile::tempdir().unwrap();
    let plus = dir.path().join("plus.json");
    write(&plus, PLUS);
    let diag = dir.path().join("diag.json");
    write(&diag, DIAGONAL);

    // convert then test: the coherent source violates, the diagonal one does not
    let conv = cohlab(&["convert", "--in", plus.to_str().unwrap(), "--d", "2", "--n", "2"]);
    let bell = dir.path().join("bell.json");
    write(&bell, std::str::from_utf8(&conv.stdout).unwrap().trim());
    let out =
        cohlab(&["chsh", "--in", bell.to_str().unwrap(), "--expect-violation", "--seed", "5"]);
    assert_eq!(out.status.code(), Some(0));

    let conv = cohlab(&["convert", "--in", diag.to_str().unwrap(), "--d", "2", "--n", "2"]);
    let classical = dir.path().join("classical.json");
    write(&classical, std::str::from_utf8(&conv.stdout).unwrap().trim());
    let out =
        cohlab(&["chsh", "--in", classical.to_str().unwrap(), "--expect-violation", "--seed", "5"]);
    assert_eq!(out.status.code(), Some(2));
    // without the flag the same run exits 0
    let out = cohlab(&["chsh", "--in", classical.to_str().unwrap(), "--seed", "5"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn tns_reports_both_inequalities() {
    let dir = tempfile::tempdir().unwrap();
    let plus = dir.path().join("plus.json");
    write(&plus, PLUS);
    let conv = cohlab(&["convert", "--in", plus.to_str().unwrap(), "--d", "2", "--n", "3"]);
    let ghz = dir.path().join("ghz.json");
    write(&ghz, std::str::from_utf8(&conv.stdout).unwrap().trim());

    let out = cohlab(&["tns", "--in", ghz.to_str().unwrap(), "--seed", "3"]);
    assert!(out.status.success());
    let reports: serde_json::Value =
        serde_json::from_str(std::str::from_utf8(&out.stdout).unwrap()).unwrap();
    assert_eq!(reports[0]["name"], "t-inequality");
    let t = reports[0]["value"].as_f64().unwrap();
    assert!((t - (1.0 + 2.0 * std::f64::consts::SQRT_2)).abs() < 1e-12);
    assert_eq!(reports[0]["violated"], true);
    assert_eq!(reports[1]["name"], "ns-oracle");
    assert_eq!(reports[1]["bound"], 3.0);

    let sv = cohlab(&["svetlichny", "--in", ghz.to_str().unwrap(), "--seed", "3"]);
    assert!(sv.status.success());
    let reports: serde_json::Value =
        serde_json::from_str(std::str::from_utf8(&sv.stdout).unwrap()).unwrap();
    assert_eq!(reports[0]["name"], "svetlichny-bound");
    assert!((reports[0]["value"].as_f64().unwrap() - 4.0 * std::f64::consts::SQRT_2).abs() < 1e-9);
    assert_eq!(reports[0]["violated"], true);
    assert_eq!(reports[1]["name"], "svetlichny-oracle");
}

#[test]
fn gme_closed_form_needs_a_source_state() {
    let dir = tempfile::tempdir().unwrap();
    let plus = dir.path().join("plus.json");
    write(&plus, PLUS);
    let out = cohlab(&["gme", "--in", plus.to_str().unwrap(), "--n", "4", "--expect-violation"]);
    assert_eq!(out.status.code(), Some(0));
    let reports: serde_json::Value =
        serde_json::from_str(std::str::from_utf8(&out.stdout).unwrap()).unwrap();
    assert_eq!(reports[0]["name"], "c-gme-converted");
    assert_eq!(reports[0]["value"], 1.0);
}

#[test]
fn fig2_writes_the_grid_artifact() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("fig2.csv");
    let out = cohlab(&[
        "fig2",
        "--a-steps",
        "7",
        "--b-steps",
        "7",
        "--seed",
        "1",
        "--out",
        csv.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let content = std::fs::read_to_string(&csv).unwrap();
    assert!(content.starts_with('#'));
    assert!(content.contains("a,b,c_l1,t_value,ns_max,t_violated,ns_violated"));
    let result: serde_json::Value =
        serde_json::from_str(std::str::from_utf8(&out.stdout).unwrap()).unwrap();
    assert_eq!(result["failures"], 0);
}

#[test]
fn verify_writes_artifacts_only_on_request() {
    let dir = tempfile::tempdir().unwrap();
    let out = cohlab(&["verify", "--theorem", "5", "--seed", "3"]);
    assert!(out.status.success());
    let results: serde_json::Value =
        serde_json::from_str(std::str::from_utf8(&out.stdout).unwrap()).unwrap();
    assert_eq!(results[0]["artifacts"].as_array().unwrap().len(), 0);

    let out = cohlab(&[
        "verify",
        "--theorem",
        "5",
        "--seed",
        "3",
        "--artifact-dir",
        dir.path().to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let results: serde_json::Value =
        serde_json::from_str(std::str::from_utf8(&out.stdout).unwrap()).unwrap();
    let artifacts = results[0]["artifacts"].as_array().unwrap();
    assert_eq!(artifacts.len(), 1);
    assert!(Path::new(artifacts[0].as_str().unwrap()).exists());
}

#[test]
fn unknown_theorem_selector_is_an_input_error() {
    let out = cohlab(&["verify", "--theorem", "six"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8(out.stderr).unwrap().contains("six"));
}
