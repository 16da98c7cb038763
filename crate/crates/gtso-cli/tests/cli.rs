//! End-to-end tests of the compiled binary: exit-code contract, output
//! schemas, determinism, and input validation.

use std::path::PathBuf;
use std::process::{Command, Output};

fn gtso(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gtso"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_json(output: &Output) -> serde_json::Value {
    serde_json::from_slice(&output.stdout).expect("stdout is valid JSON")
}

fn exit_code(output: &Output) -> i32 {
    output.status.code().expect("no signal exit")
}

#[test]
fn decompose_identity_is_exactly_trivial() {
    let output = gtso(&["decompose", "--abcd", "1,0,0,1"]);
    assert_eq!(exit_code(&output), 0);
    let json = stdout_json(&output);
    for form in json["forms"].as_array().expect("forms array") {
        assert_eq!(form["residual"], 0.0);
        for factor in form["factors"].as_array().expect("factors array") {
            assert_eq!(factor["parameter"], 0.0);
        }
    }
    assert_eq!(json["target"][0][0], 1.0);
}

#[test]
fn decompose_su11_form_has_three_factors() {
    let output = gtso(&["decompose", "--abcd", "2,1,1,1", "--form", "eq25"]);
    assert_eq!(exit_code(&output), 0);
    let json = stdout_json(&output);
    let forms = json["forms"].as_array().expect("forms array");
    assert_eq!(forms.len(), 1);
    assert_eq!(forms[0]["form"], "eq25");
    assert_eq!(forms[0]["factors"].as_array().expect("factors").len(), 3);
    assert!(forms[0]["residual"].as_f64().expect("residual") <= 1e-10);
}

#[test]
fn decompose_rejects_determinant_violation() {
    let output = gtso(&["decompose", "--abcd", "1,0,0,2"]);
    assert_eq!(exit_code(&output), 2);
    let stderr = String::from_utf8_lossy(&output.stderr);
    assert!(stderr.contains("determinant"), "stderr: {stderr}");
}

#[test]
fn verify_identity_passes_with_exit_zero() {
    let output = gtso(&["verify", "--abcd", "1,0,0,1", "--nmax", "12", "--margin", "4"]);
    assert_eq!(exit_code(&output), 0);
    let json = stdout_json(&output);
    assert_eq!(json["pass"], true);
    assert_eq!(json["form"], "both");
    for key in ["params", "truncation", "residuals", "thresholds"] {
        assert!(json.get(key).is_some(), "missing top-level key {key}");
    }
}

#[test]
fn verify_reports_failures_with_exit_one() {
    // A coarse truncation cannot satisfy the interior conjugation thresholds;
    // the report must still be emitted, with exit code 1.
    let output = gtso(&["verify", "--abcd", "2,1,1,1", "--nmax", "6", "--margin", "2"]);
    assert_eq!(exit_code(&output), 1);
    let json = stdout_json(&output);
    assert_eq!(json["pass"], false);
    let residuals = json["residuals"].as_object().expect("residual map");
    let thresholds = json["thresholds"].as_object().expect("threshold map");
    assert!(residuals.keys().any(|k| {
        residuals[k].as_f64().unwrap() > thresholds[k].as_f64().unwrap()
    }));
}

#[test]
fn verify_csv_lists_one_residual_per_column() {
    let output = gtso(&[
        "verify", "--abcd", "1,0,0,1", "--nmax", "8", "--margin", "3", "--output", "csv",
    ]);
    assert_eq!(exit_code(&output), 0);
    let text = String::from_utf8(output.stdout).expect("utf8");
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 3);
    assert!(lines[0].starts_with("row,"));
    assert!(lines[0].ends_with(",pass"));
    assert!(lines[1].starts_with("residual,"));
    assert!(lines[1].ends_with(",true"));
    assert!(lines[2].starts_with("threshold,"));
    let columns = lines[0].split(',').count();
    assert_eq!(lines[1].split(',').count(), columns);
    assert_eq!(lines[2].split(',').count(), columns);
}

#[test]
fn verify_output_is_byte_deterministic() {
    let args = [
        "verify", "--abcd", "2,1,1,1", "--nmax", "8", "--margin", "3", "--eta", "0.1,0.2",
        "--xi", "0.3,0", "--lambda", "0.2", "--seed", "42",
    ];
    let first = gtso(&args);
    let second = gtso(&args);
    assert!(!first.stdout.is_empty());
    assert_eq!(first.stdout, second.stdout);
}

#[test]
fn state_identity_vacuum_is_a_single_amplitude() {
    let output = gtso(&["state", "gtso_vacuum", "--abcd", "1,0,0,1", "--nmax", "8", "--margin", "3"]);
    assert_eq!(exit_code(&output), 0);
    let json = stdout_json(&output);
    let amplitudes = json["amplitudes"].as_array().expect("amplitude rows");
    assert_eq!(amplitudes.len(), 1);
    assert_eq!(amplitudes[0]["n1"], 0);
    assert_eq!(amplitudes[0]["n2"], 0);
    assert!((amplitudes[0]["re"].as_f64().unwrap() - 1.0).abs() < 1e-12);
    for i in 0..4 {
        let diagonal = json["covariance"][i][i].as_f64().expect("covariance entry");
        assert!((diagonal - 0.5).abs() < 1e-12);
    }
}

#[test]
fn state_pair_ladder_has_equal_diagonal_amplitudes() {
    let output = gtso(&[
        "state", "eta", "--label", "0,0", "--nmax", "8", "--margin", "3", "--output", "csv",
    ]);
    assert_eq!(exit_code(&output), 0);
    let text = String::from_utf8(output.stdout).expect("utf8");
    let rows: Vec<&str> = text.lines().skip(1).filter(|l| !l.is_empty()).collect();
    assert_eq!(rows.len(), 9);
    for (n, row) in rows.iter().enumerate() {
        let fields: Vec<&str> = row.split(',').collect();
        assert_eq!(fields[0], n.to_string());
        assert_eq!(fields[1], n.to_string());
        let re: f64 = fields[2].parse().expect("amplitude");
        assert!((re - 1.0).abs() < 1e-12);
    }
}

#[test]
fn state_requires_a_label_for_eigenstates() {
    let output = gtso(&["state", "eta", "--nmax", "8"]);
    assert_eq!(exit_code(&output), 2);
    let stderr = String::from_utf8_lossy(&output.stderr);
    assert!(stderr.contains("--label"), "stderr: {stderr}");
}

#[test]
fn state_warns_outside_the_accuracy_envelope() {
    let output = gtso(&["state", "eta", "--label", "2,0", "--nmax", "8", "--margin", "3"]);
    assert_eq!(exit_code(&output), 0);
    let stderr = String::from_utf8_lossy(&output.stderr);
    assert!(stderr.contains("envelope"), "stderr: {stderr}");
}

#[test]
fn sweep_emits_one_csv_row_per_truncation() {
    let args = ["sweep", "--abcd", "1,0,0,1", "--nmax-list", "6,10"];
    let output = gtso(&args);
    assert_eq!(exit_code(&output), 0);
    let text = String::from_utf8(output.stdout.clone()).expect("utf8");
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 3);
    assert!(lines[0].starts_with("n_max,margin,pass,"));
    assert!(lines[1].starts_with("6,2,true,"));
    assert!(lines[2].starts_with("10,4,true,"));

    let again = gtso(&args);
    assert_eq!(output.stdout, again.stdout);
}

#[test]
fn sweep_rejects_malformed_lists() {
    let single = gtso(&["sweep", "--abcd", "1,0,0,1", "--nmax-list", "10"]);
    assert_eq!(exit_code(&single), 2);
    let descending = gtso(&["sweep", "--abcd", "1,0,0,1", "--nmax-list", "14,10"]);
    assert_eq!(exit_code(&descending), 2);
}

#[test]
fn out_flag_writes_the_file_instead_of_stdout() {
    let path: PathBuf = std::env::temp_dir().join("gtso-cli-test-decompose.json");
    let _ = std::fs::remove_file(&path);
    let output = gtso(&["decompose", "--abcd", "2,1,1,1", "--out", path.to_str().unwrap()]);
    assert_eq!(exit_code(&output), 0);
    assert!(output.stdout.is_empty());
    let written = std::fs::read_to_string(&path).expect("output file");
    let json: serde_json::Value = serde_json::from_str(&written).expect("valid JSON");
    assert_eq!(json["form"], "both");
    std::fs::remove_file(&path).expect("cleanup");
}
