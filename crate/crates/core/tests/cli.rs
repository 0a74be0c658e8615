use std::f64::consts::PI;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_graphene-dispersion")
}

fn write_config(dir: &Path, name: &str, body: &str) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, body).unwrap();
    path
}

fn run(subcommand: &str, config: &Path, extra: &[&str]) -> Output {
    Command::new(bin())
        .arg(subcommand)
        .arg("--config")
        .arg(config)
        .args(extra)
        .output()
        .unwrap()
}

fn json_output(subcommand: &str, config: &Path) -> Value {
    let out = run(subcommand, config, &["--format", "json"]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn unknown_field_is_a_config_error() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        "bad.json",
        r#"{"model": {"kind": "plasma", "omega_p": 2}, "grid": {"omega": {"values": [1]}}, "typo": 1}"#,
    );
    let out = run("eval", &cfg, &[]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn missing_config_file_is_a_config_error() {
    let out = run("kk", Path::new("/nonexistent/config.json"), &[]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn graphene_without_wave_vectors_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        "nok.json",
        r#"{"model": {"kind": "graphene-transverse"}, "grid": {"omega": {"values": [0.5]}}}"#,
    );
    assert_eq!(run("eval", &cfg, &[]).status.code(), Some(2));
}

#[test]
fn decreasing_grid_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        "dec.json",
        r#"{"model": {"kind": "plasma", "omega_p": 2}, "grid": {"omega": {"values": [2, 1]}}}"#,
    );
    assert_eq!(run("eval", &cfg, &[]).status.code(), Some(2));
}

#[test]
fn lossless_oscillator_dispersion_is_a_numerical_failure() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        "lossless.json",
        r#"{"model": {"kind": "oscillator", "oscillators": [{"strength": 1, "frequency": 1, "damping": 0}]},
            "grid": {"omega": {"values": [0.5]}}}"#,
    );
    assert_eq!(run("kk", &cfg, &[]).status.code(), Some(3));
}

#[test]
fn missed_threshold_exits_4_only_with_check() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        "strict.json",
        r#"{"model": {"kind": "drude", "omega_p": 3, "gamma": 0.5},
            "grid": {"omega": {"values": [0.5, 2]}},
            "kk": {"relations": ["im-from-re"], "max_rel_residual": 1e-30}}"#,
    );
    assert_eq!(run("kk", &cfg, &[]).status.code(), Some(0));
    let out = run("kk", &cfg, &["--check"]);
    assert_eq!(out.status.code(), Some(4));
    assert!(String::from_utf8_lossy(&out.stderr).contains("status=fail"));
}

#[test]
fn json_report_structure() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        "eval.json",
        r#"{"model": {"kind": "plasma", "omega_p": 2},
            "grid": {"omega": {"values": [-1, 0, 1]}, "xi": {"values": [1]}}}"#,
    );
    let v = json_output("eval", &cfg);
    assert_eq!(v["command"], "eval");
    assert_eq!(v["model"], "plasma");
    assert_eq!(v["units"], "natural");
    let columns: Vec<&str> = v["columns"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c.as_str().unwrap())
        .collect();
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 4);
    for row in rows {
        let keys: Vec<&str> = row
            .as_object()
            .unwrap()
            .keys()
            .map(|k| k.as_str())
            .collect();
        assert_eq!(keys.len(), columns.len());
        assert!(columns.iter().all(|c| keys.contains(c)));
    }
    // ω = 0 is the plasma pole: numbers become null, status says why
    let origin = rows
        .iter()
        .find(|r| r["omega"].as_f64() == Some(0.0))
        .unwrap();
    assert!(origin["re_eps"].is_null());
    assert_ne!(origin["status"], "regular");
    let unit = rows
        .iter()
        .find(|r| r["axis"] == "real" && r["omega"].as_f64() == Some(1.0))
        .unwrap();
    assert_eq!(unit["re_eps"].as_f64(), Some(-3.0));
    let xi = rows.iter().find(|r| r["axis"] == "imaginary").unwrap();
    assert_eq!(xi["re_eps"].as_f64(), Some(5.0));
    assert_eq!(v["passed"], true);
    assert!(!v["summary"].as_array().unwrap().is_empty());
}

#[test]
fn csv_and_json_carry_the_same_numbers() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        "kk.json",
        r#"{"model": {"kind": "drude", "omega_p": 3, "gamma": 0.5},
            "grid": {"omega": {"spacing": "log", "start": 0.1, "stop": 10, "points": 5}}}"#,
    );
    let csv = run("kk", &cfg, &["--format", "csv"]);
    let csv = String::from_utf8(csv.stdout).unwrap();
    let mut lines = csv.lines();
    let header: Vec<&str> = lines.next().unwrap().split(',').collect();
    let v = json_output("kk", &cfg);
    let rows = v["rows"].as_array().unwrap();
    let body: Vec<&str> = lines.collect();
    assert_eq!(body.len(), rows.len());
    let col = header.iter().position(|&c| c == "reconstructed").unwrap();
    for (line, row) in body.iter().zip(rows) {
        let cell: f64 = line.split(',').nth(col).unwrap().parse().unwrap();
        assert_eq!(Some(cell), row["reconstructed"].as_f64());
    }
}

#[test]
fn out_flag_writes_file_and_leaves_stdout_empty() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        "p.json",
        r#"{"model": {"kind": "plasma", "omega_p": 2}, "grid": {"omega": {"values": [1, 2]}}}"#,
    );
    let target = dir.path().join("out.csv");
    let out = run("eval", &cfg, &["--out", target.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(target).unwrap();
    assert!(text.starts_with("axis,omega,re_eps,im_eps,status\n"));
    assert!(String::from_utf8_lossy(&out.stderr).starts_with("summary "));
}

#[test]
fn si_units_scale_frequencies_by_fermi_velocity() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        "si.json",
        r#"{"model": {"kind": "graphene-longitudinal"}, "si": {},
            "grid": {"omega": {"values": [0.5]}, "k": {"values": [1e6]}}}"#,
    );
    let v = json_output("eval", &cfg);
    assert_eq!(v["units"], "si");
    let row = &v["rows"][0];
    let v_fermi = 299_792_458.0 / 300.0;
    let omega = row["omega"].as_f64().unwrap();
    assert!((omega - 0.5 * v_fermi * 1e6).abs() <= 1e-15 * omega);
    // ε^L(b/2) = 1 + g/√(3/4), g = π α (c / v_F) / 2
    let g = PI / 137.036 * 300.0 / 2.0;
    let want = 1.0 + g / 0.75f64.sqrt();
    let got = row["re_eps"].as_f64().unwrap();
    assert!((got - want).abs() <= 1e-14 * want, "{got} vs {want}");
}

#[test]
fn si_rejects_speed_of_light_in_model() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        "si.json",
        r#"{"model": {"kind": "graphene-longitudinal", "c": 300}, "si": {},
            "grid": {"omega": {"values": [0.5]}, "k": {"values": [1e6]}}}"#,
    );
    assert_eq!(run("eval", &cfg, &[]).status.code(), Some(2));
}

#[test]
fn contour_rejects_non_graphene_models() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        "c.json",
        r#"{"model": {"kind": "plasma", "omega_p": 2}, "grid": {}}"#,
    );
    assert_eq!(run("contour", &cfg, &[]).status.code(), Some(2));
}

#[test]
fn contour_summary_reports_expected_slopes() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        "c.json",
        r#"{"model": {"kind": "graphene-longitudinal"}, "grid": {"k": {"values": [2]}},
            "contour": {"rho": {"spacing": "log", "start": 1e-4, "stop": 1e-2, "points": 3}}}"#,
    );
    let v = json_output("contour", &cfg);
    let summary = &v["summary"][0];
    assert_eq!(summary["expected_slope"].as_f64(), Some(0.5));
    assert!((summary["left_slope"].as_f64().unwrap() - 0.5).abs() < 0.1);
    assert_eq!(v["passed"], true);
}
