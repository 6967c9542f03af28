use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_tube-dynamo"))
}

fn write_config(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let path = dir.path().join(name);
    fs::write(&path, text).unwrap();
    path
}

fn run(args: &[&str], config: &Path) -> Output {
    let mut cmd = bin();
    cmd.arg(args[0]).arg(config).args(&args[1..]);
    cmd.output().unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

/// Header plus rows as column-name lookups.
fn parse_csv(text: &str) -> Vec<std::collections::HashMap<String, String>> {
    let mut lines = text.lines();
    let header: Vec<&str> = lines.next().unwrap().split(',').collect();
    lines
        .map(|l| header.iter().map(|h| h.to_string()).zip(l.split(',').map(String::from)).collect())
        .collect()
}

fn num(row: &std::collections::HashMap<String, String>, key: &str) -> f64 {
    row[key].parse().unwrap_or_else(|_| panic!("{key} = {:?}", row[key]))
}

#[test]
fn radial_sweep_reports_oracle_and_stated_roots() {
    let dir = TempDir::new().unwrap();
    let cfg = write_config(&dir, "r.cfg", "[radial_modes]\ngamma = 0\nsweep = eta 1e-6 1e-1 6\nsweep_spacing = log\n");
    let out = run(&["run"], &cfg);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(!text.contains('\r'));
    let rows = parse_csv(&text);
    assert_eq!(rows.len(), 6);
    for row in &rows {
        assert_eq!(num(row, "oracle_n_plus_re"), -1.0);
        assert_eq!(num(row, "oracle_n_minus_re"), -2.0);
        assert_eq!(num(row, "stated_n_plus"), 2.0);
        assert_eq!(num(row, "stated_n_minus"), -5.0);
        assert_eq!(row["exponent_verdict"], "inconsistent");
        assert_eq!(row["status"], "ok");
    }
    assert_eq!(num(&rows[0], "eta"), 1e-6);
}

#[test]
fn chicone_latushkin_sweep_without_diffusion() {
    let dir = TempDir::new().unwrap();
    let cfg = write_config(&dir, "c.cfg", "[chicone_latushkin]\neta = 0\nsweep = kappa -2 0 9\n");
    let out = run(&["run"], &cfg);
    assert_eq!(out.status.code(), Some(0));
    let rows = parse_csv(&stdout(&out));
    assert_eq!(rows.len(), 9);
    for row in &rows {
        let kappa = num(row, "kappa");
        let expected = 0.5 * (-4.0 * kappa).sqrt();
        assert!((num(row, "growth_rate") - expected).abs() <= 1e-15, "kappa {kappa}");
    }
    assert_eq!(num(rows.last().unwrap(), "growth_rate"), 0.0);
}

#[test]
fn diffusionless_filament_keeps_its_field() {
    let dir = TempDir::new().unwrap();
    let cfg = write_config(&dir, "d.cfg", "[diffusive_filament]\nb0 = 2.5\neta = 0\n");
    let out = run(&["run"], &cfg);
    assert_eq!(out.status.code(), Some(0));
    let rows = parse_csv(&stdout(&out));
    assert_eq!(rows.len(), 1);
    assert_eq!(num(&rows[0], "b_s_end"), 2.5);
}

#[test]
fn unknown_key_is_a_config_error_naming_the_key() {
    let dir = TempDir::new().unwrap();
    let cfg = write_config(&dir, "u.cfg", "# comment\n[radial_modes]\neta = 0.1\nwobble = 3\n");
    let out = run(&["run"], &cfg);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("wobble"), "{err}");
    assert!(err.contains("line 4"), "{err}");
    assert!(out.stdout.is_empty());
}

#[test]
fn report_requires_a_report_scenario() {
    let dir = TempDir::new().unwrap();
    let cfg = write_config(&dir, "h.cfg", "[heliotron]\n");
    assert_eq!(run(&["report"], &cfg).status.code(), Some(2));
}

#[test]
fn failing_cells_mark_rows_and_exit_three() {
    let dir = TempDir::new().unwrap();
    let cfg = write_config(&dir, "bad.cfg", "[radial_modes]\nsweep = eta 0 0.1 3\n");
    let out = run(&["run"], &cfg);
    assert_eq!(out.status.code(), Some(3));
    let rows = parse_csv(&stdout(&out));
    assert_eq!(rows.len(), 3);
    assert!(rows[0]["status"].starts_with("error:"));
    assert_eq!(rows[1]["status"], "ok");
    assert_eq!(rows[2]["status"], "ok");
}

#[test]
fn json_output_to_file() {
    let dir = TempDir::new().unwrap();
    let cfg = write_config(&dir, "r.cfg", "[radial_modes]\nsweep = eta 0.01 0.1 2\n");
    let target = dir.path().join("out.json");
    let out = run(&["run", "--format", "json", "--output", target.to_str().unwrap()], &cfg);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let value: serde_json::Value = serde_json::from_str(&fs::read_to_string(&target).unwrap()).unwrap();
    assert_eq!(value["scenario"], "radial_modes");
    let rows = value["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 2);
    assert_eq!(rows[1]["parameters"]["eta"], 0.1);
    assert_eq!(rows[0]["outputs"]["oracle_n_plus_re"], -1.0);
    assert_eq!(rows[0]["dynamo_class"], "marginal");
}

#[test]
fn config_output_and_format_are_used() {
    let dir = TempDir::new().unwrap();
    let cfg = write_config(&dir, "c.cfg", "[curvature_report]\noutput = report.json\nformat = json\n");
    let out = run(&["report"], &cfg);
    assert_eq!(out.status.code(), Some(0));
    let text = fs::read_to_string(dir.path().join("report.json")).unwrap();
    let value: serde_json::Value = serde_json::from_str(&text).unwrap();
    let entries = value["entries"].as_array().unwrap();
    assert!(entries.iter().any(|e| e["equation"] == "zeldovich_marginal" && e["verdict"] == "consistent"));
    assert!(entries.iter().any(|e| e["equation"] == "torsion_quantization" && e["verdict"] == "dimensional_warning"));
}

#[test]
fn report_is_deterministic_across_job_counts() {
    let dir = TempDir::new().unwrap();
    let cfg = write_config(&dir, "c.cfg", "[curvature_report]\nsweep = r 0.1 0.9 9\n");
    let a = run(&["report", "--jobs", "1"], &cfg);
    let b = run(&["report", "--jobs", "3"], &cfg);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let text = stdout(&a);
    assert!(text.starts_with("equation,quantity,point,stated_value,oracle_value"));
    assert_eq!(text.matches("\ncurvature_chain_2,").count(), 18);
}

#[test]
fn bad_arguments_exit_two() {
    let dir = TempDir::new().unwrap();
    let cfg = write_config(&dir, "r.cfg", "[radial_modes]\n");
    assert_eq!(run(&["run", "--format", "xml"], &cfg).status.code(), Some(2));
    assert_eq!(run(&["run", "--tolerance", "-1"], &cfg).status.code(), Some(2));
    assert_eq!(bin().args(["run", "/definitely/missing.cfg"]).output().unwrap().status.code(), Some(2));
}
