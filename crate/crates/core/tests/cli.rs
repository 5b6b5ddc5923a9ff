//! End-to-end tests of the installed binary: exit codes, stream routing,
//! output formats, and seed determinism.

use std::path::PathBuf;
use std::process::Command;

fn run(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_adiabatic-lab"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&out.stdout).into_owned(),
        String::from_utf8_lossy(&out.stderr).into_owned(),
    )
}

fn tmp_path(tag: &str) -> PathBuf {
    std::env::temp_dir().join(format!("adiabatic-lab-cli-{}-{tag}", std::process::id()))
}

#[test]
fn help_and_version_exit_zero() {
    assert_eq!(run(&["--help"]).0, 0);
    assert_eq!(run(&["--version"]).0, 0);
    assert_eq!(run(&["gap-scan", "--help"]).0, 0);
}

#[test]
fn usage_errors_exit_sixty_four() {
    let (code, _, stderr) = run(&["frobnicate"]);
    assert_eq!(code, 64, "unknown subcommand: {stderr}");
    let (code, _, _) = run(&["gap-scan"]);
    assert_eq!(code, 64, "missing required arguments");
    let (code, _, _) = run(&["evolve", "--family", "search", "--n", "3", "--t", "five"]);
    assert_eq!(code, 64, "non-numeric value");
}

#[test]
fn oversized_dense_request_is_a_capacity_error() {
    let (code, _, stderr) =
        run(&["gap-scan", "--family", "search", "--n", "20", "--backend", "dense"]);
    assert_eq!(code, 2, "stderr: {stderr}");
    assert!(stderr.contains("error:"), "stderr: {stderr}");
}

#[test]
fn invalid_physics_input_is_a_runtime_error() {
    let (code, _, stderr) = run(&[
        "evolve", "--family", "hamming", "--n", "3", "--schedule", "constant", "--t", "0",
    ]);
    assert_eq!(code, 1, "stderr: {stderr}");
    assert!(stderr.contains("error:"), "stderr: {stderr}");
}

#[test]
fn gap_scan_csv_matches_the_closed_form() {
    let path = tmp_path("gapscan.csv");
    let (code, stdout, stderr) = run(&[
        "gap-scan", "--family", "hamming", "--n", "4",
        "--out", path.to_str().unwrap(),
    ]);
    assert_eq!(code, 0, "stderr: {stderr}");
    assert!(stdout.contains("gap-scan:"), "summary goes to stdout when the report is filed");
    let text = std::fs::read_to_string(&path).unwrap();
    std::fs::remove_file(&path).ok();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("s,lambda0,lambda1,gap"));
    let mut rows = 0;
    for line in lines {
        let cols: Vec<&str> = line.split(',').collect();
        assert_eq!(cols.len(), 4, "row: {line}");
        let s: f64 = cols[0].parse().unwrap();
        let gap: f64 = cols[3].parse().unwrap();
        let exact = (2.0 * s * s - 2.0 * s + 1.0).sqrt();
        assert!((gap - exact).abs() <= 1e-10, "s={s}: gap {gap} vs {exact}");
        rows += 1;
    }
    assert_eq!(rows, 101);
}

#[test]
fn seeded_outputs_are_deterministic() {
    let args = [
        "trotter-sweep", "--family", "hamming", "--n", "3", "--t", "5",
        "--r", "16,32", "--seed", "7",
    ];
    let first = run(&args);
    let second = run(&args);
    assert_eq!(first.0, 0, "stderr: {}", first.2);
    assert_eq!(first.1, second.1, "same seed must give identical bytes");
    let mut other_args = args;
    other_args[10] = "8";
    let third = run(&other_args);
    assert_eq!(third.0, 0);
    assert_ne!(first.1, third.1, "a different seed must change the report");
    assert!(first.1.starts_with("# seed=7\n"), "got: {}", &first.1[..30.min(first.1.len())]);
    assert!(first.1.contains("r,T,n,error_vs_reference"));
}

#[test]
fn evolve_emits_parseable_json() {
    let (code, stdout, stderr) = run(&[
        "evolve", "--family", "search", "--n", "3", "--schedule", "adaptive", "--c", "2",
    ]);
    assert_eq!(code, 0, "stderr: {stderr}");
    let doc: serde_json::Value = serde_json::from_str(&stdout).expect("stdout is JSON");
    for key in ["family", "schedule", "total_delay", "overlap_ground", "norm_drift", "steps"] {
        assert!(doc.get(key).is_some(), "missing key {key} in {doc}");
    }
    let overlap = doc["overlap_ground"].as_f64().unwrap();
    assert!((0.0..=1.0).contains(&overlap));
    assert!(stderr.contains("evolve:"), "summary goes to stderr: {stderr}");
}

#[test]
fn min_gap_scaling_json_is_an_array_with_bounds() {
    let (code, stdout, _) =
        run(&["min-gap-scaling", "--family", "perturbed-spike", "--n", "8..=10", "--json"]);
    assert_eq!(code, 0);
    let rows: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    let rows = rows.as_array().unwrap();
    assert_eq!(rows.len(), 3);
    for row in rows {
        let g_min = row["g_min"].as_f64().unwrap();
        let bound = row["bound"].as_f64().unwrap();
        assert!(g_min <= bound);
    }
}

#[test]
fn lower_bound_json_carries_the_gap_certificate() {
    let (code, stdout, _) = run(&["lower-bound", "--n", "8"]);
    assert_eq!(code, 0);
    let doc: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    let norm = doc["norm_AB"].as_f64().unwrap();
    let gap = doc["gap_at_sc"].as_f64().unwrap();
    assert!(gap <= 2.0 * norm + 1e-12, "gap {gap} vs 2·‖A−B‖ = {}", 2.0 * norm);
}

#[test]
fn lemma1_report_goes_to_the_out_file() {
    let path = tmp_path("lemma1.csv");
    let (code, stdout, stderr) = run(&[
        "lemma1-check", "--family", "hamming", "--n", "2", "--t", "2",
        "--delta", "0.01", "--trials", "5", "--seed", "3",
        "--out", path.to_str().unwrap(),
    ]);
    assert_eq!(code, 0, "stderr: {stderr}");
    assert!(stdout.contains("lemma1-check:"));
    let text = std::fs::read_to_string(&path).unwrap();
    std::fs::remove_file(&path).ok();
    assert!(text.starts_with("# seed=3\n"));
    assert!(text.contains("trial,distance,bound"));
    assert_eq!(text.lines().count(), 2 + 5, "seed line, header, five trials");
}

#[test]
fn sat_reconstruct_reports_witness_and_verification() {
    let path = tmp_path("phi.cnf");
    std::fs::write(&path, "p cnf 4 3\n1 -2 3 0\n-1 4 0\n2 0\n").unwrap();
    let (code, stdout, _) = run(&["sat-reconstruct", "--formula", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    let doc: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(doc["satisfiable"], serde_json::json!(true));
    assert_eq!(doc["witness"], serde_json::json!("0110"));
    assert_eq!(doc["query_count"], serde_json::json!(15));

    let (code, stdout, _) = run(&[
        "sat-reconstruct", "--formula", path.to_str().unwrap(), "--verify-all",
    ]);
    std::fs::remove_file(&path).ok();
    assert_eq!(code, 0);
    let mut lines = stdout.lines();
    assert_eq!(lines.next(), Some("b,F_reconstructed,F_direct,match"));
    let mut rows = 0;
    for line in lines {
        assert!(line.ends_with(",true"), "mismatched row: {line}");
        rows += 1;
    }
    assert_eq!(rows, 16);
}

#[test]
fn missing_formula_file_is_a_runtime_error() {
    let (code, _, stderr) = run(&["sat-reconstruct", "--formula", "/nonexistent/phi.cnf"]);
    assert_eq!(code, 1);
    assert!(stderr.contains("error:"));
}

#[test]
fn search_delay_csv_has_closed_form_column() {
    let (code, stdout, _) = run(&["search-delay", "--n", "1..=4"]);
    assert_eq!(code, 0);
    let mut lines = stdout.lines();
    let header = lines.next().unwrap();
    assert!(header.starts_with("n,"), "header: {header}");
    assert_eq!(lines.count(), 4);
}
