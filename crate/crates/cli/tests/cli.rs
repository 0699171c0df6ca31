use std::fs;
use std::process::Command;

use blockage_cli::{parse_args, Mode, ResultRow, RhoSpec, CSV_HEADER};

fn blockage() -> Command {
    Command::new(env!("CARGO_BIN_EXE_blockage"))
}

#[test]
fn parses_log_spaced_sweep() {
    let cfg = parse_args([
        "blockage", "sweep", "--rho-min", "0.01", "--rho-max", "0.5", "--rho-steps", "20",
        "--rho-spacing", "log", "--radius", "5", "--radius", "10", "--radius", "20",
        "--zeta-db", "-20", "--trials", "100000", "--seed", "7",
    ])
    .unwrap();
    assert_eq!(cfg.mode, Mode::Sweep);
    assert_eq!(cfg.radii, vec![5.0, 10.0, 20.0]);
    assert_eq!(cfg.zeta_db, -20.0);
    assert_eq!(cfg.seed, 7);
    assert!(matches!(cfg.rho, RhoSpec::Range { steps: 20, .. }));
    let rhos = cfg.rho.values();
    assert_eq!(rhos.first(), Some(&0.01));
    assert_eq!(rhos.last(), Some(&0.5));
    assert!((cfg.geometry.min_distance() - 0.4).abs() < 1e-15);
}

#[test]
fn sweep_writes_header_plus_one_row_per_cell() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("sweep.csv");
    let status = blockage()
        .args(["sweep", "--rho-steps", "20", "--rho-spacing", "log", "--trials", "200"])
        .arg("--out")
        .arg(&out)
        .status()
        .unwrap();
    assert!(status.success());
    let text = fs::read_to_string(&out).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 61);
    assert_eq!(lines[0], CSV_HEADER.join(","));
    assert!(!text.contains("e-"));
}

#[test]
fn repeated_runs_write_identical_files() {
    let dir = tempfile::tempdir().unwrap();
    let run = |name: &str, threads: &str| {
        let out = dir.path().join(name);
        let status = blockage()
            .args(["sweep", "--rho-steps", "4", "--trials", "3000", "--chunk-size", "500"])
            .args(["--threads", threads, "--seed", "11"])
            .arg("--out")
            .arg(&out)
            .status()
            .unwrap();
        assert!(status.success());
        fs::read(out).unwrap()
    };
    let a = run("a.csv", "1");
    assert_eq!(a, run("b.csv", "1"));
    assert_eq!(a, run("c.csv", "3"));
}

#[test]
fn json_output_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("cells.json");
    let status = blockage()
        .args(["sweep", "--rho-steps", "3", "--radius", "10", "--trials", "500", "--format", "json"])
        .arg("--out")
        .arg(&out)
        .status()
        .unwrap();
    assert!(status.success());
    let text = fs::read_to_string(&out).unwrap();
    let rows: Vec<ResultRow> = serde_json::from_str(&text).unwrap();
    assert_eq!(rows.len(), 3);
    assert!(rows.iter().all(|r| r.r == 10.0 && r.trials == 500));
    let mut again = serde_json::to_string_pretty(&rows).unwrap();
    again.push('\n');
    assert_eq!(again, text);
}

#[test]
fn eval_at_zero_intensity_is_lossless() {
    let out = blockage()
        .args(["eval", "--rho", "0", "--trials", "100"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let row = text.lines().nth(1).unwrap();
    assert!(row.starts_with("0,10,0,0,0,0,0,0,0,true,100,"), "{row}");
}

#[test]
fn invalid_geometry_is_a_usage_error() {
    let out = blockage()
        .args(["sweep", "--radius", "0.1", "--trials", "10"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
    assert!(!out.stderr.is_empty());
}

#[test]
fn unknown_flag_is_named() {
    let out = blockage().args(["sweep", "--bogus"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("--bogus"));
}

#[test]
fn positive_loss_is_rejected() {
    let out = blockage()
        .args(["eval", "--rho", "0.1", "--zeta-db", "3"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn unwritable_output_names_the_path() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("missing").join("x.csv");
    let result = blockage()
        .args(["eval", "--rho", "0.1", "--trials", "100"])
        .arg("--out")
        .arg(&out)
        .output()
        .unwrap();
    assert_eq!(result.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&result.stderr).contains("missing"));
}

#[test]
fn outage_mode_writes_one_row_per_threshold() {
    let out = blockage()
        .args(["outage", "--rho", "0.2", "--threshold-db", "-10", "--threshold-db", "-30"])
        .args(["--trials", "2000"])
        .output()
        .unwrap();
    assert!(out.status.success());
    assert_eq!(String::from_utf8(out.stdout).unwrap().lines().count(), 3);
}

#[test]
fn validate_reports_every_check() {
    let out = blockage()
        .args(["validate", "--trials", "20000"])
        .output()
        .unwrap();
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(out.status.success(), "{text}");
    assert_eq!(text.lines().filter(|l| l.starts_with("PASS ")).count(), 7);
    assert!(text.contains("7 of 7 checks passed"));
}
