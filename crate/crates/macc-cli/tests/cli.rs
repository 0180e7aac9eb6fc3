//! End-to-end tests of the binary: exit codes, round trips through the grid
//! text format, and the shape of the JSON and CSV outputs.

use std::path::PathBuf;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_macc")).args(args).output().expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).unwrap()
}

fn temp_path(name: &str) -> PathBuf {
    let mut path = std::env::temp_dir();
    path.push(format!("macc-cli-test-{}-{name}", std::process::id()));
    path
}

#[test]
fn construct_then_validate_round_trips() {
    let grid_path = temp_path("roundtrip.txt");
    let out = run(&["construct", "--K", "12", "--k", "2", "--L", "4", "--out",
        grid_path.to_str().unwrap()]);
    assert!(out.status.success());
    let descriptor: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(descriptor["K"], 12);
    assert_eq!(descriptor["Z"], 8);
    assert_eq!(descriptor["S"], 12);
    assert_eq!(descriptor["g"], 4);
    assert_eq!(descriptor["t"], 2);
    assert_eq!(descriptor["F"], 12);

    let out = run(&["validate", grid_path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["is_pda"], true);
    assert_eq!(report["Z"], 8);
    assert_eq!(report["S"], 12);
    assert_eq!(report["g"], 4);
    assert_eq!(report["t"], 2);
    std::fs::remove_file(grid_path).ok();
}

#[test]
fn validate_flags_broken_grids_with_exit_one() {
    let grid_path = temp_path("broken.txt");
    std::fs::write(&grid_path, "2 2\n0 0\n* *\n").unwrap();
    let out = run(&["validate", grid_path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["is_pda"], false);
    assert_eq!(report["violations"][0]["condition"], "C3a");
    std::fs::remove_file(grid_path).ok();
}

#[test]
fn validate_reports_format_errors_with_exit_three() {
    let grid_path = temp_path("malformed.txt");
    std::fs::write(&grid_path, "2 3\n* 0\n* * *\n").unwrap();
    let out = run(&["validate", grid_path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    std::fs::remove_file(grid_path).ok();

    let out = run(&["validate", "/nonexistent/macc-grid.txt"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn construct_rejects_bad_parameters_with_exit_two() {
    let out = run(&["construct", "--K", "12", "--k", "5", "--L", "1"]);
    assert_eq!(out.status.code(), Some(2));
    let message = String::from_utf8(out.stderr).unwrap();
    assert!(message.contains("does not divide"), "got: {message}");

    let out = run(&["construct", "--K", "12", "--k", "2", "--L", "6"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn simulate_reports_and_succeeds() {
    let out = run(&[
        "simulate", "--K", "12", "--k", "2", "--L", "4", "--N", "12", "--subfile-size", "64",
        "--seed", "7",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["rate"]["exact"], "1");
    assert_eq!(report["gain_histogram"]["4"], 12);
    assert_eq!(report["decode_ok"].as_array().unwrap().len(), 12);
    assert_eq!(report["bytes_sent"], 768);
}

#[test]
fn simulate_accepts_an_explicit_demand_vector() {
    let out = run(&[
        "simulate", "--K", "6", "--k", "1", "--L", "4", "--N", "6", "--subfile-size", "16",
        "--seed", "3", "--demands", "0,1,2,3,4,5",
    ]);
    assert_eq!(out.status.code(), Some(0));

    let out = run(&[
        "simulate", "--K", "6", "--k", "1", "--L", "4", "--N", "6", "--subfile-size", "16",
        "--seed", "3", "--demands", "0,1",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn compare_emits_all_schemes_or_one() {
    let out = run(&["compare", "--K", "12", "--k", "2", "--L", "4"]);
    assert_eq!(out.status.code(), Some(0));
    let rows: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(rows.as_array().unwrap().len(), 6);

    let out = run(&["compare", "--K", "12", "--k", "2", "--L", "4", "--scheme", "spe"]);
    let rows: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(rows[0]["scheme"], "SPE");
    assert_eq!(rows[0]["subpacketization"], "18");

    let out = run(&["compare", "--K", "12", "--k", "2", "--L", "4", "--scheme", "nope"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn sweep_csv_matches_the_rate_formula_for_the_new_scheme() {
    let out = run(&["sweep", "--K", "24"]);
    assert_eq!(out.status.code(), Some(0));
    let csv = stdout(&out);
    let mut lines = csv.lines();
    assert_eq!(lines.next().unwrap(), "K,k,L,gamma,scheme,rate,gain,subpacketization,applicable,reason");

    let mut checked = 0;
    for line in lines {
        let fields: Vec<&str> = line.split(',').collect();
        assert_eq!(fields.len(), 10, "line: {line}");
        if fields[4] != "New" || fields[7].is_empty() {
            continue;
        }
        let (k, l): (f64, f64) = (fields[1].parse().unwrap(), fields[2].parse().unwrap());
        let rate: f64 = fields[5].parse().unwrap();
        let expected = (24.0 - k * l) * (24.0 - k * l + k) / 48.0;
        assert!((rate - expected).abs() < 1e-4, "line: {line}");
        checked += 1;
    }
    assert_eq!(checked, 15, "expected 15 constructible rows");
}

#[test]
fn sweep_writes_csv_and_json_files() {
    let csv_path = temp_path("sweep.csv");
    let json_path = temp_path("sweep.json");
    let out = run(&[
        "sweep", "--K", "12", "--out", csv_path.to_str().unwrap(), "--json",
        json_path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let csv = std::fs::read_to_string(&csv_path).unwrap();
    assert!(csv.starts_with("K,k,L,gamma,scheme"));
    let json: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&json_path).unwrap()).unwrap();
    assert_eq!(json["K"], 12);
    assert!(json["points"].as_array().unwrap().len() >= 7);
    std::fs::remove_file(csv_path).ok();
    std::fs::remove_file(json_path).ok();
}
