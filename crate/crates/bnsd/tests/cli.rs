//! End-to-end tests of the `bnsd-sweep` binary: output layout, config-file
//! precedence, and the exit-code contract (0 success, 2 configuration
//! error, 1 other failures).

use std::f64::consts::LN_2;
use std::io::Write;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bnsd-sweep"))
        .args(args)
        .output()
        .unwrap()
}

fn exit_code(output: &Output) -> i32 {
    output.status.code().expect("process terminated by signal")
}

fn stdout_str(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).unwrap()
}

fn stderr_str(output: &Output) -> String {
    String::from_utf8(output.stderr.clone()).unwrap()
}

#[test]
fn stdout_mode_prints_csv_then_blank_line_then_summary() {
    let output = run(&["--state", "w-standard", "--t-max", "2", "--steps", "5"]);
    assert_eq!(exit_code(&output), 0, "stderr: {}", stderr_str(&output));

    let text = stdout_str(&output);
    let (csv, summary) = text
        .split_once("\n\n")
        .expect("blank line between CSV and summary");
    let mut lines = csv.lines();
    assert_eq!(
        lines.next().unwrap(),
        "t,gamma_A,gamma_B,gamma_C,b3_numeric,b3_analytic,violates"
    );
    assert_eq!(lines.count(), 5);
    assert!(csv.contains(",true"));
    assert!(csv.contains(",false"));

    let summary_lines: Vec<&str> = summary.lines().collect();
    assert!(summary_lines[0].starts_with("initial_magnitude: "));
    assert!(summary_lines[1].starts_with("asymptotic_magnitude: "));
    assert_eq!(summary_lines[2], "outcome: dies_at");
    assert!(summary_lines[3].starts_with("tau_analytic: "));
    assert!(summary_lines[4].starts_with("tau_numeric: "));
    assert!(summary_lines[5].starts_with("tau_abs_difference: "));
}

#[test]
fn file_output_matches_stdout_output() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("table.csv");

    let to_stdout = run(&["--state", "w-standard", "--t-max", "1", "--steps", "4"]);
    assert_eq!(exit_code(&to_stdout), 0);
    let text = stdout_str(&to_stdout);
    let (csv_via_stdout, _) = text.split_once("\n\n").unwrap();

    let to_file = run(&[
        "--state",
        "w-standard",
        "--t-max",
        "1",
        "--steps",
        "4",
        "--output",
        path.to_str().unwrap(),
    ]);
    assert_eq!(exit_code(&to_file), 0);
    let file_bytes = std::fs::read_to_string(&path).unwrap();
    assert_eq!(format!("{csv_via_stdout}\n"), file_bytes);
    // Summary still goes to stdout in file mode, without the CSV.
    let summary = stdout_str(&to_file);
    assert!(summary.starts_with("initial_magnitude: "));
    assert!(!summary.contains("gamma_A"));
}

#[test]
fn find_tau_prints_only_the_crossing_lines() {
    let output = run(&["--state", "w-standard", "--find-tau"]);
    assert_eq!(exit_code(&output), 0);
    let text = stdout_str(&output);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 4);
    assert_eq!(lines[0], "outcome: dies_at");

    let value = |line: &str| -> f64 { line.split(": ").nth(1).unwrap().parse().unwrap() };
    let tau_analytic = value(lines[1]);
    let tau_numeric = value(lines[2]);
    let diff = value(lines[3]);
    assert!((tau_analytic - LN_2 / 2.0).abs() < 1e-12);
    assert!((tau_numeric - LN_2 / 2.0).abs() < 1e-9);
    assert!(diff < 1e-9);
}

#[test]
fn find_tau_reports_states_that_never_violate() {
    let output = run(&["--amps", "1,0,0", "--find-tau"]);
    assert_eq!(exit_code(&output), 0);
    assert_eq!(stdout_str(&output), "outcome: never_violates\n");
}

#[test]
fn find_tau_reports_a_violation_outliving_the_window() {
    let output = run(&["--state", "w-standard", "--t-max", "0.1", "--find-tau"]);
    assert_eq!(exit_code(&output), 0);
    let text = stdout_str(&output);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "outcome: persists_beyond_t_max");
    // The closed form still applies; only the numeric bracket is missing.
    assert!(lines[1].starts_with("tau_analytic: "));
    assert_eq!(lines.len(), 2);
}

#[test]
fn config_file_supplies_values_and_flags_override() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("sweep.conf");
    let mut file = std::fs::File::create(&path).unwrap();
    writeln!(file, "# shared settings").unwrap();
    writeln!(file, "state = w-standard").unwrap();
    writeln!(file, "t_max = 4.0").unwrap();
    writeln!(file, "steps = 3").unwrap();
    drop(file);

    // File alone: last row sits at t = 4.
    let output = run(&["--config", path.to_str().unwrap()]);
    assert_eq!(exit_code(&output), 0, "stderr: {}", stderr_str(&output));
    let text = stdout_str(&output);
    assert!(text.lines().nth(3).unwrap().starts_with("4,"));

    // Flag overrides the file's horizon.
    let output = run(&["--config", path.to_str().unwrap(), "--t-max", "2"]);
    assert_eq!(exit_code(&output), 0);
    let text = stdout_str(&output);
    assert!(text.lines().nth(3).unwrap().starts_with("2,"));
}

#[test]
fn configuration_errors_exit_with_code_2() {
    // No state source.
    assert_eq!(exit_code(&run(&["--t-max", "2"])), 2);
    // Unknown preset.
    assert_eq!(exit_code(&run(&["--state", "ghz"])), 2);
    // Unknown flag (argument parser error).
    assert_eq!(exit_code(&run(&["--state", "w-standard", "--bogus"])), 2);
    // Malformed amplitudes.
    assert_eq!(exit_code(&run(&["--amps", "1,2"])), 2);
    assert_eq!(exit_code(&run(&["--amps", "x,y,z"])), 2);
    // Unnormalized amplitudes with auto-normalization disabled.
    assert_eq!(exit_code(&run(&["--amps", "1,1,1", "--no-auto-normalize"])), 2);
    // Degenerate grid.
    assert_eq!(exit_code(&run(&["--state", "w-standard", "--steps", "1"])), 2);
    assert_eq!(exit_code(&run(&["--state", "w-standard", "--t-max", "0"])), 2);
    // Unreadable config file.
    assert_eq!(exit_code(&run(&["--config", "/no/such/file.conf"])), 2);
}

#[test]
fn config_file_errors_exit_with_code_2_and_name_the_line() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.conf");
    std::fs::write(&path, "state = w-standard\nsteps = 5\nsteps = 7\n").unwrap();
    let output = run(&["--config", path.to_str().unwrap()]);
    assert_eq!(exit_code(&output), 2);
    let err = stderr_str(&output);
    assert!(err.contains("line 3"), "stderr: {err}");
    assert!(err.contains("duplicate"), "stderr: {err}");
}

#[test]
fn unwritable_output_path_exits_with_code_1() {
    let output = run(&[
        "--state",
        "w-standard",
        "--steps",
        "3",
        "--output",
        "/nonexistent-dir/out.csv",
    ]);
    assert_eq!(exit_code(&output), 1);
    assert!(!stderr_str(&output).is_empty());
}

#[test]
fn help_and_version_exit_zero() {
    let help = run(&["--help"]);
    assert_eq!(exit_code(&help), 0);
    let text = stdout_str(&help);
    assert!(text.contains("Usage"));
    assert!(text.contains("--find-tau"));
    assert!(text.contains("EXIT CODES"));

    let version = run(&["--version"]);
    assert_eq!(exit_code(&version), 0);
    assert!(stdout_str(&version).contains("bnsd-sweep"));
}

#[test]
fn unequal_rates_are_reported_without_a_closed_form_tau() {
    let output = run(&["--state", "w-standard", "--gamma-rates", "1,1,2", "--find-tau"]);
    assert_eq!(exit_code(&output), 0);
    let text = stdout_str(&output);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "outcome: dies_at");
    assert!(lines[1].starts_with("tau_numeric: "));
    assert_eq!(lines.len(), 2);
    let tau: f64 = lines[1].split(": ").nth(1).unwrap().parse().unwrap();
    assert!(tau > 0.0 && tau < LN_2 / 2.0);
}
