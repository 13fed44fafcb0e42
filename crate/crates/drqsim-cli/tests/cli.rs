//! End-to-end tests of the `drqsim` binary: exit codes, output formats, and
//! byte determinism.

use std::path::Path;
use std::process::{Command, Output};

fn drqsim(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_drqsim"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("utf-8 stdout")
}

fn exit_code(output: &Output) -> i32 {
    output.status.code().expect("exit code")
}

#[test]
fn simulate_table1_srr_reports_thirteen_switches() {
    let out = drqsim(&[
        "simulate", "--dataset", "table1", "--policy", "srr", "--quantum", "3", "--format", "json",
    ]);
    assert_eq!(exit_code(&out), 0);
    let value: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(value["aggregates"]["ncs"], 13);
    assert_eq!(value["aggregates"]["avg_wt"], "15.33");
    assert_eq!(value["policy"], "srr:3");
    assert_eq!(value["dataset"], "table1");
}

#[test]
fn simulate_table1_drq_reports_nine_switches() {
    let out = drqsim(&["simulate", "--dataset", "table1", "--policy", "drq", "--format", "json"]);
    assert_eq!(exit_code(&out), 0);
    let value: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(value["aggregates"]["ncs"], 9);
    assert_eq!(value["gantt"].as_array().unwrap().len(), 8);
}

#[test]
fn simulate_missing_file_exits_two() {
    let out = drqsim(&["simulate", "--dataset", "missing.csv", "--policy", "fcfs"]);
    assert_eq!(exit_code(&out), 2);
    assert!(!output_is_empty(&out.stderr));
}

#[test]
fn simulate_malformed_file_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.csv");
    std::fs::write(&path, "P1,notanumber,5\n").unwrap();
    let out = drqsim(&["simulate", "--dataset", path.to_str().unwrap(), "--policy", "fcfs"]);
    assert_eq!(exit_code(&out), 1);
}

#[test]
fn simulate_reads_csv_and_json_files() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("w.csv");
    std::fs::write(&csv, "id,arrival,burst\nA,0,4\nB,1,2\n").unwrap();
    let json = dir.path().join("w.json");
    std::fs::write(
        &json,
        r#"[{"id":"A","arrival":0,"burst":4},{"id":"B","arrival":1,"burst":2}]"#,
    )
    .unwrap();
    for path in [csv, json] {
        let out = drqsim(&["simulate", "--dataset", path.to_str().unwrap(), "--policy", "fcfs"]);
        assert_eq!(exit_code(&out), 0, "{}", path.display());
        let value: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
        assert_eq!(value["processes"][1]["completion"], 6);
    }
}

#[test]
fn simulate_bad_policy_exits_one() {
    let out = drqsim(&["simulate", "--dataset", "table1", "--policy", "sjf"]);
    assert_eq!(exit_code(&out), 1);
    let out = drqsim(&["simulate", "--dataset", "table1", "--policy", "srr:0"]);
    assert_eq!(exit_code(&out), 1);
}

#[test]
fn simulate_stdout_is_byte_deterministic() {
    let args = ["simulate", "--dataset", "ds7", "--policy", "drq:online", "--format", "csv"];
    let first = drqsim(&args);
    let second = drqsim(&args);
    assert_eq!(exit_code(&first), 0);
    assert_eq!(first.stdout, second.stdout);
}

#[test]
fn hidden_tick_engine_matches_segment_engine() {
    for policy in ["fcfs", "srr:4", "drq", "drq:online:measured"] {
        let segment = drqsim(&["simulate", "--dataset", "ds6", "--policy", policy]);
        let tick = drqsim(&[
            "simulate", "--dataset", "ds6", "--policy", policy, "--engine", "tick",
        ]);
        assert_eq!(exit_code(&segment), 0);
        assert_eq!(segment.stdout, tick.stdout, "{policy}");
    }
}

#[test]
fn gantt_flag_appends_chart() {
    let dir = tempfile::tempdir().unwrap();
    let result_path = dir.path().join("result.json");
    let out = drqsim(&[
        "simulate",
        "--dataset",
        "table1",
        "--policy",
        "srr:3",
        "-o",
        result_path.to_str().unwrap(),
        "--gantt",
        "ascii",
    ]);
    assert_eq!(exit_code(&out), 0);
    // Result went to the file, chart to stdout.
    let chart = stdout(&out);
    assert!(chart.starts_with("|P4 |P5 |"));
    let saved = std::fs::read_to_string(&result_path).unwrap();
    let value: serde_json::Value = serde_json::from_str(&saved).unwrap();
    assert_eq!(value["aggregates"]["ncs"], 13);
}

#[test]
fn gantt_svg_writes_to_its_own_file() {
    let dir = tempfile::tempdir().unwrap();
    let svg_path = dir.path().join("chart.svg");
    let out = drqsim(&[
        "simulate",
        "--dataset",
        "table1",
        "--policy",
        "drq",
        "--gantt",
        "svg",
        "--gantt-output",
        svg_path.to_str().unwrap(),
    ]);
    assert_eq!(exit_code(&out), 0);
    let svg = std::fs::read_to_string(&svg_path).unwrap();
    assert_eq!(svg.matches("<rect ").count(), 8);
}

#[test]
fn compare_single_dataset_summary_equals_row() {
    let out = drqsim(&[
        "compare", "--datasets", "table1", "--base", "srr:3", "--candidate", "drq", "--format",
        "json",
    ]);
    assert_eq!(exit_code(&out), 0);
    let value: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let rows = value["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 1);
    assert_eq!(rows[0]["improvement"], value["summary"]);
    assert_eq!(rows[0]["improvement"]["ncs"], "30.77");
}

#[test]
fn compare_expands_dataset_ranges() {
    let out = drqsim(&[
        "compare", "--datasets", "ds1..ds10", "--base", "srr:3", "--candidate", "drq", "--format",
        "csv",
    ]);
    assert_eq!(exit_code(&out), 0);
    let text = stdout(&out);
    // Header + ten rows + average.
    assert_eq!(text.lines().count(), 12);
    assert!(text.lines().last().unwrap().starts_with("average,"));
}

#[test]
fn compare_markdown_is_default() {
    let out = drqsim(&["compare", "--datasets", "table1", "--base", "srr:3", "--candidate", "drq"]);
    assert_eq!(exit_code(&out), 0);
    assert!(stdout(&out).starts_with("| dataset |"));
}

#[test]
fn generate_writes_deterministic_workloads() {
    let args = ["generate", "--count", "20", "--seed", "7"];
    let first = drqsim(&args);
    let second = drqsim(&args);
    assert_eq!(exit_code(&first), 0);
    assert_eq!(first.stdout, second.stdout);
    let text = stdout(&first);
    assert_eq!(text.lines().count(), 21); // header + 20 rows
    assert!(text.starts_with("id,arrival,burst\n"));
}

#[test]
fn generate_to_file_and_reuse_as_dataset() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("w.csv");
    let out = drqsim(&[
        "generate", "--count", "5", "--seed", "11", "-o", path.to_str().unwrap(),
    ]);
    assert_eq!(exit_code(&out), 0);
    assert!(Path::new(&path).exists());
    let sim = drqsim(&["simulate", "--dataset", path.to_str().unwrap(), "--policy", "drq"]);
    assert_eq!(exit_code(&sim), 0);
}

#[test]
fn generate_zero_count_exits_one() {
    let out = drqsim(&["generate", "--count", "0"]);
    assert_eq!(exit_code(&out), 1);
}

#[test]
fn reproduce_flags_matches_and_divergences() {
    let out = drqsim(&["reproduce"]);
    assert_eq!(exit_code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("19,17,23,22,2,9   MATCHES-PAPER"));
    assert!(text.contains("13   MATCHES-PAPER"));
    assert!(text.contains("9   MATCHES-PAPER"));
    assert!(text.contains("round quanta          6,3   MATCHES-PAPER"));
    // The dynamic-quantum averages cannot match the published figures.
    assert!(text.contains("average waiting       15.83   DIVERGES"));
    assert!(text.contains("average turnaround    21.17   DIVERGES"));
    // Both Gantt charts are present.
    assert!(text.contains("|P4 |P5 |P3 |P2 |P1 |P6 |P4 |P3 |P2 |P1 |P4 |P3 |"));
    assert!(text.contains("|P4 |P5 |P3 |P2 |P1 |P6 |P3 |P4 |"));
}

#[test]
fn help_lists_flags_for_every_subcommand() {
    for (sub, flags) in [
        ("simulate", vec!["--dataset", "--policy", "--quantum", "--threshold", "--drq-mode", "--trq-mode", "--format", "--gantt", "--output"]),
        ("compare", vec!["--datasets", "--base", "--candidate", "--format", "--output"]),
        ("generate", vec!["--count", "--seed", "--arrival-max", "--burst-max", "--format", "--output"]),
        ("reproduce", vec![]),
    ] {
        let out = drqsim(&[sub, "--help"]);
        assert_eq!(exit_code(&out), 0, "{sub} --help");
        let text = stdout(&out);
        for flag in flags {
            assert!(text.contains(flag), "{sub} --help missing {flag}");
        }
    }
    // The tick engine stays hidden.
    let out = drqsim(&["simulate", "--help"]);
    assert!(!stdout(&out).contains("--engine"));
}

#[test]
fn unknown_flags_exit_one() {
    let out = drqsim(&["simulate", "--dataset", "table1", "--policy", "fcfs", "--bogus"]);
    assert_eq!(exit_code(&out), 1);
}

fn output_is_empty(bytes: &[u8]) -> bool {
    bytes.is_empty()
}
