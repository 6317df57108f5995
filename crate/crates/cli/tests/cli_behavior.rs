//! End-to-end tests of the installed binary: exit codes, diagnostics,
//! report determinism, and guard behavior.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_gradcat"));
    // Keep runs hermetic: the ambient environment must not resize guards.
    cmd.env_remove("GRADCAT_GUARD");
    cmd
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("the binary runs")
}

fn spec_file(dir: &tempfile::TempDir, name: &str, text: &str) -> PathBuf {
    let path = dir.path().join(name);
    let mut file = std::fs::File::create(&path).unwrap();
    file.write_all(text.as_bytes()).unwrap();
    path
}

fn corpus_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join(format!("../../corpus/{name}.json"))
}

fn stdout_of(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).unwrap()
}

fn stderr_of(output: &Output) -> String {
    String::from_utf8(output.stderr.clone()).unwrap()
}

fn classify(path: &Path) -> Output {
    run(&["classify", path.to_str().unwrap()])
}

#[test]
fn an_empty_file_is_a_parse_error_with_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let path = spec_file(&dir, "empty.json", "");
    let output = classify(&path);
    assert_eq!(output.status.code(), Some(2));
    assert!(stderr_of(&output).contains("parse error"));
}

#[test]
fn an_unreadable_path_is_a_parse_error_with_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let output = classify(&dir.path().join("missing.json"));
    assert_eq!(output.status.code(), Some(2));
}

#[test]
fn an_arity_mismatch_is_a_schema_error_naming_the_equation() {
    let dir = tempfile::tempdir().unwrap();
    let path = spec_file(
        &dir,
        "arity.json",
        r#"{"version": 1, "payload": {"kind": "functor", "name": "bad",
            "ops": [{"sym": "f", "arity": 2}],
            "eqs": [{"lhs": {"op": "f", "args": [0]}, "rhs": {"op": "f", "args": [1, 0]}}]}}"#,
    );
    let output = classify(&path);
    assert_eq!(output.status.code(), Some(3));
    let diagnostic = stderr_of(&output);
    assert!(diagnostic.contains("schema violation"), "{diagnostic}");
    assert!(diagnostic.contains("eqs[0]"), "{diagnostic}");
}

#[test]
fn an_unsupported_version_is_a_schema_error_with_exit_three() {
    let dir = tempfile::tempdir().unwrap();
    let path = spec_file(
        &dir,
        "v7.json",
        r#"{"version": 7, "payload": {"kind": "builtin", "name": "id"}}"#,
    );
    let output = classify(&path);
    assert_eq!(output.status.code(), Some(3));
    assert!(stderr_of(&output).contains("version"));
}

#[test]
fn an_unknown_builtin_is_a_schema_error_with_exit_three() {
    let dir = tempfile::tempdir().unwrap();
    let path = spec_file(
        &dir,
        "builtin.json",
        r#"{"version": 1, "payload": {"kind": "builtin", "name": "mystery"}}"#,
    );
    let output = classify(&path);
    assert_eq!(output.status.code(), Some(3));
    assert!(stderr_of(&output).contains("mystery"));
}

#[test]
fn an_unknown_payload_field_is_a_schema_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = spec_file(
        &dir,
        "extra.json",
        r#"{"version": 1, "payload": {"kind": "builtin", "name": "id", "extra": true}}"#,
    );
    let output = classify(&path);
    assert_eq!(output.status.code(), Some(3));
}

#[test]
fn classifying_the_shipped_collapse_entry_reports_its_regime() {
    let output = classify(&corpus_path("c01"));
    assert_eq!(output.status.code(), Some(0));
    let text = stdout_of(&output);
    assert!(text.contains("collapse regime"), "{text}");
    assert!(text.contains("classify/collapse-square"), "{text}");
}

#[test]
fn classifying_the_identity_entry_recovers_an_exponent() {
    let output = classify(&corpus_path("id"));
    assert_eq!(output.status.code(), Some(0));
    let text = stdout_of(&output);
    assert!(text.contains("right-adjoint regime"), "{text}");
    assert!(text.contains("exponent of size 1"), "{text}");
}

#[test]
fn the_counterexample_suite_reports_a_witness_per_level() {
    let output = run(&["suite", "counterexamples", "--depth", "20"]);
    assert_eq!(output.status.code(), Some(0));
    let text = stdout_of(&output);
    assert!(text.contains("all 21 legs merge a pair"), "{text}");
    assert!(text.contains("1048576"), "{text}");
}

#[test]
fn grading_an_object_spec_checks_the_axioms_on_it() {
    let dir = tempfile::tempdir().unwrap();
    let path = spec_file(
        &dir,
        "pos.json",
        r#"{"version": 1, "payload": {"kind": "object", "cat": "pos",
            "carrier": ["a", "b", "c"], "le": [["a", "b"], ["b", "c"], ["a", "c"]]}}"#,
    );
    let output = run(&["grade", path.to_str().unwrap()]);
    assert_eq!(output.status.code(), Some(0));
    let text = stdout_of(&output);
    assert!(text.contains("grade 6"), "{text}");
    assert!(text.contains("object/grade-axioms"), "{text}");
}

#[test]
fn grading_a_functor_spec_is_a_schema_error() {
    let output = run(&["grade", corpus_path("id").to_str().unwrap()]);
    assert_eq!(output.status.code(), Some(3));
}

#[test]
fn a_failing_square_yields_exit_one_and_a_witness() {
    let dir = tempfile::tempdir().unwrap();
    let path = spec_file(
        &dir,
        "square.json",
        r#"{"version": 1, "payload": {"kind": "square",
            "ambient": ["p", "q"], "first": ["p"], "second": ["q"]}}"#,
    );
    let output = classify(&path);
    assert_eq!(output.status.code(), Some(1));
    let text = stdout_of(&output);
    assert!(text.contains("FAIL"), "{text}");
    assert!(text.contains("square/splittings"), "{text}");
}

#[test]
fn an_unknown_suite_name_is_a_usage_error_with_exit_two() {
    let output = run(&["suite", "mystery"]);
    assert_eq!(output.status.code(), Some(2));
    assert!(stderr_of(&output).contains("expected one of"));
}

#[test]
fn json_reports_are_identical_once_the_timing_block_is_zeroed() {
    let args = ["suite", "grades", "--size", "2", "--format", "json"];
    let mut reports = (0..2).map(|_| {
        let output = run(&args);
        assert_eq!(output.status.code(), Some(0));
        let mut value: serde_json::Value =
            serde_json::from_str(&stdout_of(&output)).unwrap();
        value["timing"]["elapsed_ms"] = 0.into();
        value
    });
    assert_eq!(reports.next(), reports.next());
}

#[test]
fn text_reports_are_identical_once_the_elapsed_line_is_dropped() {
    let spec = corpus_path("square");
    let args = ["classify", spec.to_str().unwrap()];
    let strip = |output: Output| -> String {
        assert_eq!(output.status.code(), Some(0));
        let text = stdout_of(&output);
        let body: Vec<&str> = text
            .lines()
            .filter(|l| !l.starts_with("elapsed:"))
            .collect();
        assert!(body.len() < text.lines().count(), "an elapsed line was present");
        body.join("\n")
    };
    assert_eq!(strip(run(&args)), strip(run(&args)));
}

#[test]
fn a_tiny_guard_flag_trips_with_exit_four_instead_of_crashing() {
    let output = run(&["suite", "functor-classify", "--size", "2", "--guard", "1"]);
    assert_eq!(output.status.code(), Some(4));
    let text = stdout_of(&output);
    assert!(text.contains("GUARD"), "{text}");
    assert!(!text.contains("panicked"), "{text}");
}

#[test]
fn the_guard_environment_variable_sets_the_default_limit() {
    let output = bin()
        .env("GRADCAT_GUARD", "1")
        .args(["suite", "functor-classify", "--size", "2"])
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(4));
}

#[test]
fn the_exit_status_in_the_json_report_matches_the_process_code() {
    let dir = tempfile::tempdir().unwrap();
    let path = spec_file(
        &dir,
        "square.json",
        r#"{"version": 1, "payload": {"kind": "square",
            "ambient": ["p", "q"], "first": ["p"], "second": ["q"]}}"#,
    );
    let output = bin()
        .args(["classify", path.to_str().unwrap(), "--format", "json"])
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(1));
    let value: serde_json::Value = serde_json::from_str(&stdout_of(&output)).unwrap();
    assert_eq!(value["exit_status"], 1);
    assert_eq!(value["tool_version"], env!("CARGO_PKG_VERSION"));
    let detail = value["checks"][0]["detail"].as_str().unwrap();
    assert!(!detail.is_empty(), "failures carry a replayable witness");
}

#[test]
fn a_suite_payload_runs_the_embedded_configuration() {
    let dir = tempfile::tempdir().unwrap();
    let path = spec_file(
        &dir,
        "suite.json",
        r#"{"version": 1, "payload": {"kind": "suite", "suite": "counterexamples",
            "config": {"depth": 4}}}"#,
    );
    let output = classify(&path);
    assert_eq!(output.status.code(), Some(0));
    let text = stdout_of(&output);
    assert!(text.contains("suite counterexamples (size 3, depth 4,"), "{text}");
    assert!(text.contains("all 5 legs merge a pair"), "{text}");
}
