//! End-to-end CLI coverage: subcommands, exit codes, and report formats.

use std::path::PathBuf;
use std::process::{Command, Output};

fn binary() -> PathBuf {
    PathBuf::from(env!("CARGO_BIN_EXE_periodcalc"))
}

fn fixture(name: &str) -> String {
    format!("{}/tests/fixtures/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn run(args: &[&str]) -> Output {
    Command::new(binary())
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).to_string()
}

#[test]
fn critical_text_output_and_exit_zero() {
    let out = run(&["critical", "--instance", &fixture("pair_3x2.json")]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("critical set"));
    assert!(text.contains("1/2"));
    assert!(text.contains("shift dictionary: ok"));
}

#[test]
fn critical_json_round_trips_byte_identically() {
    let out = run(&[
        "critical",
        "--instance",
        &fixture("pair_3x2.json"),
        "--format",
        "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let s1 = stdout(&out);
    let parsed: serde_json::Value = serde_json::from_str(s1.trim()).unwrap();
    assert_eq!(parsed["command"], "critical");
    let reparsed: periodcalc::cli::CriticalReport =
        serde_json::from_str(s1.trim()).unwrap();
    let s2 = serde_json::to_string(&reparsed).unwrap();
    assert_eq!(s1.trim(), s2);
}

#[test]
fn tie_instance_exits_two() {
    let out = run(&["critical", "--instance", &fixture("tie.json")]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["split", "--instance", &fixture("tie.json")]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn split_reports_the_descent_table() {
    let out = run(&[
        "split",
        "--instance",
        &fixture("pair_3x2.json"),
        "--format",
        "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let report: periodcalc::cli::SplitReport =
        serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(report.first_argument[0].automorphic, vec![0, 2, 0, 0]);
    assert!(report.dictionary_ok && report.reflection_ok && report.sum_rule_ok);
}

#[test]
fn replay_auto_facto_closes() {
    let out = run(&["replay", "--instance", &fixture("descent_rank3.json")]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("verdict: closed"));
}

#[test]
fn replay_fault_injection_exits_three() {
    let out = run(&[
        "replay",
        "--instance",
        &fixture("descent_rank3.json"),
        "--inject-fault",
        "rs-split",
    ]);
    assert_eq!(out.status.code(), Some(3));
    assert!(stdout(&out).contains("open"));
}

#[test]
fn replay_unknown_fault_exits_two() {
    let out = run(&[
        "replay",
        "--instance",
        &fixture("descent_rank3.json"),
        "--inject-fault",
        "bogus",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn replay_factorization_theorem_closes() {
    let out = run(&[
        "replay",
        "--instance",
        &fixture("descent_rank3.json"),
        "--theorem",
        "factorization",
        "--format",
        "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let report: periodcalc::cli::ReplayReport =
        serde_json::from_str(stdout(&out).trim()).unwrap();
    assert!(report.closed);
    let s2 = serde_json::to_string(&report).unwrap();
    assert_eq!(stdout(&out).trim(), s2);
}

#[test]
fn replay_deligne_reports_two_pi_i_residual() {
    let out = run(&[
        "replay",
        "--instance",
        &fixture("pair_3x2.json"),
        "--theorem",
        "deligne",
        "--s0-doubled",
        "1",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("residual 2*pi*i exponent: 12"));
    assert!(text.contains("2*pi*i and constant classes only"));
}

#[test]
fn replay_deligne_multi_place() {
    let out = run(&[
        "replay",
        "--instance",
        &fixture("two_place_pair.json"),
        "--theorem",
        "deligne",
        "--s0-doubled",
        "1",
        "--format",
        "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let report: periodcalc::cli::ReplayReport =
        serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(report.two_pi_i_exponent, Some(24));
}

#[test]
fn replay_no_lvarch_weakens_but_passes() {
    let out = run(&[
        "replay",
        "--instance",
        &fixture("descent_rank3.json"),
        "--no-lvarch",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("closed modulo archimedean factors"));
}

#[test]
fn corpus_run_is_deterministic_and_passes() {
    let out = run(&["corpus", "--seed", "5", "--count", "40", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let r1: periodcalc::cli::CorpusReport = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert!(r1.all_ok);
    let out2 = run(&["corpus", "--seed", "5", "--count", "40", "--format", "json"]);
    assert_eq!(stdout(&out), stdout(&out2));
}

#[test]
fn missing_instance_file_exits_two() {
    let out = run(&["critical", "--instance", "/nonexistent/file.json"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn s0_out_of_range_exits_two() {
    let out = run(&[
        "replay",
        "--instance",
        &fixture("pair_3x2.json"),
        "--theorem",
        "deligne",
        "--s0-doubled",
        "41",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn debug_logging_goes_to_stderr() {
    let out = Command::new(binary())
        .args(["critical", "--instance", &fixture("pair_3x2.json")])
        .env("PERIODCALC_LOG", "debug")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stderr).contains("periodcalc:"));
}
