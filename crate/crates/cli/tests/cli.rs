use std::process::{Command, Output};

use mackey_dade::verify::{Status, VerificationReport};
use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mackey-dade")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn verify_klein_four_passes() {
    let out = run(&["verify", "--group", "C2xC2", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let report: VerificationReport = serde_json::from_str(&stdout(&out)).unwrap();
    assert!(report.checks.iter().all(|c| c.status == Status::Pass));
    let nc = report.checks.iter().find(|c| c.id == "noncyclic-subquotients").unwrap();
    assert_eq!(nc.witness["kernel_dim"], 1);
}

#[test]
fn json_report_round_trips() {
    let text = stdout(&run(&["verify", "--group", "D8", "--format", "json"]));
    let report: VerificationReport = serde_json::from_str(&text).unwrap();
    let mut again = serde_json::to_string_pretty(&report).unwrap();
    again.push('\n');
    assert_eq!(again, text);
    assert_eq!(report.order, 8);
    let nc = report.checks.iter().find(|c| c.id == "noncyclic-subquotients").unwrap();
    assert_eq!(nc.witness["dmu_dim"], 4);
}

#[test]
fn seed_fixes_the_report() {
    let args = ["verify", "--group", "Q8", "--format", "json", "--seed", "11"];
    let a = stdout(&run(&args));
    let b = stdout(&run(&args));
    assert_eq!(a, b);
}

#[test]
fn cyclic_linmu_kernel_is_zero() {
    let out = run(&["linmu", "--group", "C4", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["kernel_dim"], 0);
    assert_eq!(v["rank"], 6);
}

#[test]
fn dade_json_for_d8() {
    let v: Value = serde_json::from_str(&stdout(&run(&["dade", "--group", "D8", "--format", "json"]))).unwrap();
    assert_eq!(v["dmu_dim"], 4);
    assert_eq!(v["underline_dim"], 1);
}

#[test]
fn matrices_are_exact_strings() {
    let v: Value = serde_json::from_str(&stdout(&run(&["alpha", "--group", "C2xC2", "--format", "json"]))).unwrap();
    let first = &v["alpha"][0][0];
    assert_eq!(first, "1/1");
    assert_eq!(v["rank"], 12);
}

#[test]
fn csv_and_text_formats() {
    let csv = stdout(&run(&["marks", "--group", "C2xC2", "--format", "csv"]));
    assert!(csv.starts_with("# table of marks"));
    assert!(csv.lines().any(|l| l == "[4],1,1,1,1,1"));
    let text = stdout(&run(&["mackey", "--group", "C2"]));
    assert!(text.contains("dim") && text.contains("6"));
}

#[test]
fn field_changes_bar_dimensions() {
    let q: Value = serde_json::from_str(&stdout(&run(&["mackey", "--group", "C2", "--format", "json"]))).unwrap();
    let p: Value =
        serde_json::from_str(&stdout(&run(&["mackey", "--group", "C2", "--field", "Fp", "--format", "json"]))).unwrap();
    assert_eq!(q["field"], "Q");
    assert_eq!(p["field"], "F2");
    assert_eq!(q["bar_burnside"], p["bar_burnside"]);
    assert_ne!(q["bar_fixed_points"], p["bar_fixed_points"]);
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["lattice"]).status.code(), Some(2));
    assert_eq!(run(&["lattice", "--group", "C6"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["dade", "--group", "D16", "--max-order", "8"]).status.code(), Some(2));
    assert_eq!(run(&["lambda", "--group", "C2", "--left", "0", "--right", "9"]).status.code(), Some(2));
    assert_eq!(run(&["mackey", "--group", "D16"]).status.code(), Some(2));
    assert_eq!(run(&["lattice", "--group", "C3"]).status.code(), Some(0));
}

#[test]
fn batch_is_sorted_by_group() {
    let text = stdout(&run(&["verify", "--max-order", "4", "--format", "json"]));
    let reports: Vec<VerificationReport> = serde_json::from_str(&text).unwrap();
    let names: Vec<&str> = reports.iter().map(|r| r.group.as_str()).collect();
    assert_eq!(names, ["C2", "C2xC2", "C3", "C4"]);
}
