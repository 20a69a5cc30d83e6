use std::process::Command;

use serde_json::Value;

fn run(args: &[&str]) -> (i32, Value) {
    let out = Command::new(env!("CARGO_BIN_EXE_jumpfree"))
        .args(args)
        .output()
        .unwrap();
    let code = out.status.code().unwrap();
    let report = serde_json::from_slice(&out.stdout).unwrap_or(Value::Null);
    (code, report)
}

#[test]
fn constmin_exits_with_violation() {
    let (code, report) = run(&["check-jumpfree", "--family", "constmin", "--samples", "50"]);
    assert_eq!(code, 2);
    assert!(!report["violation"].is_null());
}

#[test]
fn exit_two_iff_violation() {
    let cases: &[&[&str]] = &[
        &["check-jumpfree", "--family", "max", "--samples", "20"],
        &["check-jumpfree", "--family", "constmin", "--samples", "20"],
        &["search", "--grid", "3"],
        &["search", "--family", "predmin", "--grid", "3"],
        &["experiment", "--grid", "3"],
        &["order-types", "--k", "3"],
    ];
    for args in cases {
        let (code, report) = run(args);
        assert!(code == 0 || code == 2, "{args:?} exited {code}");
        assert_eq!(code == 2, !report["violation"].is_null(), "{args:?}");
    }
}

#[test]
fn bad_arguments_exit_one() {
    assert_eq!(run(&["search", "--k", "1"]).0, 1);
    assert_eq!(run(&["no-such-command"]).0, 1);
    assert_eq!(run(&["search", "--gamma", "bogus"]).0, 1);
}

#[test]
fn replay_is_deterministic() {
    let args = [
        "search",
        "--grid",
        "4",
        "--samples",
        "30",
        "--seed",
        "9",
        "--family",
        "min",
    ];
    let (_, a) = run(&args);
    let (_, b) = run(&args);
    assert_eq!(a, b);
}

#[test]
fn csv_output() {
    let out = Command::new(env!("CARGO_BIN_EXE_jumpfree"))
        .args(["order-types", "--k", "2", "--format", "csv"])
        .output()
        .unwrap();
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert!(lines.next().unwrap().contains("count"));
    assert!(lines.next().unwrap().contains(",3,"));
}
