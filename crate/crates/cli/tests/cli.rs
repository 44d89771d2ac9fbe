use std::io::Write;
use std::process::{Command, Output, Stdio};

fn krt(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_krt")).args(args).env_remove("KRT_BUDGET").output().expect("krt runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8")
}

#[test]
fn run_exit_codes() {
    let o = krt(&["run", "identity", "42"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "halted value=42 steps=1\n");

    let o = krt(&["run", "7", "3"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stdout(&o), "abnormal-divergence\n");

    let o = krt(&["run", "diverge", "0", "--budget", "10"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stdout(&o), "out-of-budget budget=10\n");
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(krt(&["verify", "nope"]).status.code(), Some(2));
    assert_eq!(krt(&["run", "not-a-program", "1"]).status.code(), Some(2));
    assert_eq!(krt(&["run", "succ", "1", "--oracle", "loud"]).status.code(), Some(2));
}

#[test]
fn numcode_worked_example() {
    let o = krt(&["numcode", "pair", "15", "2"]);
    assert_eq!(stdout(&o), "pair = 174\n");
    let o = krt(&["numcode", "unpair", "174"]);
    assert!(stdout(&o).contains("15") && stdout(&o).contains('2'));
}

#[test]
fn records_format_is_json() {
    let o = krt(&["--format", "records", "run", "succ", "5"]);
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).expect("one JSON record");
    assert_eq!(v["outcome"], "halted");
    assert_eq!(v["value"], "6");
}

fn verify_stdin(records: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_krt"))
        .args(["certificate", "verify", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .expect("krt runs");
    child.stdin.take().expect("stdin").write_all(records.as_bytes()).expect("write");
    child.wait_with_output().expect("krt exits")
}

#[test]
fn certificate_round_trip_and_tamper() {
    let cert = stdout(&krt(&["certificate", "emit", "succ", "5"]));
    let o = verify_stdin(&cert);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("valid"));

    let short = cert.replace("\"t\":\"2\"", "\"t\":\"1\"");
    assert_ne!(short, cert);
    let o = verify_stdin(&short);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).starts_with("invalid"));
}

#[test]
fn single_suite_verifies() {
    let o = krt(&["verify", "pairing", "--seed", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).ends_with("failed=0\n"));
}
