use std::fs;
use std::process::{Command, Output};

use mod2vqls::bench::{parse_csv, CSV_HEADER};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mod2vqls"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout.clone()).unwrap()
}

const EXAMPLE: &str = "# 2x3 worked example\n2 3\n1 0 1\n1 1 0\n0 1\n";

#[test]
fn dump_circuit_prints_gate_list() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("sys.txt");
    fs::write(&path, EXAMPLE).unwrap();
    let out = run(&["dump-circuit", "--system-file", path.to_str().unwrap()]);
    assert_eq!(stdout(&out), "CNOT 1 4\nCNOT 1 5\nCNOT 2 5\nCNOT 3 4\n");
}

#[test]
fn solve_reports_valid_solutions() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("sys.txt");
    fs::write(&path, EXAMPLE).unwrap();
    let text = stdout(&run(&["solve", "--system-file", path.to_str().unwrap(), "--seed", "3"]));
    assert!(text.contains("solved: true"), "{text}");
}

#[test]
fn bench_writes_csv_and_is_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let first = dir.path().join("a.csv");
    let second = dir.path().join("b.csv");
    for (path, extra) in [(&first, None), (&second, Some("--sequential"))] {
        let mut args = vec!["bench", "--dims", "1..3", "--trials", "3", "--ansatz", "both", "--seed", "11"];
        args.extend(extra);
        args.extend(["--out", path.to_str().unwrap()]);
        stdout(&run(&args));
    }
    let a = fs::read_to_string(&first).unwrap();
    assert_eq!(a, fs::read_to_string(&second).unwrap());
    assert!(a.starts_with(CSV_HEADER));
    assert_eq!(parse_csv(&a).unwrap().len(), 6);
}

#[test]
fn bench_prints_csv_without_out() {
    let text = stdout(&run(&["bench", "--dims", "2", "--trials", "2", "--ansatz", "rotations"]));
    assert_eq!(parse_csv(&text).unwrap().len(), 1);
}

#[test]
fn bad_input_fails_cleanly() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.txt");
    fs::write(&path, "2 2\n1 0\n").unwrap();
    let out = run(&["solve", "--system-file", path.to_str().unwrap()]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).starts_with("error:"));

    let out = run(&["bench", "--dims", "5..2"]);
    assert!(!out.status.success());
    let out = run(&["bench", "--dims", "1", "--layers", "two"]);
    assert!(!out.status.success());
}
