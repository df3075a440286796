use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_lucas-realize"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("spawn lucas-realize")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn temp_path(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("lucas-realize-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn write_temp(name: &str, text: &str) -> PathBuf {
    let path = temp_path(name);
    std::fs::write(&path, text).unwrap();
    path
}

#[test]
fn check_lucas_passes() {
    let o = run(&["check", "--lucas", "--max-n", "100"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("pass"), "{text}");
    assert!(text.contains("100"));
}

#[test]
fn check_fibonacci_fails_at_three() {
    let o = run(&[
        "check",
        "--fib-seed",
        "1,1",
        "--max-n",
        "10",
        "--output",
        "json-lines",
    ]);
    assert_eq!(o.status.code(), Some(1));
    let line: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(line["verdict"], "fail");
    assert_eq!(line["first_failure_n"], 3);
    assert_eq!(line["failure_kind"], "non_divisibility");
    assert_eq!(line["failure_value"], 1);
}

#[test]
fn check_kbonacci_builtin() {
    let o = run(&[
        "check",
        "--kbonacci",
        "3,1,3,7",
        "--max-n",
        "60",
        "--output",
        "csv",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stdout(&o),
        "sequence,checked_up_to,verdict,first_failure_n,failure_kind,failure_value\n\
         \"kbonacci 3,1,3,7\",60,pass,,,\n"
    );
}

#[test]
fn check_sequence_file() {
    let path = write_temp("seq.txt", "# doubled lucas\n2\n6\n8 # U_3\n\n14\n22\n");
    let o = run(&["check", "--file", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let o = run(&["check", "--file", path.to_str().unwrap(), "--max-n", "3"]);
    assert!(stdout(&o).contains(" 3 "));
    let o = run(&["check", "--file", path.to_str().unwrap(), "--max-n", "9"]);
    assert_eq!(o.status.code(), Some(2));

    let negative = write_temp("neg.txt", "3\n0\n");
    let o = run(&[
        "check",
        "--file",
        negative.to_str().unwrap(),
        "--output",
        "json-lines",
    ]);
    assert_eq!(o.status.code(), Some(1));
    let line: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(line["failure_kind"], "negativity");
    assert_eq!(line["failure_value"], -3);
}

#[test]
fn input_errors_have_distinct_diagnostics() {
    let missing = run(&["check", "--file", "/nonexistent/seq.txt"]);
    assert_eq!(missing.status.code(), Some(2));
    let missing_err = String::from_utf8(missing.stderr).unwrap();
    assert!(missing_err.contains("cannot read"), "{missing_err}");

    let bad_seq = write_temp("bad.txt", "1\n2\nthree\n");
    let o = run(&["check", "--file", bad_seq.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let e = String::from_utf8(o.stderr).unwrap();
    assert!(
        e.contains("malformed sequence file") && e.contains("line 3"),
        "{e}"
    );

    let bad_matrix = write_temp("bad_matrix.txt", "2\n1 1\n1 7\n");
    let o = run(&[
        "sft",
        "count",
        "--matrix",
        bad_matrix.to_str().unwrap(),
        "--n",
        "3",
    ]);
    assert_eq!(o.status.code(), Some(2));
    let e = String::from_utf8(o.stderr).unwrap();
    assert!(e.contains("malformed matrix file"), "{e}");

    let o = run(&["sft", "enumerate", "--kstep", "6", "--n", "16"]);
    assert_eq!(o.status.code(), Some(2));
    let e = String::from_utf8(o.stderr).unwrap();
    assert!(e.contains("budget exceeded"), "{e}");

    let o = run(&["obstruct", "--fib-seed", "1,2,3"]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(&["bogus"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn sft_count_golden_file() {
    let path = write_temp("golden.txt", "# golden mean shift\n2\n1 1\n1 0\n");
    let o = run(&[
        "sft",
        "count",
        "--matrix",
        path.to_str().unwrap(),
        "--n",
        "12",
        "--output",
        "csv",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.ends_with(",12,322\n"), "{text}");
    let o = run(&[
        "sft",
        "enumerate",
        "--golden",
        "--n",
        "12",
        "--output",
        "csv",
    ]);
    assert!(stdout(&o).ends_with("golden,12,322\n"));
}

#[test]
fn sft_table_reports_orbits() {
    let o = run(&[
        "sft",
        "table",
        "--golden",
        "--max-n",
        "6",
        "--output",
        "json-lines",
    ]);
    let lines: Vec<serde_json::Value> = stdout(&o)
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(lines.len(), 7);
    let lper: Vec<u64> = lines[..6]
        .iter()
        .map(|l| l["least_period_points"].as_u64().unwrap())
        .collect();
    assert_eq!(lper, vec![1, 2, 3, 4, 10, 12]);
    assert_eq!(lines[6]["summary"]["matrix"], "golden");
}

#[test]
fn witness_prints_cycles() {
    let o = run(&["witness", "--lucas", "--max-n", "3", "--show-cycles"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("cycles: (1)(2 3)(4 5 6)"), "{text}");
    assert!(text.contains("verdict: verified"));

    let o = run(&["witness", "--fib-seed", "1,1", "--max-n", "5"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("not_realizable"));
}

#[test]
fn congruence_json_export_keys() {
    let o = run(&[
        "congruence",
        "--identity",
        "d",
        "--max-product",
        "30",
        "--output",
        "json-lines",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let lines: Vec<serde_json::Value> = stdout(&o)
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    let first = lines[0].as_object().unwrap();
    let keys: Vec<&str> = first.keys().map(String::as_str).collect();
    assert_eq!(
        keys,
        vec!["context", "holds", "identity_id", "lhs", "modulus", "rhs"]
    );
    assert_eq!(first["context"], "p=2;q=3");
    assert_eq!(first["lhs"], 1);
    let summary = &lines.last().unwrap()["summary"];
    assert_eq!(summary["failures"], 0);
    assert_eq!(summary["verdict"], "pass");
}

#[test]
fn congruence_summary_only() {
    let o = run(&[
        "congruence",
        "--identity",
        "a",
        "--max-prime",
        "1000",
        "--summary-only",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("a: 168"), "{text}");
    assert!(text.contains("failures: 0"));
    assert!(!text.contains("p=997"));
}

#[test]
fn obstruct_exit_codes() {
    let o = run(&["obstruct", "--fib-seed", "1,3", "--horizon", "50"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("realizable_prefix"));
    let o = run(&[
        "obstruct",
        "--fib-seed",
        "1,1",
        "--horizon",
        "10",
        "--output",
        "csv",
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).ends_with("1,1,10,obstructed,3,non_divisibility,1,3\n"));
}

#[test]
fn scan_writes_fixture() {
    let fixture = temp_path("scan.txt");
    let o = run(&[
        "scan",
        "--a-max",
        "3",
        "--b-max",
        "9",
        "--fixture",
        fixture.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("survivors: (1,3) (2,6) (3,9)"));
    let written = std::fs::read_to_string(&fixture).unwrap();
    assert_eq!(
        written,
        "# scan a_max=3 b_max=9 horizon=50\n1,3\n2,6\n3,9\n"
    );
}

#[test]
fn kscan_fixture_matches_committed_one() {
    let fixture = temp_path("kscan.txt");
    let o = run(&[
        "kscan",
        "--k",
        "3",
        "--bound",
        "15",
        "--horizon",
        "100",
        "--fixture",
        fixture.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("empirical evidence only"));
    let written = std::fs::read_to_string(&fixture).unwrap();
    assert_eq!(written, include_str!("fixtures/kscan_k3_b15_h100.txt"));
}

#[test]
fn reports_are_byte_identical_across_runs() {
    for args in [
        &["scan", "--output", "csv"][..],
        &[
            "congruence",
            "--max-prime",
            "3000",
            "--max-prime-power",
            "5000",
            "--max-product",
            "3000",
            "--max-n",
            "300",
        ],
        &[
            "kscan",
            "--k",
            "2",
            "--bound",
            "12",
            "--output",
            "json-lines",
        ],
        &["witness", "--lucas", "--max-n", "12"],
    ] {
        let first = run(args);
        let second = run(args);
        assert_eq!(first.stdout, second.stdout, "{args:?}");
        assert_eq!(first.status.code(), second.status.code());
        assert!(!first.stdout.is_empty());
    }
}
