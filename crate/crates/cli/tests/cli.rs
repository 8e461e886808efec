//! End-to-end checks of the binary: output schemas, exit codes, and
//! determinism of fixed invocations.

use std::process::{Command, Output};

fn lahbell(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lahbell"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_of(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("utf-8 stdout")
}

#[test]
fn table_csv_matches_schema() {
    let out = lahbell(&[
        "table", "--family", "rlah", "--r", "1", "--n-max", "2", "--format", "csv",
    ]);
    assert!(out.status.success());
    let mut reader = csv::Reader::from_reader(out.stdout.as_slice());
    assert_eq!(
        reader.headers().unwrap(),
        &csv::StringRecord::from(vec!["n", "k", "value"])
    );
    let rows: Vec<Vec<String>> = reader
        .records()
        .map(|r| r.unwrap().iter().map(str::to_string).collect())
        .collect();
    for expected in [["2", "0", "6"], ["2", "1", "6"], ["2", "2", "1"]] {
        assert!(
            rows.iter().any(|row| row == &expected),
            "missing row {expected:?} in {rows:?}"
        );
    }
}

#[test]
fn table_json_round_trips() {
    let out = lahbell(&["table", "--family", "s1", "--n-max", "3"]);
    assert!(out.status.success());
    let value: serde_json::Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    assert_eq!(value["kind"], "triangle");
    assert_eq!(value["family"], "s1");
    let entries = value["entries"].as_array().unwrap();
    assert!(entries
        .iter()
        .any(|e| e["n"] == 3 && e["k"] == 2 && e["value"] == "-3"));
}

#[test]
fn sequence_formats() {
    let json_out = lahbell(&["table", "--family", "bell", "--n-max", "4"]);
    let value: serde_json::Value = serde_json::from_str(&stdout_of(&json_out)).unwrap();
    assert_eq!(value["kind"], "sequence");
    assert_eq!(
        value["values"],
        serde_json::json!(["1", "1", "2", "5", "15"])
    );

    let csv_out = lahbell(&[
        "table", "--family", "rlahbell", "--r", "1", "--n-max", "3", "--format", "csv",
    ]);
    let mut reader = csv::Reader::from_reader(csv_out.stdout.as_slice());
    let last = reader.records().last().unwrap().unwrap();
    assert_eq!(&last, &csv::StringRecord::from(vec!["3", "73"]));

    let pretty_out = lahbell(&[
        "table", "--family", "lahbell", "--n-max", "2", "--format", "pretty",
    ]);
    assert_eq!(stdout_of(&pretty_out), "n=0: 1\nn=1: 1\nn=2: 3\n");
}

#[test]
fn oracle_json_total() {
    let out = lahbell(&["oracle", "--n", "2", "--r", "0"]);
    assert!(out.status.success());
    let value: serde_json::Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    assert_eq!(value["total"], "3");
    let out = lahbell(&["oracle", "--n", "2", "--r", "1"]);
    let value: serde_json::Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    assert_eq!(value["total"], "13");
}

#[test]
fn usage_errors_exit_two() {
    let unknown_flag = lahbell(&["table", "--family", "rlah", "--bogus", "1"]);
    assert_eq!(unknown_flag.status.code(), Some(2));

    let missing_required = lahbell(&["table", "--n-max", "3"]);
    assert_eq!(missing_required.status.code(), Some(2));

    let unknown_suite = lahbell(&["verify", "--suite", "nope"]);
    assert_eq!(unknown_suite.status.code(), Some(2));
    let stderr = String::from_utf8(unknown_suite.stderr).unwrap();
    assert!(stderr.contains("--suite"), "stderr: {stderr}");
}

#[test]
fn cap_violations_exit_two_and_name_the_flag() {
    let table = lahbell(&["table", "--family", "rlah", "--n-max", "5000"]);
    assert_eq!(table.status.code(), Some(2));
    assert!(String::from_utf8(table.stderr).unwrap().contains("--n-max"));

    let oracle = lahbell(&["oracle", "--n", "8", "--r", "5"]);
    assert_eq!(oracle.status.code(), Some(2));
    assert!(String::from_utf8(oracle.stderr)
        .unwrap()
        .contains("--n/--r"));

    let verify = lahbell(&["verify", "--suite", "lemma1", "--n-max", "100"]);
    assert_eq!(verify.status.code(), Some(2));
    assert!(String::from_utf8(verify.stderr)
        .unwrap()
        .contains("--n-max"));

    let poisson = lahbell(&["poisson", "--alpha", "40", "--n", "1"]);
    assert_eq!(poisson.status.code(), Some(2));
    assert!(String::from_utf8(poisson.stderr)
        .unwrap()
        .contains("--alpha"));

    let dobinski = lahbell(&["dobinski", "--n", "2", "--x", "0"]);
    assert_eq!(dobinski.status.code(), Some(2));
    assert!(String::from_utf8(dobinski.stderr).unwrap().contains("--x"));

    let tol = lahbell(&["dobinski", "--n", "2", "--tol", "0"]);
    assert_eq!(tol.status.code(), Some(2));
    assert!(String::from_utf8(tol.stderr).unwrap().contains("--tol"));
}

#[test]
fn dobinski_reports_containment() {
    let out = lahbell(&[
        "dobinski", "--n", "3", "--r", "1", "--x", "1/2", "--tol", "1e-12",
    ]);
    assert!(out.status.success());
    let value: serde_json::Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    assert_eq!(value["contains_exact"], true);
    assert!(value["enclosure_lo"].as_str().unwrap().contains('/'));
    assert!(value["decimals"]["exact"].as_str().unwrap().contains('.'));
}

#[test]
fn poisson_small_run_passes_gate() {
    let out = lahbell(&[
        "poisson",
        "--alpha",
        "1",
        "--n",
        "2",
        "--r",
        "0",
        "--samples",
        "20000",
        "--seed",
        "11",
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let value: serde_json::Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    assert_eq!(value["exact"], "3/1");
    assert!(value["z_score"].as_f64().unwrap().abs() <= 5.0);
}

#[test]
fn verify_single_suite_schema() {
    let out = lahbell(&["verify", "--suite", "oracle_match"]);
    assert!(out.status.success());
    let value: serde_json::Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    let reports = value.as_array().unwrap();
    assert_eq!(reports.len(), 1);
    let report = &reports[0];
    assert_eq!(report["suite"], "oracle_match");
    assert_eq!(report["verdict"], "pass");
    assert!(report["cases"].as_u64().unwrap() > 0);
    assert!(report["failures"].as_array().unwrap().is_empty());
    assert!(report["paths"].as_str().unwrap().contains("enumeration"));
}

#[test]
fn fixed_invocations_are_byte_identical() {
    let args = ["table", "--family", "s2shift", "--x", "-3", "--n-max", "6"];
    let first = lahbell(&args);
    let second = lahbell(&args);
    assert_eq!(first.stdout, second.stdout);

    let args = [
        "poisson",
        "--alpha",
        "1/2",
        "--n",
        "3",
        "--r",
        "1",
        "--samples",
        "5000",
        "--seed",
        "3",
    ];
    let first = lahbell(&args);
    let second = lahbell(&args);
    assert_eq!(first.stdout, second.stdout);
}
