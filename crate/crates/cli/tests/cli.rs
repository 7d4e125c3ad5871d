use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_a22")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json_of(o: &Output) -> Value {
    serde_json::from_str(stdout(o).trim()).unwrap()
}

#[test]
fn oracle_values() {
    for (m, n, want) in [("2", "8", "2"), ("0", "0", "1"), ("3", "9", "1"), ("1", "6", "0")] {
        let o = run(&["oracle", "--m", m, "--n", n]);
        assert!(o.status.success());
        assert_eq!(stdout(&o).trim(), want);
    }
}

#[test]
fn dims_json() {
    let o = run(&["dims", "--cutoff", "8", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json_of(&o);
    assert_eq!(v["cutoff"], 8);
    let b = v["buckets"].as_array().unwrap().iter().find(|b| b["charge"] == 2 && b["qweight"] == 4).unwrap();
    assert_eq!(b["dim"], 1);
    assert_eq!(b["oracle"], 1);
    assert_eq!(b["match"], true);
    assert!(v["buckets"].as_array().unwrap().iter().all(|b| b["match"] == true));
}

#[test]
fn dims_zero_cutoff() {
    let v = json_of(&run(&["dims", "--cutoff", "0"]));
    let b = v["buckets"].as_array().unwrap();
    assert_eq!(b.len(), 1);
    assert_eq!((b[0]["charge"].as_i64(), b[0]["qweight"].as_i64(), b[0]["dim"].as_i64()), (Some(0), Some(0), Some(1)));
}

#[test]
fn dims_csv_header() {
    let o = run(&["dims", "--cutoff", "8", "--format", "csv"]);
    let s = stdout(&o);
    let mut lines = s.lines();
    assert_eq!(lines.next(), Some("charge,qweight,dim,oracle,match"));
    assert!(lines.any(|l| l == "2,4,1,1,true"));
}

#[test]
fn verify_recursion() {
    let o = run(&["verify", "--suites", "recursion", "--cutoff", "20"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json_of(&o);
    assert_eq!(v["suites"][0]["name"], "recursion");
    assert_eq!(v["suites"][0]["pass"], true);
}

#[test]
fn verify_group() {
    let o = run(&["verify", "--suites", "group"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json_of(&o)["suites"][0]["pass"], true);
}

#[test]
fn verify_presentation_table() {
    let o = run(&["verify", "--suites", "presentation", "--presentation-cutoff", "12"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json_of(&o);
    let rows = v["suites"][0]["details"]["buckets"].as_array().unwrap();
    let r = rows.iter().find(|r| r["charge"] == 1 && r["qweight"] == 1).unwrap();
    assert_eq!((r["pbw"].as_i64(), r["ideal_rank"].as_i64(), r["w_dim"].as_i64()), (Some(1), Some(0), Some(1)));
}

#[test]
fn json_round_trip_is_byte_identical() {
    let o = run(&["verify", "--suites", "group,recursion,oracle", "--cutoff", "10", "--presentation-cutoff", "8", "--exactness-cutoff", "8"]);
    let s = stdout(&o);
    let v: Value = serde_json::from_str(s.trim_end()).unwrap();
    assert_eq!(serde_json::to_string(&v).unwrap(), s.trim_end());
    let keys: Vec<_> = v.as_object().unwrap().keys().cloned().collect();
    assert_eq!(keys, ["config", "suites", "tool_version"]);
    assert!(no_floats(&v));
}

fn no_floats(v: &Value) -> bool {
    match v {
        Value::Number(n) => n.is_i64() || n.is_u64(),
        Value::Array(a) => a.iter().all(no_floats),
        Value::Object(m) => m.values().all(no_floats),
        _ => true,
    }
}

#[test]
fn config_errors_exit_2() {
    let o = run(&["verify", "--cutoff", "10", "--presentation-cutoff", "12", "--exactness-cutoff", "8"]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(&["verify", "--cutoff", "10", "--exactness-cutoff", "12"]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(run(&["verify", "--suites", "nonsense"]).status.code(), Some(2));
    assert_eq!(run(&["dims", "--cutoff", "-1"]).status.code(), Some(2));
}

#[test]
fn parallelism_does_not_change_output() {
    let a = run(&["dims", "--cutoff", "16", "--parallelism", "1", "--format", "csv"]);
    let b = run(&["dims", "--cutoff", "16", "--parallelism", "3", "--format", "csv"]);
    assert_eq!(a.stdout, b.stdout);
}
