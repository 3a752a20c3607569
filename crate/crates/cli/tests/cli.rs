use std::process::{Command, Output};

use serde_json::Value;

fn qeuler(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qeuler")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> (String, Value) {
    let out = qeuler(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8(out.stdout).unwrap();
    let value = serde_json::from_str(&text).unwrap();
    (text, value)
}

fn code(args: &[&str]) -> i32 {
    qeuler(args).status.code().expect("exit code")
}

fn num(v: &Value) -> f64 {
    v.as_f64().expect("number")
}

#[test]
fn eval_constant_term() {
    let (_, v) = json(&["eval", "--family", "qeuler", "-r", "1", "-q", "1/2", "-x", "0", "--nmax", "0"]);
    assert_eq!(v["rows"][0]["exact"], "4/3");
    assert_eq!(v["command"], "eval");
}

#[test]
fn eval_classical_rows_csv() {
    let out = qeuler(&[
        "--format", "csv", "eval", "--family", "qeuler", "-r", "1", "-q", "1", "-x", "0", "--nmax", "3",
    ]);
    assert!(out.status.success());
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "n,exact\n0,1\n1,-1/2\n2,0\n3,1/4\n");
}

#[test]
fn eval_both_paths_agree() {
    let (_, v) = json(&[
        "eval", "--family", "barnes", "-w", "1,2", "-q", "1/3", "-x", "5/2", "--nmax", "4", "--path", "both",
    ]);
    for row in v["rows"].as_array().unwrap() {
        let (n, d) =
            row["exact"].as_str().unwrap().split_once('/').unwrap_or((row["exact"].as_str().unwrap(), "1"));
        let exact = n.parse::<f64>().unwrap() / d.parse::<f64>().unwrap();
        assert!((num(&row["numeric"]) - exact).abs() <= 1e-9 * exact.abs().max(1.0));
    }
}

#[test]
fn eval_errors() {
    assert_eq!(code(&["eval", "--family", "qeuler", "-q", "2", "--path", "numeric"]), 3);
    assert_eq!(code(&["eval", "--family", "nosuch"]), 2);
    assert_eq!(code(&["eval", "--family", "chi-qeuler"]), 2);
    assert_eq!(code(&["eval", "--family", "qeuler", "-q", "-1"]), 3);
    assert_eq!(code(&["eval", "--family", "barnes", "-r", "3", "-w", "1,2"]), 2);
}

#[test]
fn complex_character_uses_series() {
    let (_, v) = json(&[
        "eval",
        "--family",
        "chi-qeuler",
        "--chi-mod",
        "5",
        "--chi-index",
        "1",
        "-q",
        "1/2",
        "--nmax",
        "2",
    ]);
    assert_eq!(v["params"]["path"], "numeric");
    assert!(v["rows"][0]["numeric_im"].is_number());
}

#[test]
fn zeta_geometric_value() {
    let (_, v) = json(&["zeta", "-r", "1", "-w", "1", "-q", "0.5", "-x", "1", "--s", "0"]);
    let row = &v["rows"][0];
    assert!((num(&row["value_re"]) - 4.0 / 3.0).abs() <= num(&row["err_bound"]));
}

#[test]
fn zeta_at_minus_two_matches_eval() {
    let (_, z) = json(&["zeta", "-q", "0.5", "-x", "1", "--s", "-2"]);
    let (_, e) = json(&["eval", "--family", "qeuler", "-q", "1/2", "-x", "1", "--nmax", "2"]);
    let exact = e["rows"][2]["exact"].as_str().unwrap();
    let (n, d) = exact.split_once('/').unwrap();
    let want = n.parse::<f64>().unwrap() / d.parse::<f64>().unwrap();
    let row = &z["rows"][0];
    assert!((num(&row["value_re"]) - want).abs() <= num(&row["err_bound"]) + 1e-15);
}

#[test]
fn zeta_grid_and_errors() {
    let (_, v) = json(&["zeta", "-w", "1,2", "--s", "-1,0.5,2+i"]);
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 3);
    assert_eq!(num(&rows[2]["s_im"]), 1.0);
    assert_eq!(code(&["zeta", "-q", "1.5"]), 3);
    assert_eq!(code(&["zeta", "-x", "0"]), 3);
    assert_eq!(code(&["zeta", "--s", "two"]), 2);
}

#[test]
fn padic_demo_reaches_precision() {
    let (_, v) = json(&["padic", "-p", "3", "-M", "8", "-n", "0", "-q", "1+p"]);
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.last().unwrap()["valuation"], 8);
    assert_eq!(v["pass"], true);
    assert!(rows.iter().all(|r| r["monotone"] == true));
}

#[test]
fn padic_errors() {
    assert_eq!(code(&["padic", "-p", "2"]), 2);
    assert_eq!(code(&["padic", "-p", "9"]), 2);
    assert_eq!(code(&["padic", "-p", "3", "-N", "20", "-r", "2"]), 3);
}

#[test]
fn verify_distribution_passes() {
    let (_, v) = json(&["verify", "--suite", "distribution"]);
    assert_eq!(v["pass"], true);
    let ids: Vec<&str> = v["rows"].as_array().unwrap().iter().map(|r| r["id"].as_str().unwrap()).collect();
    let mut sorted = ids.clone();
    sorted.sort();
    assert_eq!(ids, sorted);
    assert_eq!(code(&["verify", "--suite", "nosuch"]), 2);
}

#[test]
fn verify_output_independent_of_thread_count() {
    let run = |threads: &str| {
        let out = Command::new(env!("CARGO_BIN_EXE_qeuler"))
            .args(["verify", "--suite", "bernoulli"])
            .env("QEULER_THREADS", threads)
            .output()
            .unwrap();
        assert!(out.status.success());
        out.stdout
    };
    assert_eq!(run("1"), run("4"));
}

#[test]
fn json_round_trips_byte_identically() {
    let cases: [&[&str]; 4] = [
        &[
            "eval",
            "--family",
            "qeuler-hr",
            "-h",
            "3",
            "-r",
            "2",
            "-q",
            "1/3",
            "--nmax",
            "4",
            "--path",
            "both",
        ],
        &["zeta", "-w", "1,2", "--s", "-3,0.5,2+i"],
        &["padic", "-p", "5", "-N", "4", "-n", "2"],
        &["verify", "--suite", "bernoulli"],
    ];
    for args in cases {
        let (text, value) = json(args);
        assert_eq!(serde_json::to_string_pretty(&value).unwrap() + "\n", text, "{args:?}");
    }
}
