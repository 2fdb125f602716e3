//! End-to-end checks of the command-line binary: output payloads, exit
//! codes, format switches, and determinism.

use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pqpoly"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("valid JSON on stdout")
}

#[test]
fn eval_fibonacci_exact() {
    let out = run(&[
        "eval", "--family", "fib", "--n", "3", "--p", "2", "--q", "3", "--s", "1",
    ]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(v["command"], "eval");
    assert_eq!(v["results"]["coefficients"]["0"], "6");
    assert_eq!(v["results"]["coefficients"]["2"], "1");
    assert_eq!(v["version"], env!("CARGO_PKG_VERSION"));
}

#[test]
fn eval_edge_orders() {
    let out = run(&[
        "eval", "--family", "lucas", "--n", "0", "--p", "2", "--q", "3", "--s", "1",
    ]);
    let v = stdout_json(&out);
    assert_eq!(v["results"]["coefficients"]["0"], "1");

    let out = run(&[
        "eval", "--family", "fib", "--n", "0", "--p", "2", "--q", "3", "--s", "1",
    ]);
    let v = stdout_json(&out);
    assert_eq!(
        v["results"]["coefficients"]
            .as_object()
            .unwrap()
            .len(),
        0
    );
}

#[test]
fn eval_value_and_rational_inputs() {
    let out = run(&[
        "eval", "--family", "fib", "--n", "3", "--p", "1/2", "--q", "3/4", "--s", "2", "--x", "2",
    ]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    // F_3 = x^2 + pq s = x^2 + 3/4; at x=2: 19/4
    assert_eq!(v["results"]["value"], "19/4");
}

#[test]
fn eval_float_mode() {
    let out = run(&[
        "eval", "--family", "fib", "--n", "3", "--p", "0.5", "--q", "0.75", "--s", "2.0",
        "--x", "2.0", "--mode", "float",
    ]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert!((v["results"]["value"].as_f64().unwrap() - 4.75).abs() < 1e-12);
}

#[test]
fn mode_mixing_rejected() {
    // decimal in exact mode
    let out = run(&[
        "eval", "--family", "fib", "--n", "3", "--p", "2.5", "--q", "3", "--s", "1",
    ]);
    assert_eq!(out.status.code(), Some(2));
    // rational in float mode
    let out = run(&[
        "eval", "--family", "fib", "--n", "3", "--p", "1/2", "--q", "3.0", "--s", "1.0",
        "--mode", "float",
    ]);
    assert_eq!(out.status.code(), Some(2));
    // malformed rational
    let out = run(&[
        "eval", "--family", "fib", "--n", "3", "--p", "x", "--q", "3", "--s", "1",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn numbers_classical_cross_check() {
    let out = run(&[
        "numbers", "--family", "fib", "--n-max", "6", "--p", "1", "--q", "1",
    ]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    let vals: Vec<&str> = v["results"]["values"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| x.as_str().unwrap())
        .collect();
    assert_eq!(vals, ["0", "1", "1", "2", "3", "5", "8"]);
    assert!(v["results"]["classical"].is_array());

    let out = run(&[
        "numbers", "--family", "lucas", "--n-max", "4", "--p", "1", "--q", "1",
    ]);
    let v = stdout_json(&out);
    let vals: Vec<&str> = v["results"]["values"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| x.as_str().unwrap())
        .collect();
    assert_eq!(vals, ["1", "1", "3", "4", "7"]);

    // deformed: no classical column
    let out = run(&[
        "numbers", "--family", "fib", "--n-max", "3", "--p", "2", "--q", "3",
    ]);
    let v = stdout_json(&out);
    let vals: Vec<&str> = v["results"]["values"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| x.as_str().unwrap())
        .collect();
    assert_eq!(vals, ["0", "1", "1", "7"]);
    assert!(v["results"].get("classical").is_none());
}

#[test]
fn genfunc_matches() {
    let out = run(&[
        "genfunc", "--family", "fib", "--p", "2", "--q", "3", "--s", "1", "--x", "1",
        "--order", "3",
    ]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(v["results"]["match"], true);
    let closed: Vec<&str> = v["results"]["closed"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| x.as_str().unwrap())
        .collect();
    assert_eq!(closed, ["0", "1", "1", "7/4"]);

    let out = run(&[
        "genfunc", "--family", "fib", "--p", "2", "--q", "3", "--s", "1", "--x", "1",
        "--order", "65",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_exit_codes_and_determinism() {
    let args = [
        "verify", "--suite", "binomials", "--n-max", "30", "--seed", "7",
    ];
    let first = run(&args);
    assert_eq!(first.status.code(), Some(0));
    let second = run(&args);
    assert_eq!(first.stdout, second.stdout, "same command+seed must be byte-identical");
    let v = stdout_json(&first);
    assert_eq!(v["results"]["checks"].as_array().unwrap().len(), 2);
    assert_eq!(v["command"], "verify");
}

#[test]
fn format_switches() {
    let base = [
        "numbers", "--family", "fib", "--n-max", "3", "--p", "2", "--q", "3",
    ];
    let mut csv = base.to_vec();
    csv.extend(["--format", "csv"]);
    let out = run(&csv);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().next(), Some("n,value"));
    assert!(text.lines().any(|l| l == "3,7"));

    let mut plain = base.to_vec();
    plain.extend(["--format", "plain"]);
    let out = run(&plain);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("3\t7"));
}

#[test]
fn unknown_flag_is_usage_error() {
    let out = run(&["eval", "--no-such-flag"]);
    assert_eq!(out.status.code(), Some(2));
}
