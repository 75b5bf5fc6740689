use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn somos(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_somos"))
        .args(args)
        .env_remove("SOMOS_DIGITS")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8")
}

fn docs(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "docs", "examples", name]
        .iter()
        .collect();
    p.to_string_lossy().into_owned()
}

const SOMOS4: [&str; 7] = ["somos4", "run", "--alpha", "1", "--beta", "1", "--seeds"];

#[test]
fn somos4_run_text() {
    let mut args = SOMOS4.to_vec();
    args.extend(["1,1,1,1", "--n", "10", "--format", "text"]);
    let out = somos(&args);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).trim(), "1,1,1,1,2,3,7,23,59,314");
}

#[test]
fn somos4_run_json_shape() {
    let mut args = SOMOS4.to_vec();
    args.extend(["1,1,1,1", "--n", "6"]);
    let v = json(&somos(&args));
    assert_eq!(v["command"], "somos4 run");
    assert_eq!(v["digits"], 25);
    assert!(v["config"].is_object());
    assert!(v["result"].is_object());
}

#[test]
fn somos4_run_csv() {
    let mut args = SOMOS4.to_vec();
    args.extend(["1,1,1,1", "--n", "8", "--format", "csv"]);
    let s = stdout(&somos(&args));
    let mut lines = s.lines();
    assert_eq!(lines.next(), Some("index,numerator,denominator"));
    assert_eq!(lines.last(), Some("7,23,1"));
}

#[test]
fn input_file_matches_flags() {
    let from_file = somos(&[
        "somos4",
        "run",
        "--input",
        &docs("somos4.json"),
        "--n",
        "10",
        "--format",
        "csv",
    ]);
    let mut args = SOMOS4.to_vec();
    args.extend(["1,1,1,1", "--n", "10", "--format", "csv"]);
    assert_eq!(from_file.status.code(), Some(0));
    assert_eq!(from_file.stdout, somos(&args).stdout);
}

#[test]
fn solve_invariants() {
    let v = json(&somos(&[
        "somos4", "solve", "--alpha", "1", "--beta", "1", "--seeds", "1,1,1,1",
    ]));
    let text = v["result"].to_string();
    assert!(text.contains("\"g2\":\"4\""), "{text}");
    assert!(text.contains("\"g3\":\"-1\""), "{text}");
}

#[test]
fn digits_from_env() {
    let out = Command::new(env!("CARGO_BIN_EXE_somos"))
        .args(["somos4", "solve", "--alpha", "1", "--beta", "1", "--seeds", "1,1,1,1"])
        .env("SOMOS_DIGITS", "40")
        .output()
        .unwrap();
    assert_eq!(json(&out)["digits"], 40);
}

#[test]
fn eds_gen() {
    let out = somos(&["eds", "gen", "--seeds", "1,-1,-1,-1", "--format", "text"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).trim(), "0,1,-1,-1,-1,2,1,-3,5,7");
}

#[test]
fn schur_verify_all_zero() {
    let out = somos(&["schur", "verify"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["result"]["pass"], true);
    for id in v["result"]["identities"].as_array().unwrap() {
        assert_eq!(id["residual"], "0");
    }
}

#[test]
fn g2_verify_from_file() {
    let out = somos(&["g2", "verify", "--input", &docs("g2.json")]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["result"]["pass"], true);
}

#[test]
fn g2_wrong_coefficients_exit_3() {
    let out = somos(&["g2", "verify", "--input", &docs("g2.json"), "--alpha", "1,1,1,1"]);
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(json(&out)["result"]["pass"], false);
}

#[test]
fn singular_curve_exit_1() {
    let out = somos(&["g2", "validate", "--curve", "0,0,0,0,0"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn bad_arguments_exit_1() {
    assert_eq!(
        somos(&["somos4", "run", "--alpha", "1", "--beta", "1", "--seeds", "1,1,1"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(somos(&["somos4", "run", "--alpha", "x"]).status.code(), Some(1));
    assert_eq!(somos(&["nonsense"]).status.code(), Some(1));
}

#[test]
fn computation_error_exit_2() {
    let out = somos(&["somos4", "solve", "--alpha", "1", "--beta", "1", "--seeds", "0,0,0,0"]);
    assert_eq!(out.status.code(), Some(2));
    let err: Value = serde_json::from_slice(&out.stderr).expect("stderr is JSON");
    assert!(err["error"].is_string());
    assert!(err["message"].is_string());
}

#[test]
fn no_csv_is_a_validation_error() {
    assert_eq!(somos(&["schur", "verify", "--format", "csv"]).status.code(), Some(1));
}

#[test]
fn hh_crosscheck_passes() {
    let out = somos(&[
        "hh",
        "crosscheck",
        "--state",
        "2,1,0,0",
        "--lambda",
        "1/2",
        "--steps",
        "3",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["result"]["pass"], true);
}

#[test]
fn hh_exact_orbit() {
    let out = somos(&[
        "hh", "simulate", "--exact", "--state", "2,1,0,0", "--lambda", "1/2", "--steps", "1",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let step = &json(&out)["result"]["steps"][1];
    assert_eq!(step["coords"]["q1_sq"], "8");
    assert_eq!(step["coords"]["q2"], "-2");
    assert_eq!(step["on_curve"], true);
    assert!(step["state"].is_null());
}

#[test]
fn hh_real_orbit_csv() {
    let out = somos(&[
        "hh",
        "simulate",
        "--c",
        "-1",
        "--state",
        "1.25,0.5,0.125,-0.25",
        "--lambda",
        "0.5",
        "--steps",
        "5",
        "--format",
        "csv",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let s = stdout(&out);
    assert_eq!(s.lines().next(), Some("step,q1,q2,p1,p2,h1,h2,lax_residual"));
    assert_eq!(s.lines().count(), 7);
}

#[test]
fn output_is_deterministic() {
    let args = ["paper", "reproduce", "--criterion", "10", "--format", "json"];
    let strip = |o: Output| {
        let mut v = json(&o);
        for c in v["result"]["criteria"].as_array_mut().into_iter().flatten() {
            c["elapsed_s"] = Value::Null;
        }
        v
    };
    assert_eq!(strip(somos(&args)), strip(somos(&args)));
    let run = [
        "somos4",
        "closed-form",
        "--alpha",
        "1",
        "--beta",
        "1",
        "--seeds",
        "1,1,1,1",
    ];
    assert_eq!(somos(&run).stdout, somos(&run).stdout);
}

#[test]
fn reproduce_single_criterion() {
    let out = somos(&["paper", "reproduce", "--criterion", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let s = stdout(&out);
    assert!(s.contains("PASS"), "{s}");
    assert!(!s.contains("FAIL"), "{s}");
}
