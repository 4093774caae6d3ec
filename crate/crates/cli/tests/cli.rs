//! Black-box tests of the binary: exit codes, output contracts, the
//! environment override and byte-for-byte determinism.

use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_radical-gon"))
        .args(args)
        .env_remove("RADICAL_GON_DIGITS")
        .output()
        .expect("binary runs")
}

fn run_with_env(args: &[&str], digits: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_radical-gon"))
        .args(args)
        .env("RADICAL_GON_DIGITS", digits)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

#[test]
fn decide_exit_codes_and_lines() {
    let out = run(&["decide", "17"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "constructible 17 = 17\n");

    let out = run(&["decide", "9"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).starts_with("not constructible 9 = 3^2"));
    assert!(stdout(&out).contains("(**)"));

    let out = run(&["decide", "7"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("(*)"));

    let out = run(&["decide", "60"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "constructible 60 = 2^2 * 3 * 5\n");
}

#[test]
fn malformed_input_is_a_usage_error() {
    assert_eq!(run(&["decide", "x"]).status.code(), Some(2));
    assert_eq!(run(&["decide", "0"]).status.code(), Some(2));
    assert_eq!(run(&["decide"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate", "3"]).status.code(), Some(2));
}

#[test]
fn construct_prints_expression_and_verification() {
    let out = run(&["construct", "5", "--format", "latex"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let mut lines = text.lines();
    let expr = lines.next().unwrap();
    assert!(expr.contains("\\sqrt{5}"));
    assert_eq!(lines.next().unwrap(), "verified to 30 digits");

    let out = run(&["construct", "2"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).starts_with("-1\n"));
}

#[test]
fn construct_rejects_non_constructible_with_certificate_summary() {
    let out = run(&["construct", "7"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(stdout(&out), "");
    let diag = stderr(&out);
    assert!(diag.contains("not constructible 7"));
    assert!(diag.contains("certificate"));
    assert!(diag.contains("Eisenstein prime 7"));
}

#[test]
fn construct_output_is_byte_identical_across_runs() {
    for args in [
        vec!["construct", "17"],
        vec!["construct", "60", "--format", "json"],
        vec!["periods", "17"],
    ] {
        let a = run(&args);
        let b = run(&args);
        assert_eq!(a.stdout, b.stdout, "non-deterministic output for {args:?}");
        assert_eq!(a.status.code(), b.status.code());
    }
}

#[test]
fn construct_json_parses_back_and_verifies() {
    let out = run(&["construct", "60", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let json = text.lines().next().unwrap();
    let expr = radical_gon_core::radicals::parse_json(json).expect("own JSON parses");
    let value = radical_gon_core::radicals::evaluate(&expr, 30).unwrap();
    let reference = radical_gon_core::radicals::reference_cos(60, 30);
    assert!(radical_gon_core::construct::agree_within(
        &value, &reference, 30
    ));
}

#[test]
fn verify_command() {
    let out = run(&["verify", "17", "--digits", "50"]);
    assert_eq!(out.status.code(), Some(0));
    let line = stdout(&out);
    assert!(line.starts_with("ok n=17 digits=50 bound=0."));

    let out = run(&["verify", "1"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).starts_with("ok n=1 digits=30"));

    let out = run(&["verify", "9"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("not constructible"));

    let out = run(&["verify", "257", "--digits", "100"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).starts_with("ok n=257 digits=100"));
}

#[test]
fn digits_environment_override() {
    let out = run_with_env(&["construct", "5"], "40");
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("verified to 40 digits"));

    // the explicit flag wins over the environment
    let out = run_with_env(&["construct", "5", "--digits", "25"], "40");
    assert!(stdout(&out).contains("verified to 25 digits"));

    // a malformed override is a usage error
    let out = run_with_env(&["construct", "5"], "many");
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn periods_command() {
    let out = run(&["periods", "5"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.starts_with("p=5 m=2 g=2\n"));
    assert!(text.contains("bits=0 level=0 count=2 support={1,4} sum_ok=yes alpha_ok=yes"));
    assert!(text.contains("bits=1 level=0 count=2 support={2,3} sum_ok=yes alpha_ok=yes"));

    let out = run(&["periods", "17", "--level", "0"]);
    let text = stdout(&out);
    let rows: Vec<&str> = text.lines().skip(1).collect();
    assert_eq!(rows.len(), 2);
    assert!(rows.iter().all(|r| r.contains("count=8")));

    let out = run(&["periods", "7"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("not a Fermat prime"));

    // 6 is a primitive root mod 17; 2 is not
    assert_eq!(
        run(&["periods", "17", "--root", "6"]).status.code(),
        Some(0)
    );
    let out = run(&["periods", "17", "--root", "2"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("not a primitive root"));

    // out-of-range level is a usage error
    assert_eq!(
        run(&["periods", "5", "--level", "5"]).status.code(),
        Some(2)
    );
}

#[test]
fn certify_command() {
    let out = run(&["certify", "7"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("\"degree\":6"));
    assert!(text.contains("\"eisenstein_prime\":7"));
    assert!(text.contains("\"shifted_ok\":true"));
    assert!(text.contains("\"degree_power_of_two\":false"));

    let out = run(&["certify", "9"]);
    assert!(stdout(&out).contains("\"witness_poly\":[\"1\",\"0\",\"0\",\"1\",\"0\",\"0\",\"1\"]"));

    let out = run(&["certify", "17"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("constructible"));
}
