use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_padic-mzv"))
        .args(args)
        .env_remove("PADIC_MZV_THREADS")
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&o.stdout)))
}

#[test]
fn depth_one_value_is_certified() {
    let o = run(&["compute", "--p", "2", "--M", "3", "--base", "1", "--word", "e0 e2"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let v = json(&o);
    assert_eq!(v["word"], "e0 e2");
    assert!(v["certified_digits"].as_i64().unwrap() >= 4);
    let val = v["valuation"].as_i64().unwrap();
    let digits = v["digits"].as_array().unwrap();
    assert_eq!(digits.len(), 2, "one digit list per basis element, f = 2");
    for d in digits {
        assert_eq!(d.as_array().unwrap().len() as i64, v["certified_digits"].as_i64().unwrap() - val);
    }
    // the unit part really is a unit: some basis coefficient has a nonzero first digit
    assert!(digits.iter().any(|d| d[0] != 0));
    assert_eq!(v["provenance"][1], "depth1_alt");
}

#[test]
fn trivial_words_are_zero() {
    for args in [["compute", "--word", "e0^3", "--base", "1"], ["compute", "--word", "e1", "--base", "1"]] {
        let o = run(&args);
        assert_eq!(code(&o), 0);
        let v = json(&o);
        assert!(v["valuation"].is_null(), "{v}");
        assert_eq!(v["digits"].as_array().unwrap().len(), 0);
    }
}

#[test]
fn text_format_prints_one_line() {
    let o = run(&["compute", "--word", "e2 e0^1 e3 e0^1", "--format", "text"]);
    assert_eq!(code(&o), 0);
    let s = String::from_utf8(o.stdout).unwrap();
    assert_eq!(s.lines().count(), 1);
    assert!(s.starts_with("g_1[e2 e0 e3 e0] = 2^"), "{s}");
}

#[test]
fn usage_and_domain_errors_exit_2() {
    let cases: &[&[&str]] = &[
        &["compute", "--p", "4", "--word", "e1"],
        &["compute", "--p", "3", "--M", "6", "--word", "e1"],
        &["compute", "--word", "e7"],
        &["compute", "--word", "e1 e0 e1"],
        &["compute", "--word", "x1"],
        &["compute"],
        &["compute", "--word", "e1 e2 e3 e0 e0 e0"],
        &["compute", "--word", "e1", "--N-max", "2"],
        &["verify"],
        &["verify", "--suite", ""],
        &["verify", "--suite", "nope"],
        &["frobnicate"],
    ];
    for args in cases {
        assert_eq!(code(&run(args)), 2, "{args:?}");
    }
}

#[test]
fn insufficient_certificate_exits_3() {
    let o = run(&["compute", "--word", "e2 e0 e3", "--threshold", "30"]);
    assert_eq!(code(&o), 3);
    // the value is still printed
    assert!(json(&o)["certified_digits"].as_i64().unwrap() < 30);
}

#[test]
fn failing_verification_exits_1_and_names_the_first_failure() {
    let o = run(&["verify", "--suite", "dual", "--threshold", "30"]);
    assert_eq!(code(&o), 1);
    let v = json(&o);
    assert_eq!(v["passed"], false);
    assert_eq!(v["first_failure"][0], "dual");
    assert_eq!(v["first_failure"][1]["passed"], false);
}

#[test]
fn shuffle_and_dual_suites_pass() {
    let o = run(&["verify", "--suite", "shuffle,dual"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stdout));
    let v = json(&o);
    let names: Vec<&str> = v["suites"].as_array().unwrap().iter().map(|s| s["suite"].as_str().unwrap()).collect();
    assert_eq!(names, ["shuffle", "dual"]);
    assert!(v["first_failure"].is_null());
}

#[test]
fn table_is_complete_and_reproducible() {
    let a = run(&["table", "--p", "2", "--M", "3", "--word-cap", "5"]);
    assert_eq!(code(&a), 0);
    let rows: Vec<Value> =
        a.stdout.split(|&b| b == b'\n').filter(|l| !l.is_empty()).map(|l| serde_json::from_slice(l).unwrap()).collect();
    // 3 * 2 * 1 letter triples times the 10 pairs s + t <= 5
    assert_eq!(rows.len(), 60);
    for r in &rows {
        assert!(r["certified_digits"].as_i64().unwrap() >= 4);
    }
    let b = run(&["table", "--p", "2", "--M", "3", "--word-cap", "5", "--threads", "1"]);
    assert_eq!(a.stdout, b.stdout, "sequential and parallel tables differ");
}
