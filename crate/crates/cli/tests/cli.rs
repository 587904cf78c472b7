use std::fs;
use std::process::{Command, Output};

use tempfile::tempdir;

fn blockalg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_blockalg"))
        .args(args)
        .env_remove("BLOCKALG_VERBOSE")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8 output")
}

#[test]
fn bracket_prints_the_virasoro_example() {
    let o = blockalg(&[
        "bracket",
        "--q",
        "q",
        "--lhs",
        r#"{"terms":[{"alpha":2,"i":0,"coeff":"1"}]}"#,
        "--rhs",
        r#"{"terms":[{"alpha":-2,"i":0,"coeff":"1"}]}"#,
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "-4*q*L[0,0] + (1/2)*c");
}

#[test]
fn bracket_at_a_negative_rational_q() {
    let o = blockalg(&[
        "bracket",
        "--q",
        "-1/2",
        "--lhs",
        r#"{"terms":[{"alpha":1,"i":1,"coeff":"1"}]}"#,
        "--rhs",
        r#"{"terms":[{"alpha":-1,"i":0,"coeff":"1"}]}"#,
    ]);
    // (-1)(1 - 1/2) - 1(0 - 1/2) = 0
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "0");
}

#[test]
fn qf_check_on_the_trivial_weight() {
    let dir = tempdir().unwrap();
    let w = dir.path().join("w.json");
    fs::write(&w, r#"{"q":"q","labels":["0","0","0","0","0","0"]}"#).unwrap();
    let o = blockalg(&["qf-check", "--weight", w.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "QUASIFINITE, h = 1");
}

#[test]
fn charpoly_of_exponential_labels() {
    // Lambda_n = 2^n / (n + 2) at q = 1
    let o = blockalg(&[
        "charpoly",
        "--weight",
        r#"{"q":"1","labels":["1/2","2/3","1","8/5","8/3","32/7","64/8"]}"#,
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "h = t - 2");
}

#[test]
fn failing_check_exits_with_one() {
    let o = blockalg(&[
        "module-verify",
        "--module",
        r#"{"q":"2","family":{"kind":"Aab","a":"a","b":"b"},"extension":{"kind":"Level","level":1,"s":"s"}}"#,
        "--alpha-max",
        "1",
        "--level-max",
        "1",
        "--mu-max",
        "1",
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).starts_with("FAIL"));
}

#[test]
fn bad_input_exits_with_two() {
    let o = blockalg(&[
        "bracket",
        "--lhs",
        r#"{"terms":[{"alpha":1,"i":0,"coeff":"2*"}]}"#,
        "--rhs",
        "{}",
    ]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("line 1, column"), "{err}");

    let o = blockalg(&["verify-paper", "--suite", "geometry"]);
    assert_eq!(o.status.code(), Some(2));

    let o = blockalg(&["qf-check", "--weight", "/nonexistent/w.json"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn json_report_is_written() {
    let dir = tempdir().unwrap();
    let path = dir.path().join("r.json");
    let o = blockalg(&[
        "--json",
        path.to_str().unwrap(),
        "ad-chain",
        "--mu0",
        "-1",
        "--k1",
        "1",
        "--k2",
        "2",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["suite"], "ad-chain");
    assert_eq!(v["checks"][0]["verdict"], "pass");
}

#[test]
fn solve_case_accepts_numbered_aliases() {
    let a = blockalg(&["solve-case", "--subcase", "2.1"]);
    let b = blockalg(&["solve-case", "--subcase", "Aa"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(stdout(&a), stdout(&b));
}

#[test]
fn verify_paper_json_is_byte_identical() {
    let dir = tempdir().unwrap();
    let p1 = dir.path().join("a.json");
    let p2 = dir.path().join("b.json");
    let o1 = blockalg(&[
        "--json",
        p1.to_str().unwrap(),
        "verify-paper",
        "--suite",
        "all",
    ]);
    let o2 = blockalg(&[
        "--json",
        p2.to_str().unwrap(),
        "--sequential",
        "verify-paper",
        "--suite",
        "all",
    ]);
    assert_eq!(o1.status.code(), Some(0), "{}", stdout(&o1));
    assert_eq!(o2.status.code(), Some(0));
    let a = fs::read(&p1).unwrap();
    assert!(!a.is_empty());
    assert_eq!(a, fs::read(&p2).unwrap());
    let v: serde_json::Value = serde_json::from_slice(&a).unwrap();
    assert_eq!(v["suite"], "all");
    assert!(v["checks"].as_array().unwrap().len() > 100);
}
