use std::path::PathBuf;
use std::process::Command;

use num_bigint::BigInt;
use orbitdensity::report::{cover_from_json, cover_json, density_from_json, density_json, witnesses_from_json};
use orbitdensity::spec::parse_rational;
use orbitdensity_core::chaos::{li_yorke_verdict, LiYorkeParams};
use orbitdensity_core::setclass::example52_sets;
use orbitdensity_core::shift::{Alphabet, Dyadic, SymbolicPoint};
use orbitdensity_core::Rational;
use serde_json::Value;

struct Run {
    code: Option<i32>,
    stdout: String,
    stderr: String,
}

fn run(args: &[&str]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_orbitdensity"))
        .args(args)
        .env_remove("ORBITDENSITY_THREADS")
        .output()
        .unwrap();
    Run {
        code: out.status.code(),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

fn json(args: &[&str]) -> Value {
    let r = run(args);
    assert_eq!(r.code, Some(0), "{args:?}: {}", r.stderr);
    serde_json::from_str(&r.stdout).unwrap()
}

fn r(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

fn rat(v: &Value) -> Rational {
    parse_rational(v.as_str().unwrap()).unwrap()
}

fn kept(v: &Value) -> Vec<&str> {
    v["kept"].as_array().unwrap().iter().map(|e| e["word"].as_str().unwrap()).collect()
}

fn scratch(name: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    dir.join(name)
}

#[test]
fn density_of_even_numbers() {
    let v = json(&[
        "density",
        "--set",
        r#"{"type":"progression","m":2,"r":0}"#,
        "--folner",
        "standard",
        "--horizon",
        "200",
    ]);
    let upper = rat(&v["headline_upper"]);
    assert!(upper >= r(1, 2) && upper - r(1, 2) < r(1, 100));
}

#[test]
fn density_report_round_trips_and_matches_direct_counts() {
    let v = json(&["density", "--set", "example52.A", "--folner", "standard", "--horizon", "1000"]);
    let rep = density_from_json(&v).unwrap();
    assert_eq!(density_json(&rep), v);
    let (a, _, _) = example52_sets();
    for n in [0i64, 7, 99, 100, 250, 333, 500, 640, 999, 1000] {
        let hits = (-n..=n).filter(|&i| a.member(i)).count() as i64;
        assert_eq!(rep.ratios[n as usize].1, r(hits, 2 * n + 1), "n = {n}");
    }
}

#[test]
fn cover_reports_round_trip() {
    let mut v =
        json(&["coa", "--point", "example51", "--folner", "standard", "-k", "2", "--horizon", "5040", "--tol", "0.05"]);
    assert_eq!(kept(&v), ["00000", "11111"]);
    assert_eq!(v["checks"]["s_generic"], false);
    assert_eq!(v["checks"]["shift_violations"].as_array().unwrap().len(), 0);
    v.as_object_mut().unwrap().remove("checks");
    assert_eq!(cover_json(&cover_from_json(&v).unwrap()), v);
}

#[test]
fn covers_along_the_two_sequences() {
    let point = r#"{"type":"indicator","set":"example53_support"}"#;
    for (folner, want) in [("example53_F", "111"), ("example53_H", "000")] {
        let v = json(&["coa", "--point", point, "--folner", folner, "-k", "1", "--horizon", "60", "--tol", "0.3"]);
        assert_eq!(kept(&v), [want]);
        assert_eq!(v["checks"]["in_orbit"], true);
    }
}

#[test]
fn setclass_tables() {
    let v = json(&["setclass", "--set", "example52.C", "--lo", "1", "--hi", "100000"]);
    let last = v["rows"].as_array().unwrap().last().unwrap();
    assert_eq!(last["hi"], 100_000);
    assert!(last["max_gap"].as_u64().unwrap() <= 10);
    assert!(last["max_run"].as_u64().unwrap() >= 8000);

    let v = json(&["setclass", "--set", r#"{"type":"finite","elems":[0]}"#, "--lo", "-5", "--hi", "5"]);
    assert_eq!(v["rows"][0]["max_run"], 1);
    assert_eq!(v["rows"][0]["max_gap"], Value::Null);

    let text = run(&["setclass", "--triple", "example52", "--hi", "100000", "--format", "tsv"]).stdout;
    assert!(text.contains("A∩B∩C empty: true"), "{text}");
}

#[test]
fn chaos_verdicts() {
    let one = r#"{"type":"periodic","word":"1"}"#;
    let zero = r#"{"type":"periodic","word":"0"}"#;
    let v = json(&["chaos", "--x", "z", "--y", one, "--horizon", "10000", "-R", "6"]);
    assert_eq!(v["verdict"]["liyorke"], true);
    let v = json(&["chaos", "--x", zero, "--y", one]);
    assert_eq!(v["verdict"]["liyorke"], false);

    let v = json(&["chaos", "--fchaotic", "--x", "example51", "--y", zero]);
    for key in ["l_seq", "r_seq", "s_seq", "t_seq"] {
        assert!(!v["fchaotic"][key].as_array().unwrap().is_empty(), "{key}");
    }
    let params = LiYorkeParams::new(10_000, 6, Dyadic(5), vec![10, 100, 1000]);
    let zero = SymbolicPoint::constant(Alphabet::BINARY, 0).unwrap();
    let direct = li_yorke_verdict(&SymbolicPoint::example51(), &zero, &params).unwrap();
    assert_eq!(witnesses_from_json(&v["verdict"]["proximal_evidence"]).unwrap(), direct.proximal_evidence);
}

#[test]
fn examples_pass() {
    for which in ["5.1", "5.2", "5.3"] {
        let r = run(&["example", which]);
        assert_eq!(r.code, Some(0), "{}", r.stdout);
        assert!(r.stdout.lines().any(|l| l.starts_with("PASS")));
        assert!(!r.stdout.contains("FAIL"), "{}", r.stdout);
    }
}

#[test]
fn exit_codes() {
    let bad = run(&["density", "--set", r#"{"type":"progression","m":2,"r":"x"}"#, "--horizon", "5"]);
    assert_eq!(bad.code, Some(2));
    assert!(bad.stderr.contains("set.r"), "{}", bad.stderr);

    let bad = run(&["density", "--set", r#"{"type":"progression","m":2"#, "--horizon", "5"]);
    assert_eq!(bad.code, Some(2));

    let bad = run(&["coa", "--point", "example51", "-k", "1", "--horizon", "10", "--tol", "one"]);
    assert_eq!(bad.code, Some(2));
    assert!(bad.stderr.contains("--tol"), "{}", bad.stderr);

    assert_eq!(run(&["example", "5.9"]).code, Some(2));
    assert_eq!(run(&["density", "--horizon", "5"]).code, Some(2));

    let pre = run(&["chaos", "--x", "z", "--y", "z", "--horizon", "5", "--tail-indices", "10"]);
    assert_eq!(pre.code, Some(3));
    assert!(pre.stderr.contains("tail index"), "{}", pre.stderr);
    let pre = run(&["chaos", "--x", "z", "--y", r#"{"type":"periodic","word":"2","alphabet":3}"#, "--horizon", "20"]);
    assert_eq!(pre.code, Some(3), "{}", pre.stderr);
}

#[test]
fn tsv_carries_exact_and_approximate_columns() {
    let text =
        run(&["density", "--set", r#"{"type":"progression","m":3,"r":0}"#, "--horizon", "3", "--format", "tsv"]).stdout;
    assert!(text.contains("n\tratio\tratio_approx\n"));
    assert!(text.contains("\n1\t1/3\t0.333333\n"), "{text}");
}

#[test]
fn specs_load_from_files_and_reports_go_to_files() {
    let spec = scratch("progression.json");
    std::fs::write(&spec, r#"{"type":"progression","m":5,"r":1}"#).unwrap();
    let out = scratch("density.json");
    let args = ["density", "--set", spec.to_str().unwrap(), "--horizon", "40"];
    let printed = run(&args).stdout;
    let written = run(&[&args[..], &["--output", out.to_str().unwrap()]].concat());
    assert_eq!(written.code, Some(0));
    assert!(written.stdout.is_empty());
    assert_eq!(std::fs::read_to_string(&out).unwrap(), printed);
}

#[test]
fn thread_count_does_not_change_output() {
    let args = ["setclass", "--triple", "example52", "--hi", "100000"];
    let base = run(&args).stdout;
    for threads in ["2", "4", "7"] {
        assert_eq!(run(&[&["--threads", threads][..], &args[..]].concat()).stdout, base);
    }
}
