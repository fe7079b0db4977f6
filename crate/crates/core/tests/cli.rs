use std::process::{Command, Output};

fn ffhyp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ffhyp"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn eval_prints_coefficients_and_header() {
    let o = ffhyp(&[
        "eval",
        "--q",
        "7",
        "--variant",
        "star",
        "--top",
        "3,1",
        "--bottom",
        "2",
        "--x",
        "-1",
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    let out = stdout(&o);
    assert!(out.starts_with("# F_7, g = 3;"), "{out}");
    assert!(out.contains("coefficients over ζ_42: ["), "{out}");
    assert!(out.contains("rational: "), "{out}");
}

#[test]
fn eval_first_order_at_one() {
    let o = ffhyp(&[
        "eval",
        "--q",
        "5",
        "--variant",
        "star",
        "--top",
        "0",
        "--x",
        "1",
    ]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("rational: -4"), "{}", stdout(&o));
}

#[test]
fn eval_at_zero_vanishes() {
    let o = ffhyp(&[
        "eval",
        "--q",
        "7",
        "--variant",
        "star",
        "--top",
        "1,2",
        "--bottom",
        "3",
        "--x",
        "0",
    ]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("rational: 0\n"), "{}", stdout(&o));
}

#[test]
fn eval_extension_field_json() {
    let o = ffhyp(&[
        "eval", "--q", "9", "--top", "1,2", "--bottom", "3", "--x", "g^3", "--format", "json",
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["field"]["q"], 9);
    assert_eq!(v["conductor"], 24);
    assert_eq!(v["x"], "g^3");
    assert!(v["coefficients"].as_str().unwrap().starts_with('['));
}

#[test]
fn eval_usage_errors() {
    let arity = ffhyp(&["eval", "--q", "7", "--top", "1,2", "--x", "1"]);
    assert_eq!(arity.status.code(), Some(2));
    assert!(
        stderr(&arity).contains("bottom parameters"),
        "{}",
        stderr(&arity)
    );

    let katz_zero = ffhyp(&[
        "eval",
        "--q",
        "7",
        "--variant",
        "katz",
        "--top",
        "1",
        "--x",
        "0",
    ]);
    assert_eq!(katz_zero.status.code(), Some(2));

    let not_prime_power = ffhyp(&["eval", "--q", "6", "--top", "0", "--x", "1"]);
    assert_ne!(not_prime_power.status.code(), Some(0));

    let bad_elem = ffhyp(&["eval", "--q", "7", "--top", "0", "--x", "h^2"]);
    assert_eq!(bad_elem.status.code(), Some(2));
}

#[test]
fn max_q_bounds_the_field() {
    let o = ffhyp(&["--max-q", "5", "eval", "--q", "7", "--top", "0", "--x", "1"]);
    assert_ne!(o.status.code(), Some(0));
    let ok = ffhyp(&["eval", "--max-q", "7", "--q", "7", "--top", "0", "--x", "1"]);
    assert!(ok.status.success(), "{}", stderr(&ok));
}

#[test]
fn verify_dixon_passes() {
    let o = ffhyp(&[
        "verify",
        "--theorem",
        "dixon",
        "--q",
        "5,7",
        "--plan",
        "exhaustive",
    ]);
    assert!(o.status.success(), "{}", stdout(&o));
    let out = stdout(&o);
    assert!(out.contains("PASS dixon q=5"));
    assert!(out.contains("PASS dixon q=7"));
}

#[test]
fn verify_even_field_skips_with_warning() {
    let o = ffhyp(&["verify", "--theorem", "dixon", "--q", "8"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("SKIPPED dixon q=8"));
    assert!(stderr(&o).contains("warning"));
}

#[test]
fn verify_unknown_theorem_fails() {
    let o = ffhyp(&["verify", "--theorem", "nope"]);
    assert!(!o.status.success());
    assert!(stderr(&o).contains("unknown theorem"));
}

#[test]
fn verify_json_schema() {
    let o = ffhyp(&[
        "verify",
        "--theorem",
        "kummer",
        "--q",
        "5",
        "--plan",
        "exhaustive",
        "--format",
        "json",
    ]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let r = &v["reports"][0];
    for key in [
        "theorem_id",
        "q",
        "generator",
        "tuples_tested",
        "branches",
        "failures",
        "skipped",
    ] {
        assert!(r.get(key).is_some(), "missing {key}");
    }
    assert_eq!(r["theorem_id"], "kummer");
    assert_eq!(r["tuples_tested"], 16);
    assert_eq!(v["plan"], "exhaustive");
}

#[test]
fn suite_json_is_reproducible() {
    let args = [
        "suite",
        "--q",
        "3,4",
        "--plan",
        "sample:50:7",
        "--format",
        "json",
    ];
    let (a, b) = (ffhyp(&args), ffhyp(&args));
    assert!(a.status.success(), "{}", stderr(&a));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn modular_matches() {
    let o = ffhyp(&["modular", "--primes", "3,5,7,11,13"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("5/5 primes match"), "{}", stdout(&o));
}

#[test]
fn modular_rejects_two() {
    let o = ffhyp(&["modular", "--primes", "2"]);
    assert!(!o.status.success());
    assert!(stderr(&o).contains("NotOddPrime"));
}

#[test]
fn modular_json_record() {
    let o = ffhyp(&["modular", "--primes", "3", "--format", "json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let r = &v["results"][0];
    assert_eq!(r["p"], 3);
    assert_eq!(r["match"], true);
    assert_eq!(r["integral"], true);
}

#[test]
fn help_exits_zero() {
    let o = ffhyp(&["--help"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("verify"));
}
