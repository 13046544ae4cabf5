//! End-to-end tests of the `qunify` binary: spec'd example invocations,
//! exit codes, output formats, and round-trips through the library parsers.

use std::path::Path;
use std::process::{Command, Output};

fn qunify(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qunify"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_of(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 stdout")
}

fn stderr_of(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("utf-8 stderr")
}

#[test]
fn numbers_improved_bernoulli_json() {
    let out = qunify(&[
        "numbers", "--family", "improved", "--kind", "bernoulli", "--n", "6", "--format", "json",
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout_of(&out)).expect("valid json");
    assert_eq!(v["schema"], 1);
    assert_eq!(v["kind"], "bernoulli");
    assert_eq!(v["family"], "improved");
    assert_eq!(v["entries"]["0"], "1");
    assert_eq!(v["entries"]["1"], "-1/2");
    assert_eq!(v["entries"]["3"], "0");
    assert_eq!(v["entries"]["5"], "0");
    // Every value parses back to a canonical rational function.
    for n in 0..=6 {
        let s = v["entries"][n.to_string()].as_str().unwrap();
        let parsed = qunify::parse::parse_qrat(s).expect("entry parses");
        assert_eq!(parsed.render(), s, "canonical round-trip at n={n}");
    }
}

#[test]
fn numbers_gauss_genocchi_csv_starts_at_zero() {
    let out = qunify(&["numbers", "--family", "gauss", "--kind", "genocchi", "--n", "4"]);
    assert!(out.status.success());
    let text = stdout_of(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("n,value"));
    assert_eq!(lines.next(), Some("0,0"));
    assert_eq!(lines.next(), Some("1,1"));
}

#[test]
fn numbers_ones_euler_order_zero() {
    let out = qunify(&["numbers", "--family", "ones", "--kind", "euler", "--n", "0"]);
    assert!(out.status.success());
    assert_eq!(stdout_of(&out), "n,value\n0,1\n");
}

#[test]
fn numbers_low_order_is_raised_with_notice() {
    let out = qunify(&[
        "numbers", "--family", "ones", "--kind", "euler", "--n", "4", "--order", "2",
    ]);
    assert!(out.status.success());
    assert!(stderr_of(&out).contains("raised to 4"));
    // and a higher order changes nothing in the table
    let bigger = qunify(&[
        "numbers", "--family", "ones", "--kind", "euler", "--n", "4", "--order", "10",
    ]);
    assert_eq!(stdout_of(&out), stdout_of(&bigger));
}

#[test]
fn polys_json_round_trips_through_the_polynomial_parser() {
    let out = qunify(&[
        "polys", "--family", "improved", "--kind", "bernoulli", "--n", "4", "--mode",
        "bivariate", "--format", "json",
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout_of(&out)).expect("valid json");
    assert_eq!(v["kind"], "bernoulli_poly");
    assert_eq!(v["vars"][1], "y");
    for n in 0..=4 {
        let s = v["entries"][n.to_string()].as_str().unwrap();
        let parsed = qunify::qpoly::parse_qpoly(s).expect("entry parses");
        assert_eq!(parsed.render(), s, "canonical round-trip at n={n}");
    }
}

#[test]
fn verify_half_gauss_symmetry_passes() {
    let out = qunify(&["verify", "--family", "half_gauss", "--suite", "symmetry", "--n", "10"]);
    assert!(out.status.success());
    assert!(stdout_of(&out).contains("PASS"));
}

#[test]
fn verify_ones_inverse_reports_residual_but_exits_zero() {
    let out = qunify(&["verify", "--family", "ones", "--suite", "inverse", "--n", "10"]);
    assert!(out.status.success(), "property findings must not fail the run");
    let text = stdout_of(&out);
    assert!(text.contains("r_2 = 1-q"), "missing residual witness in:\n{text}");
}

#[test]
fn verify_improved_all_suites_pass() {
    let out = qunify(&["verify", "--family", "improved", "--suite", "all", "--n", "8"]);
    assert!(out.status.success());
    let text = stdout_of(&out);
    assert!(text.ends_with("verify: PASS\n"), "unexpected tail:\n{text}");
    assert!(!text.contains("FAIL"));
}

#[test]
fn verify_unknown_suite_is_an_input_error() {
    let out = qunify(&["verify", "--family", "ones", "--suite", "sorcery"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn solve_alpha_ones_prints_the_first_even_entry() {
    let out = qunify(&["solve-alpha", "--ones", "--n", "8"]);
    assert!(out.status.success());
    // family JSON on stdout, readable entries on stderr
    assert!(stdout_of(&out).contains("\"2\":\"(1+q)/2\""));
    assert!(stderr_of(&out).contains("alpha_2 = (1+q)/2"));
}

#[test]
fn solve_alpha_n_zero_gives_the_trivial_family() {
    let out = qunify(&["solve-alpha", "--ones", "--n", "0"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout_of(&out)).expect("valid json");
    assert_eq!(v["entries"]["0"], "1");
    assert!(v["entries"].as_object().unwrap().len() == 1);
}

#[test]
fn solve_alpha_with_improved_odds_recovers_improved_evens() {
    let improved = qunify::alpha::builtin_family("improved").unwrap();
    let odd_args: Vec<String> = (1..8)
        .step_by(2)
        .map(|k| format!("{k}={}", improved.alpha(k).unwrap().render()))
        .collect();
    let dir = std::env::temp_dir().join("qunify-cli-solve-test");
    std::fs::create_dir_all(&dir).unwrap();
    let fam_path = dir.join("family.json");
    let out = qunify(&[
        "solve-alpha",
        "--odd",
        &odd_args.join(","),
        "--n",
        "8",
        "--out",
        fam_path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    // --out puts the summary on stdout and the family in the file.
    assert!(stdout_of(&out).contains("alpha_2 = (1+q)/2"));
    let text = std::fs::read_to_string(&fam_path).unwrap();
    let fam = qunify::alpha::family_from_json(&text).expect("family file loads");
    for n in (0..=8).step_by(2) {
        assert_eq!(
            fam.alpha(n).unwrap(),
            improved.alpha(n).unwrap(),
            "even entry n={n}"
        );
    }
}

#[test]
fn solved_family_file_feeds_other_subcommands() {
    let dir = std::env::temp_dir().join("qunify-cli-family-reuse");
    std::fs::create_dir_all(&dir).unwrap();
    // Solved out to 10 because checking Bernoulli entries through index 8
    // needs the weight one past it (the defining series is shifted by t).
    let fam_path = dir.join("ones-solved.json");
    let solved = qunify(&[
        "solve-alpha", "--ones", "--n", "10", "--out", fam_path.to_str().unwrap(),
    ]);
    assert!(solved.status.success());
    assert!(Path::new(&fam_path).is_file());
    let numbers = qunify(&[
        "numbers",
        "--family",
        fam_path.to_str().unwrap(),
        "--kind",
        "bernoulli",
        "--n",
        "4",
    ]);
    assert!(numbers.status.success());
    assert!(stdout_of(&numbers).contains("1,-1/2"));
    let verify = qunify(&[
        "verify",
        "--family",
        fam_path.to_str().unwrap(),
        "--suite",
        "odd-vanishing",
        "--n",
        "8",
    ]);
    assert!(verify.status.success());
    let text = stdout_of(&verify);
    assert!(text.contains("hypothesis holds"), "expected solver family to qualify:\n{text}");
}

#[test]
fn radius_matches_the_closed_forms() {
    let ones = qunify(&["radius", "--family", "ones", "--q", "1/4", "--n", "200"]);
    assert!(ones.status.success());
    assert_eq!(stdout_of(&ones), "4/3\n");
    let gauss = qunify(&["radius", "--family", "gauss", "--q", "1/4", "--n", "200"]);
    assert_eq!(stdout_of(&gauss), "infinity\n");
    let improved = qunify(&["radius", "--family", "improved", "--q", "1/4", "--n", "200"]);
    assert_eq!(stdout_of(&improved), "8/3\n");
}

#[test]
fn radius_rejects_probes_without_rational_square_roots() {
    let out = qunify(&["radius", "--family", "ones", "--q", "1/3", "--n", "50"]);
    assert_eq!(out.status.code(), Some(2));
    let oob = qunify(&["radius", "--family", "ones", "--q", "9/4", "--n", "50"]);
    assert_eq!(oob.status.code(), Some(2), "probe at q>1 must be refused");
}

#[test]
fn unknown_family_is_an_input_error() {
    let out = qunify(&["numbers", "--family", "nope", "--kind", "euler"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn identical_invocations_are_byte_identical() {
    let args = [
        "verify", "--family", "improved", "--suite", "all", "--n", "6", "--format", "json",
    ];
    let first = qunify(&args);
    let second = qunify(&args);
    assert!(first.status.success());
    assert_eq!(first.stdout, second.stdout);
}
