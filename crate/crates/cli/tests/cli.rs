use std::process::Command;

use clap::Parser;
use milnor_cli::commands::{run, Cli, SEED_ENV};
use milnor_cli::{parse_curve, ParseError};
use milnor_core::exact::ratio;
use milnor_core::fuzz::{corpus, random_curve, FuzzConfig, Profile};
use milnor_core::ploski::{gen_doublestar, gen_even_ploski, gen_odd_ploski, gen_star};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

fn milnor(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_milnor"))
        .args(args)
        .env_remove(SEED_ENV)
        .output()
        .expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn document(args: &[&str]) -> Value {
    let mut full = vec!["milnor"];
    full.extend_from_slice(args);
    let out = run(&Cli::parse_from(full)).unwrap();
    let mut doc = out.document;
    doc.as_object_mut().unwrap().remove("timings");
    doc
}

#[test]
fn generated_text_round_trips() {
    let params = [ratio(-3, 2), ratio(0, 1), ratio(7, 5)];
    let mut curves = vec![gen_even_ploski(3, Some(&params)).unwrap()];
    for n in 2..=5 {
        curves.extend([
            gen_even_ploski(n, None).unwrap(),
            gen_odd_ploski(n).unwrap(),
            gen_star(n).unwrap(),
            gen_doublestar(n).unwrap(),
        ]);
    }
    for c in curves {
        let back = parse_curve(&c.to_string()).unwrap();
        assert_eq!(back.factors(), c.factors(), "{c}");
    }
    let (code, text, _) = milnor(&["generate", "even-ploski", "2", "--params", "1/2,-3"]);
    assert_eq!(code, 0);
    let c = parse_curve(&text).unwrap();
    assert_eq!(c, gen_even_ploski(2, Some(&[ratio(1, 2), ratio(-3, 1)])).unwrap());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn random_curves_round_trip(seed in any::<u64>(), d in 5u32..=9, k in 0usize..4) {
        let profile = Profile::ALL[k];
        prop_assume!(profile != Profile::Conics || d % 2 == 0);
        let c = random_curve(&mut ChaCha8Rng::seed_from_u64(seed), profile, d).unwrap();
        let back = parse_curve(&c.to_string()).unwrap();
        prop_assert_eq!(back.factors(), c.factors());
    }
}

#[test]
fn documented_examples() {
    let (code, out, _) = milnor(&[
        "polar",
        "(x^2-y*z+z^2)*(x^2-y*z+2*z^2)*(x^2-y*z+3*z^2)",
        "--route",
        "both",
    ]);
    assert_eq!((code, out.trim()), (0, "3, 3"));

    let doc = document(&["git", "z*(x^2-y*z+z^2)*(x^2-y*z+2*z^2)"]);
    assert_eq!(doc["results"]["class"], "unstable");
    assert_eq!(doc["results"]["undetermined"], false);
    assert_eq!(doc["certificates"][0]["kind"], "separating");
    assert_eq!(doc["certificates"][0]["validated"], true);

    let doc = document(&["verify", "(x^2-y*z)*(x^2-2*y*z)"]);
    assert_eq!(doc["results"]["polar_degree"], "3");
    assert_eq!(doc["results"]["equality_attained"], false);
    assert_eq!(doc["results"]["verdict"]["class"], "strictlySemistableInFrame");
    assert_eq!(doc["results"]["checks"][0]["holds"], true);

    let doc = document(&["milnor-sum", "(x^2-y*z+z^2)*(x^2-y*z+2*z^2)*(x^2-y*z+3*z^2)"]);
    assert_eq!(doc["results"]["milnor_sum"], "22");
    assert_eq!(doc["results"]["points"][0]["mu"], "22");
    assert_eq!(
        doc["results"]["points"][0]["point"]["coords"],
        serde_json::json!(["0", "1", "0"])
    );

    let doc = document(&["milnor", "x^3 + y^3 + z^3"]);
    assert_eq!(doc["results"]["points"], serde_json::json!([]));
    assert_eq!(doc["degree"], "3");
}

#[test]
fn envelope_has_the_documented_fields() {
    let out = run(&Cli::parse_from(["milnor", "polar", "(x^2 - y*z)*(x^2 - 2*y*z)"])).unwrap();
    let keys: Vec<&str> = out.document.as_object().unwrap().keys().map(String::as_str).collect();
    assert_eq!(
        keys,
        ["command", "input", "degree", "results", "certificates", "timings"]
    );
    assert!(out.document["timings"]["total_us"].is_string());
    assert_eq!(out.document["command"], "polar");
}

#[test]
fn conjugate_points_carry_their_modulus() {
    // two nodes at [±i : 0 : 1] from the conics x^2 + z^2 - yz and x^2 + z^2 + yz
    let doc = document(&["milnor", "(x^2 + z^2 - y*z)*(x^2 + z^2 + y*z)"]);
    let points = doc["results"]["points"].as_array().unwrap();
    let total: u64 = points
        .iter()
        .map(|p| {
            p["point"]["conjugates"].as_str().unwrap().parse::<u64>().unwrap()
                * p["mu"].as_str().unwrap().parse::<u64>().unwrap()
        })
        .sum();
    assert_eq!(
        doc["results"]["milnor_sum"].as_str().unwrap().parse::<u64>().unwrap(),
        total
    );
    assert!(points.iter().any(|p| !p["point"]["modulus"].is_null()));
}

#[test]
fn point_queries() {
    let doc = document(&["milnor", "(y^2*z - x^3)", "--point", "0,0,1"]);
    assert_eq!(doc["results"]["mu"], "2");
    let doc = document(&["milnor", "(y^2*z - x^3)", "--point", "1,1,1"]);
    assert_eq!(doc["results"]["mu"], "0");
    let (code, _, err) = milnor(&["milnor", "(y^2*z - x^3)", "--point", "1,0,1"]);
    assert_eq!(code, 2, "{err}");
}

#[test]
fn both_routes_agree_on_a_corpus() {
    for profile in Profile::ALL {
        let cfg = FuzzConfig {
            count: 4,
            profile,
            seed: 99,
            ..FuzzConfig::default()
        };
        for c in corpus(&cfg).unwrap() {
            let text = c.to_string();
            let doc = document(&["polar", &text, "--route", "both"]);
            assert_eq!(doc["results"]["agree"], true, "{text}");
            assert_eq!(doc["results"]["milnor"], doc["results"]["components"]);
        }
    }
}

#[test]
fn fuzz_output_is_deterministic() {
    let args = [
        "fuzz",
        "--degree",
        "6",
        "--count",
        "6",
        "--seed",
        "7",
        "--profile",
        "lines-and-conics",
    ];
    let a = document(&args);
    let b = document(&args);
    assert_eq!(a, b);
    assert_eq!(a["results"]["cases"].as_array().unwrap().len(), 6);
    assert_eq!(a["results"]["failures"], serde_json::json!([]));
    let other = document(&[
        "fuzz",
        "--degree",
        "6",
        "--count",
        "6",
        "--seed",
        "8",
        "--profile",
        "lines-and-conics",
    ]);
    assert_ne!(a["results"]["cases"], other["results"]["cases"]);
}

#[test]
fn seed_comes_from_the_environment() {
    let run_with = |env: Option<&str>, extra: &[&str]| {
        let mut cmd = Command::new(env!("CARGO_BIN_EXE_milnor"));
        cmd.args([
            "--format",
            "json",
            "fuzz",
            "--degree",
            "5",
            "--count",
            "3",
            "--no-frame-checks",
        ])
        .args(extra);
        match env {
            Some(v) => cmd.env(SEED_ENV, v),
            None => cmd.env_remove(SEED_ENV),
        };
        let out = cmd.output().unwrap();
        assert_eq!(out.status.code(), Some(0));
        let mut doc: Value = serde_json::from_slice(&out.stdout).unwrap();
        doc.as_object_mut().unwrap().remove("timings");
        doc
    };
    let from_env = run_with(Some("1234"), &[]);
    let from_flag = run_with(None, &["--seed", "1234"]);
    assert_eq!(from_env, from_flag);
    assert_eq!(from_env["results"]["seed"], "1234");
    assert_eq!(run_with(None, &[])["results"]["seed"], (0x5EEDu64).to_string());
}

#[test]
fn exit_codes() {
    assert_eq!(milnor(&["milnor-sum", "x*y*z"]).0, 0);
    let (code, _, err) = milnor(&["milnor", "(x^2-y)"]);
    assert_eq!(code, 2);
    assert!(err.contains("not homogeneous") && err.contains("(x^2-y)"), "{err}");
    let (code, _, err) = milnor(&["polar", "(x +\n y ?)"]);
    assert_eq!(code, 2);
    assert!(err.contains("line 2, column 4"), "{err}");
    assert_eq!(milnor(&["polar", "(x)^2*(y)"]).0, 2);
    assert_eq!(milnor(&["no-such-command"]).0, 2);
    assert_eq!(milnor(&["generate", "star", "1"]).0, 2);
}

#[test]
fn parse_errors_are_typed() {
    assert!(matches!(
        parse_curve("(x^2-y)"),
        Err(ParseError::Inhomogeneous { line: 1, column: 1, .. })
    ));
    assert!(matches!(parse_curve("x y + "), Err(ParseError::Syntax { .. })));
    assert!(matches!(parse_curve("(x)(x)"), Ok(c) if c.num_factors() == 2));
}
