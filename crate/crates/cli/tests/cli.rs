use std::process::Command;

use projquant::sphere::sphere_table;
use projquant_cli::random::{polynomial_symbol, radical_symbol, rng};
use projquant_cli::run::{EXIT_NONTERMINATING, EXIT_RESONANCE, EXIT_USAGE, EXIT_VERIFICATION};
use projquant_cli::{emit_json, parse_symbol, parse_symbol_json, run, symbol_to_json};

const GOLDEN: &[(&str, &[&str])] = &[
    ("quantize", &["quantize", "--n", "1", "--lambda", "1/2", "--mu", "1/2", "--expr", "x1*p1"]),
    ("coeffs", &["coeffs", "--n", "1", "--lambda", "1/2", "--mu", "1/2", "--k", "1"]),
    ("geodesic", &["example", "geodesic", "--n", "2", "--lambda", "1/2", "--mu", "1/2"]),
];

fn golden(name: &str, ext: &str) -> String {
    let path = format!("{}/tests/golden/{name}.{ext}", env!("CARGO_MANIFEST_DIR"));
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{path}: {e}"))
}

fn binary(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_projquant")).args(args).output().unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap())
}

#[test]
fn golden_files() {
    for (name, args) in GOLDEN {
        let (code, text) = binary(args);
        assert_eq!(code, 0, "{name}");
        assert_eq!(text, golden(name, "txt"), "{name}");
        let mut json_args = args.to_vec();
        json_args.extend(["--format", "json"]);
        let (code, json) = binary(&json_args);
        assert_eq!(code, 0, "{name}");
        assert_eq!(json, golden(name, "json"), "{name}");
    }
}

#[test]
fn library_entry_point_matches_the_binary() {
    for (name, args) in GOLDEN {
        let out = run(std::iter::once("projquant").chain(args.iter().copied()));
        assert_eq!(out.stdout, golden(name, "txt"));
    }
}

#[test]
fn reruns_are_byte_identical() {
    let args = ["check-equivariance", "--n", "1", "--degree", "2", "--trials", "5", "--seed", "17", "--format", "json"];
    let first = binary(&args);
    assert_eq!(first.0, 0);
    assert_eq!(first, binary(&args));
}

#[test]
fn printer_and_json_round_trip() {
    for n in 1..=3 {
        let t = sphere_table(n).unwrap();
        let mut r = rng(n as u64);
        for i in 0..40 {
            let s = if i % 2 == 0 { polynomial_symbol(&mut r, &t, 3) } else { radical_symbol(&mut r, &t) };
            assert_eq!(parse_symbol(&s.to_string(), &t).unwrap(), s, "{s}");
            let text = emit_json(&symbol_to_json(&s));
            assert_eq!(parse_symbol_json(&text, &t).unwrap(), s);
            // the printed form and the JSON form name the same symbol
            let reparsed = parse_symbol(&s.to_string(), &t).unwrap();
            assert_eq!(emit_json(&symbol_to_json(&reparsed)), text);
        }
    }
}

#[test]
fn exit_codes() {
    let cases: &[(&[&str], i32)] = &[
        (&["coeffs", "--n", "1", "--lambda", "0", "--mu", "1", "--k", "3"], EXIT_RESONANCE),
        (&["quantize", "--expr", "x1^(1/2)"], EXIT_USAGE),
        (&["quantize", "--expr", "x2"], EXIT_USAGE),
        (&["quantize", "--expr", "x1 +"], EXIT_USAGE),
        (&["quantize", "--n", "2", "--expr", "H^(-1/2)"], EXIT_NONTERMINATING),
        (&["example", "length-element", "--n", "2", "--alpha", "-1/2"], EXIT_VERIFICATION),
        (&["example", "geodesic", "--n", "1"], EXIT_USAGE),
        (&["no-such-command"], EXIT_USAGE),
    ];
    for (args, code) in cases {
        let out = run(std::iter::once("projquant").chain(args.iter().copied()));
        assert_eq!(out.code, *code, "{args:?}: {}{}", out.stdout, out.stderr);
    }
}

#[test]
fn json_errors_are_structured() {
    let out = run(["projquant", "quantize", "--expr", "x1*(p1", "--format", "json"]);
    assert_eq!(out.code, EXIT_USAGE);
    let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["status"], "ERROR");
    assert_eq!(v["error"]["kind"], "parse");
    assert!(v["error"]["column"].as_u64().unwrap() >= 1);

    let out = run(["projquant", "coeffs", "--n", "2", "--lambda", "0", "--mu", "4/3", "--k", "3", "--format", "json"]);
    assert_eq!(out.code, EXIT_RESONANCE);
    let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["error"]["kind"], "resonance");
    assert!(v["error"]["witness"]["m"].as_u64().is_some());
}
