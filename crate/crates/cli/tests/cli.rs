use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn ellab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ellab")).args(args).output().expect("binary runs")
}

fn report(args: &[&str]) -> (Value, i32) {
    let out = ellab(args);
    let text = String::from_utf8(out.stdout).unwrap();
    let v: Value = serde_json::from_str(&text).unwrap_or_else(|e| panic!("{e}: {text}"));
    (v, out.status.code().unwrap())
}

const TOP_LEVEL: [&str; 8] =
    ["artifacts", "command", "duration_ms", "inputs", "values", "verdicts", "version", "witnesses"];

#[test]
fn identical_argv_gives_identical_bytes() {
    for args in [
        &["benchmark", "--n", "4", "--p", "2.5"][..],
        &["shoot", "--n", "3", "--f", "u^3", "--s0", "1", "--rmax", "50"],
        &["check", "--theorem", "GS-general", "--n", "3", "--f", "u^3"],
        &["bound", "--f", "u^2", "--n", "3", "--radii", "1,2"],
    ] {
        let a = ellab(args);
        let b = ellab(args);
        assert!(a.status.success(), "{args:?}");
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn parallel_sweeps_match_serial_output() {
    let serial = ellab(&["bound", "--f", "u^3", "--n", "3", "--radii", "1,2,4,8"]);
    let parallel = ellab(&["--jobs", "4", "bound", "--f", "u^3", "--n", "3", "--radii", "1,2,4,8"]);
    assert_eq!(serial.stdout, parallel.stdout);
}

#[test]
fn schema_keys_sorted_and_floats_full_precision() {
    let out = ellab(&["benchmark", "--n", "4", "--p", "2.5"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let top: Vec<&str> = text
        .lines()
        .filter(|l| l.starts_with("  \""))
        .map(|l| l.trim_start().trim_start_matches('"').split('"').next().unwrap())
        .collect();
    assert_eq!(top, TOP_LEVEL);
    assert!(text.contains("\"witnesses\": []"));
    assert!(text.contains("\"k0\": 0.20000000000000001"));
    assert!(text.contains("\"duration_ms\": 0"));
    assert!(text.ends_with("}\n") && !text.contains('\r'));
}

#[test]
fn benchmark_report_round_trips_and_reruns() {
    let (v, code) = report(&["benchmark", "--n", "4", "--p", "2.5"]);
    assert_eq!(code, 0);
    let again: Value = serde_json::from_str(&serde_json::to_string(&v).unwrap()).unwrap();
    assert_eq!(v, again);
    // Rebuild argv from the recorded inputs.
    let n = v["inputs"]["n"].as_u64().unwrap().to_string();
    let p = format!("{:e}", v["inputs"]["p"].as_f64().unwrap());
    let (w, _) = report(&["benchmark", "--n", &n, "--p", &p]);
    assert_eq!(v["values"], w["values"]);
    assert_eq!(v["verdicts"], w["verdicts"]);
}

#[test]
fn float_options_accept_constant_expressions() {
    let plain = ellab(&["benchmark", "--n", "4", "--p", "2.5"]);
    let expr = ellab(&["benchmark", "--n", "4", "--p", "(pS(4) + kappa(4))/2"]);
    assert_eq!(plain.stdout, expr.stdout);
    let (v, _) = report(&["shoot", "--n", "3", "--preset", "power", "--param", "p=pS(3) - 2", "--s0", "1"]);
    assert_eq!(v["inputs"]["nonlinearity"]["params"]["p"], 3.0);
}

#[test]
fn exit_codes() {
    assert_eq!(report(&["check", "--theorem", "B", "--n", "3", "--f", "u^2"]).1, 0);
    let (v, code) = report(&["check", "--theorem", "B", "--n", "3", "--f", "u^7"]);
    assert_eq!(code, 1);
    assert_eq!(v["verdicts"]["holds"], "no");
    assert!(!v["witnesses"].as_array().unwrap().is_empty());
    let (v, code) = report(&[
        "solve-ball",
        "--f",
        "u^3",
        "--n",
        "3",
        "--radius",
        "1",
        "--guess",
        "bump",
        "--amplitude",
        "5",
        "--max-iter",
        "1",
    ]);
    assert_eq!(code, 1);
    assert_eq!(v["verdicts"]["converged"], "no");
    for bad in [
        &["bogus"][..],
        &["benchmark", "--n", "4"],
        &["benchmark", "--n", "4", "--p", "2.5 +"],
        &["benchmark", "--n", "4", "--p", "7"],
        &["shoot", "--n", "3", "--f", "u^3", "--preset", "power", "--s0", "1"],
        &["shoot", "--n", "3", "--f", "u^q", "--s0", "1"],
        &["check", "--theorem", "thm1", "--n", "3", "--preset", "cubic-quintic"],
    ] {
        let out = ellab(bad);
        assert_eq!(out.status.code(), Some(2), "{bad:?}");
        assert!(out.stdout.is_empty());
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn shoot_writes_profile_csv() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let (v, code) = report(&["shoot", "--n", "3", "--f", "u^3", "--s0", "1", "--rmax", "50", "--csv", d]);
    assert_eq!(code, 0);
    assert_eq!(v["verdicts"]["outcome"], "FirstZero");
    let path = v["artifacts"][0].as_str().unwrap();
    assert_eq!(Path::new(path), dir.path().join("profile.csv"));
    let text = std::fs::read_to_string(path).unwrap();
    assert!(!text.contains('\r'));
    let mut lines = text.lines();
    assert!(lines.next().unwrap().starts_with("r,u"));
    let r: Vec<f64> = lines.map(|l| l.split(',').next().unwrap().parse().unwrap()).collect();
    assert!(r.len() > 10);
    assert!(r.windows(2).all(|w| w[1] > w[0]));
    assert_eq!(*r.last().unwrap(), v["values"]["outcome"]["radius"].as_f64().unwrap());
}

#[test]
fn out_flag_writes_file_only() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.json");
    let out = ellab(&["exponents", "--n", "5", "--out", path.to_str().unwrap()]);
    assert!(out.status.success() && out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["values"]["p_star"], 2.0);
    let (v, _) = report(&["exponents", "--n", "2"]);
    assert_eq!(v["values"]["p_sobolev"], "Infinity");
}

#[test]
fn timing_flag_fills_duration() {
    let (v, _) = report(&["--timing", "rescale", "critical"]);
    assert!(v["duration_ms"].is_u64());
}

#[test]
fn every_subcommand_has_help_naming_its_construct() {
    let cases = [
        ("exponents", "exponent"),
        ("analyze", "Regular-variation"),
        ("check", "Hypothesis checkers"),
        ("benchmark", "Thresholds"),
        ("theta", "θ"),
        ("shoot", "shooting"),
        ("verify", "explicit radial solutions"),
        ("pohozaev", "Rellich-Pohozaev"),
        ("solve-ball", "Dirichlet"),
        ("bound", "Universal-estimate"),
        ("decay", "η(R)"),
        ("counterexample", "semitrivial"),
        ("rescale", "doubling"),
    ];
    for (cmd, word) in cases {
        let out = ellab(&[cmd, "--help"]);
        assert!(out.status.success(), "{cmd}");
        let text = String::from_utf8(out.stdout).unwrap();
        assert!(text.contains(word), "{cmd} --help lacks `{word}`:\n{text}");
    }
    for sub in ["convergence", "doubling", "critical"] {
        assert!(ellab(&["rescale", sub, "--help"]).status.success());
    }
}

#[test]
fn presets_are_listed_and_usable() {
    let (v, _) = report(&["analyze", "--list-presets"]);
    let names: Vec<&str> =
        v["values"]["presets"].as_array().unwrap().iter().map(|p| p["name"].as_str().unwrap()).collect();
    assert!(names.contains(&"lane-emden") && names.contains(&"benchmark"));
    let (v, code) = report(&["analyze", "--preset", "lane-emden-log"]);
    assert_eq!(code, 0);
    assert_eq!(v["values"]["kind"], "lane-emden");
    assert!(v["values"]["h_calculus"]["exponents"]["log"].is_array());
}

#[test]
fn system_inputs_from_components() {
    let (v, code) = report(&["analyze", "--f1", "v^2", "--f2", "u^3", "--f-plus", "1,10"]);
    assert_eq!(code, 0);
    assert_eq!(v["inputs"]["nonlinearity"]["pair"], "lane-emden");
    assert_eq!(v["values"]["at_infinity"]["index"], 3.0);
    let (v, _) = report(&["analyze", "--f1", "u*v", "--f2", "u^2"]);
    assert_eq!(v["inputs"]["nonlinearity"]["pair"], "generic");
}
