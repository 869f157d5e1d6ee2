use std::process::Command as Process;

use knotdeform::{DeformationData, PseudoRepTable};
use knotdeform_cli::{parse_args, run, Action, EXIT_DOMAIN, EXIT_OK, EXIT_USAGE, EXIT_VERIFY};

fn exec(args: &[&str]) -> (i32, String, String) {
    let cmd = parse_args(args.iter().copied()).unwrap_or_else(|e| panic!("{args:?}: {e}"));
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run(&cmd, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn binary(args: &[&str]) -> std::process::Output {
    Process::new(env!("CARGO_BIN_EXE_knotdeform")).args(args).env("KNOTDEFORM_NO_COLOR", "1").output().unwrap()
}

#[test]
fn parse_examples() {
    let cmd = parse_args(["riley", "3", "1"]).unwrap();
    assert!(matches!(cmd.action, Action::Riley { json: false, .. }));
    let cmd = parse_args(["deform", "5", "3", "--coeff", "padic:7:4", "--beta", "3", "--prec", "8"]).unwrap();
    let Action::Deform(req) = cmd.action else { panic!("expected deform") };
    assert_eq!(req.precision, 8);
    assert_eq!(req.beta.to_string(), "3");
    let err = parse_args(["roots", "4", "1", "--prime", "7"]).unwrap_err();
    assert!(err.0.contains("odd"), "{err}");
}

#[test]
fn unknown_flags_and_bad_values_are_usage_errors() {
    assert!(parse_args(["riley", "3", "1", "--frobnicate"]).unwrap_err().0.contains("--frobnicate"));
    assert!(parse_args(["deform", "3", "1", "--coeff", "padic:4:2", "--beta", "1", "--prec", "4"]).is_err());
    assert!(parse_args(["deform", "3", "1", "--coeff", "rational", "--beta", "x", "--prec", "4"]).is_err());
    assert!(parse_args(["deform", "3", "1", "--coeff", "rational", "--beta", "-1", "--prec", "1"]).is_err());
    assert!(parse_args(["verify-all", "--primes", "3,4"]).is_err());
}

#[test]
fn negative_numbers_in_both_spellings() {
    let a = parse_args(["deform", "3", "1", "--coeff", "rational", "--beta", "-1", "--prec", "4"]).unwrap();
    let b = parse_args(["deform", "3", "1", "--coeff", "rational", "--beta", "m1", "--prec", "4"]).unwrap();
    assert_eq!(a, b);
    assert_eq!(exec(&["epsilon", "5", "m3"]).1, exec(&["epsilon", "5", "-3"]).1);
    assert_eq!(exec(&["epsilon", "5", "-3"]).1, "-1 1 1 -1\n");
}

#[test]
fn riley_text_and_json() {
    let (code, out, _) = exec(&["riley", "3", "1"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out, "Phi(x,u) = x^2 + u - 3; Phi(2,u) = u + 1; disc = 1\n");
    let (_, out, _) = exec(&["riley", "5", "3", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["Phi2"], "u^2 - u + 1");
    assert_eq!(v["disc"], "-3");
}

#[test]
fn roots_and_domain_errors() {
    assert_eq!(exec(&["roots", "5", "3", "--prime", "5"]), (EXIT_OK, "[]\n".into(), String::new()));
    assert_eq!(exec(&["roots", "5", "3", "--prime", "7"]).1, "[\"3\",\"5\"]\n");
    let (code, _, err) = exec(&["roots", "5", "3", "--prime", "3"]);
    assert_eq!(code, EXIT_DOMAIN);
    assert!(err.contains("divides"));
}

#[test]
fn word_charvar_trace_reduce() {
    assert_eq!(exec(&["word", "5", "3"]).1, "a b^-1 a^-1 b\n");
    assert_eq!(exec(&["charvar", "3", "1"]).1, "(-x^2 + y + 2)*(y - 1) = 0\n");
    let (_, out, _) = exec(&["charvar", "5", "3", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["irreducible_factor"], "-x^2*y + 2*x^2 + y^2 - y - 1");
    assert_eq!(exec(&["trace-reduce", "aBAb"]).1, "-x*z*y + x^2 + z^2 + y^2 - 2\n");
}

#[test]
fn deform_json_round_trips_and_verifies() {
    let (code, out, _) = exec(&["deform", "3", "1", "--coeff", "rational", "--beta", "-1", "--prec", "8", "--verify"]);
    assert_eq!(code, EXIT_OK);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    for check in v["verification"]["checks"].as_array().unwrap() {
        assert_eq!(check["status"], "pass");
    }
    let data = DeformationData::from_json(&out).unwrap();
    assert!(data.verification.passed());
    assert_eq!(data.u.coefficient_strings()[..3], ["-1", "-4", "-1"]);
}

#[test]
fn deform_ramified_and_specialized() {
    let (code, out, _) = exec(&[
        "deform", "3", "1", "--coeff", "hbar:5:3", "--beta", "m1", "--prec", "4", "--ramified", "6", "--specialize", "1",
        "--verify",
    ]);
    assert_eq!(code, EXIT_OK, "{out}");
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["specialization"]["x0"], "2 + h^2");
    assert!(v["ramified"]["checks"].as_array().unwrap().iter().all(|c| c["status"] == "pass"));
    let (code, _, err) = exec(&["deform", "3", "1", "--coeff", "rational", "--beta", "-1", "--prec", "4", "--specialize", "1"]);
    assert_eq!(code, EXIT_DOMAIN);
    assert!(err.contains("maximal ideal") || err.contains("local"), "{err}");
}

#[test]
fn pseudo_check_reads_tables() {
    let dir = std::env::temp_dir().join(format!("knotdeform-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let good = dir.join("good.json");
    std::fs::write(&good, r#"{"ring":"prime:7","entries":[["1","2"],["a","2"],["a^2","2"],["a^-1","2"],["a^-2","2"]]}"#)
        .unwrap();
    let (code, out, _) = exec(&["pseudo-check", good.to_str().unwrap()]);
    assert_eq!(code, EXIT_OK, "{out}");
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["verdicts_agree"], true);

    let bad = dir.join("bad.json");
    std::fs::write(&bad, r#"{"ring":"prime:7","entries":[["1","2"],["a","2"],["a^2","5"],["a^-1","2"],["a^-2","2"]]}"#)
        .unwrap();
    let (code, out, _) = exec(&["pseudo-check", bad.to_str().unwrap()]);
    assert_eq!(code, EXIT_VERIFY);
    assert!(out.contains("\"witnesses\""));
    PseudoRepTable::from_json(&std::fs::read_to_string(&bad).unwrap()).unwrap();

    let (code, _, err) = exec(&["pseudo-check", dir.join("missing.json").to_str().unwrap()]);
    assert_eq!(code, EXIT_DOMAIN);
    assert!(err.contains("cannot read"));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn verify_all_small() {
    let (code, out, _) = exec(&["verify-all", "--max-m", "7", "--primes", "3,5", "--seed", "7"]);
    assert_eq!(code, EXIT_OK, "{out}");
    assert!(out.lines().last().unwrap().ends_with("0 failures"));
    assert!(!out.contains('\x1b'));
}

#[test]
fn output_is_deterministic() {
    let args = ["deform", "5", "3", "--coeff", "padic:7:4", "--beta", "3", "--prec", "6"];
    assert_eq!(exec(&args), exec(&args));
    let args = ["verify-all", "--max-m", "7", "--seed", "3"];
    assert_eq!(exec(&args), exec(&args));
}

#[test]
fn binary_exit_codes() {
    let out = binary(&["roots", "4", "1", "--prime", "7"]);
    assert_eq!(out.status.code(), Some(EXIT_USAGE));
    assert!(String::from_utf8_lossy(&out.stderr).contains("b(4,1)"));
    assert_eq!(binary(&["nonsense"]).status.code(), Some(EXIT_USAGE));
    assert_eq!(binary(&["--help"]).status.code(), Some(EXIT_OK));
    let out = binary(&["riley", "3", "1"]);
    assert_eq!(out.status.code(), Some(EXIT_OK));
    assert_eq!(String::from_utf8_lossy(&out.stdout), "Phi(x,u) = x^2 + u - 3; Phi(2,u) = u + 1; disc = 1\n");
    assert_eq!(binary(&["roots", "5", "3", "--prime", "3"]).status.code(), Some(EXIT_DOMAIN));
}
