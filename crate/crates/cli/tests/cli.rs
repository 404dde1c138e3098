use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_thermoprior"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn expand_prints_exact_terms() {
    let text = stdout(&["expand", "squeezed-thermal-quantum", "--scheme", "quantum", "--order", "6"]);
    for term in ["1/2 β^-1", "7/192 β^1", "667/184320 β^3"] {
        assert!(text.contains(term), "{text}");
    }
    assert!(text.contains("-3.64583333333e-2"));
}

#[test]
fn classify_displaced_thermal() {
    let text = stdout(&["classify", "displaced-thermal-quantum", "--scheme", "quantum"]);
    assert_eq!(text.trim(), "BayesLaplace, leading 1/π");
    let numeric = stdout(&["classify", "M2", "--method", "numeric"]);
    assert!(numeric.starts_with("BayesLaplace"));
}

#[test]
fn models_lists_the_registry() {
    let text = stdout(&["models"]);
    assert_eq!(text.lines().count(), 11);
    assert!(text.contains("spin-one-extended"));
}

#[test]
fn unknown_names_are_usage_errors() {
    for args in [
        &["expand", "no-such-model"][..],
        &["expand", "M1", "--scheme", "frequentist"],
        &["expand", "M4", "--scheme", "quantum"],
        &["prior-table", "M2", "--beta-min", "1", "--beta-max", "0.5", "--points", "3"],
        &["frobnicate"],
    ] {
        let out = run(args);
        assert_eq!(out.status.code(), Some(1), "{args:?}");
    }
    let err = String::from_utf8(run(&["expand", "nope"]).stderr).unwrap();
    assert!(err.contains("fermi-oscillator"), "{err}");
    let err = String::from_utf8(run(&["classify", "M1", "--scheme", "x"]).stderr).unwrap();
    assert!(err.contains("quantum") && err.contains("lavenda"), "{err}");
}

#[test]
fn help_exits_zero() {
    assert_eq!(run(&["--help"]).status.code(), Some(0));
    assert_eq!(run(&["--version"]).status.code(), Some(0));
}

#[test]
fn verify_exits_zero_with_discrepancies() {
    let text = stdout(&["verify"]);
    assert!(text.matches("paper-discrepancy").count() >= 2);
    assert!(!text.contains("ORACLE-MISMATCH"));
}

#[test]
fn json_envelope_round_trips() {
    for args in [
        &["--json", "models"][..],
        &["--json", "expand", "M5"],
        &["--json", "classify", "M6", "--method", "numeric"],
        &["--json", "moments", "M10"],
        &["--json", "prior-table", "M9", "--beta-min", "0.5", "--beta-max", "2", "--points", "4"],
        &["--json", "verify"],
    ] {
        let text = stdout(args);
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v["command"], args[1]);
        assert_eq!(v["version"], env!("CARGO_PKG_VERSION"));
        assert!(v["parameters"].is_object() && !v["result"].is_null());
        let again = serde_json::to_string_pretty(&v).unwrap() + "\n";
        assert_eq!(again, text, "{args:?}");
    }
}

#[test]
fn json_rationals_are_strings() {
    let v: serde_json::Value = serde_json::from_str(&stdout(&["expand", "M7", "--json"])).unwrap();
    let terms = v["result"]["terms"].as_array().unwrap();
    assert_eq!(terms[0]["coefficient"], "1");
    assert_eq!(terms[1]["coefficient"], "-1/96");
    assert_eq!(terms[1]["value"].to_string(), "-1.0416666666666666e-2");
}

#[test]
fn csv_table_matches_series_within_indicator() {
    let csv = stdout(&[
        "prior-table", "M3", "--scheme", "quantum", "--beta-min", "0.05", "--beta-max", "0.6",
        "--points", "12", "--csv",
    ]);
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("beta,omega,truncation_indicator"));
    let coeffs: Vec<(i32, f64)> = {
        let v: serde_json::Value =
            serde_json::from_str(&stdout(&["expand", "M3", "--scheme", "quantum", "--json"])).unwrap();
        v["result"]["terms"]
            .as_array()
            .unwrap()
            .iter()
            .map(|t| (t["exponent"].as_i64().unwrap() as i32, t["value"].as_f64().unwrap()))
            .collect()
    };
    let mut rows = 0;
    for line in lines {
        let f: Vec<f64> = line.split(',').map(|x| x.parse().unwrap()).collect();
        let series: f64 = coeffs.iter().map(|&(k, c)| c * f[0].powi(k)).sum();
        assert!((series - f[1]).abs() <= f[2].max(1e-15) * 2.0, "{line}: {series}");
        rows += 1;
    }
    assert_eq!(rows, 12);
}

#[test]
fn parameter_overrides_keep_the_verdict() {
    for nu in ["1/3", "2", "7/2"] {
        let text = stdout(&["classify", "harmonic-oscillator", "--nu", nu]);
        assert!(text.starts_with("Jeffreys"), "{nu}: {text}");
    }
    let text = stdout(&["classify", "fermi-oscillator", "--epsilon0", "5"]);
    assert!(text.starts_with("BayesLaplace"));
    assert_eq!(run(&["expand", "M9", "--nu", "-1"]).status.code(), Some(1));
    assert_eq!(run(&["expand", "M9", "--nu", "abc"]).status.code(), Some(1));
}

#[test]
fn outputs_are_deterministic() {
    for args in [&["verify", "--json"][..], &["expand", "M6", "--order", "10"]] {
        assert_eq!(run(args).stdout, run(args).stdout);
    }
}
