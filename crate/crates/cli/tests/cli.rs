//! End-to-end checks of the `dpc` binary: frozen numbers, output formats,
//! the units contract, determinism, the JSON schema, and the exit-code map
//! (0 success, 1 usage, 2 verification failure, 3 numeric/domain).

use std::f64::consts::LN_2;
use std::process::Command;

fn run(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_dpc"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        out.status.code().expect("no signal"),
        String::from_utf8(out.stdout).expect("utf-8 stdout"),
        String::from_utf8(out.stderr).expect("utf-8 stderr"),
    )
}

fn run_json(args: &[&str]) -> serde_json::Value {
    let mut full = args.to_vec();
    full.push("--json");
    let (code, stdout, stderr) = run(&full);
    assert_eq!(code, 0, "stderr: {stderr}");
    serde_json::from_str(&stdout).expect("valid JSON")
}

fn results(v: &serde_json::Value) -> &serde_json::Map<String, serde_json::Value> {
    v["results"].as_object().expect("results map")
}

#[test]
fn capacity_prints_the_reference_channel_values() {
    let v = run_json(&[
        "capacity", "--P", "1", "--Q", "1", "--N0", "1", "--N1", "1", "--N2", "1",
    ]);
    let r = results(&v);
    assert!((r["capacity"].as_f64().unwrap() - 0.27980789396771133).abs() < 1e-15);
    assert!((r["mu"].as_f64().unwrap() - 1.0 / 3.0).abs() < 1e-15);
    assert!((r["alpha_star"].as_f64().unwrap() - 1.0 / 7.0).abs() < 1e-15);
    assert!(r.contains_key("capacity_tx_only") && r.contains_key("capacity_rx_only"));
}

#[test]
fn perfect_tx_observation_gives_the_clean_rate_and_zero_mu() {
    let v = run_json(&[
        "capacity", "--P", "1", "--Q", "7", "--N0", "1", "--N1", "0", "--N2", "inf",
    ]);
    let r = results(&v);
    assert_eq!(r["mu"].as_f64().unwrap(), 0.0);
    assert_eq!(r["capacity"].as_f64().unwrap(), 0.5 * 2f64.ln());
    assert_eq!(r["alpha_star"].as_f64().unwrap(), 0.5);
    // the absent receiver observation is omitted, not serialized as null
    assert!(!v["parameters"].as_object().unwrap().contains_key("N2"));
}

#[test]
fn missing_transmitter_observation_omits_the_coefficient() {
    let v = run_json(&[
        "capacity", "--P", "1", "--Q", "1", "--N0", "1", "--N1", "inf", "--N2", "1",
    ]);
    assert!(!results(&v).contains_key("alpha_star"));
    assert!(results(&v).contains_key("capacity"));
}

#[test]
fn alpha_reports_the_optimum_and_its_rate() {
    let v = run_json(&[
        "alpha", "--P", "1", "--Q", "1", "--N0", "1", "--N1", "1", "--N2", "1", "--alpha", "0.5",
    ]);
    let r = results(&v);
    assert!((r["alpha_star"].as_f64().unwrap() - 1.0 / 7.0).abs() < 1e-15);
    assert_eq!(
        r["rate_at_alpha_star"].as_f64().unwrap(),
        r["capacity"].as_f64().unwrap()
    );
    assert!(r["rate_at_alpha"].as_f64().unwrap() < r["capacity"].as_f64().unwrap());
}

#[test]
fn exponent_matches_the_pinned_point_and_bounds_the_block() {
    let v = run_json(&["exponent", "--A1", "10", "--R", "0.3", "--symbols", "100"]);
    let r = results(&v);
    assert!((r["exponent"].as_f64().unwrap() - 0.7079806643153057).abs() < 1e-12);
    assert!((r["critical_rate"].as_f64().unwrap() - 0.8568547958740372).abs() < 1e-12);
    assert!(
        (r["ln_error_bound"].as_f64().unwrap() + 100.0 * 0.7079806643153057).abs() < 1e-10
    );
}

#[test]
fn cognitive_classifies_the_ub_example() {
    let v = run_json(&["cognitive", "--hAD", "0.72", "--hAC", "0.1", "--R", "0.5"]);
    assert_eq!(v["labels"]["case"], "UB_ACHIEVING");
    let r = results(&v);
    assert_eq!(
        r["rate"].as_f64().unwrap(),
        r["upper_bound"].as_f64().unwrap()
    );
    assert!((r["rate"].as_f64().unwrap() - 0.5 * 3f64.ln()).abs() < 1e-12);
    assert!(!r.contains_key("m_opt"));
}

#[test]
fn cognitive_keeps_the_rate_inside_the_bounds() {
    for (h_ac, h_ad) in [("0", "0"), ("0.65", "0.45"), ("0.1", "0.45"), ("0.65", "0.1")] {
        let v = run_json(&["cognitive", "--hAC", h_ac, "--hAD", h_ad, "--R", "0.5"]);
        let r = results(&v);
        let (rate, lb, ub) = (
            r["rate"].as_f64().unwrap(),
            r["lower_bound"].as_f64().unwrap(),
            r["upper_bound"].as_f64().unwrap(),
        );
        assert!(lb <= rate && rate <= ub + 1e-9, "({h_ac},{h_ad}): {lb} {rate} {ub}");
    }
}

#[test]
fn units_flag_scales_exactly_the_rate_fields() {
    let args = ["cognitive", "--hAC", "0.65", "--hAD", "0.45", "--R", "0.5"];
    let nats = run_json(&args);
    let mut bits_args = args.to_vec();
    bits_args.extend(["--units", "bits"]);
    let bits = run_json(&bits_args);
    for key in ["rate", "lower_bound", "upper_bound"] {
        let n = results(&nats)[key].as_f64().unwrap();
        let b = results(&bits)[key].as_f64().unwrap();
        assert!((b * LN_2 - n).abs() < 1e-15, "{key}: {b} bits vs {n} nats");
    }
    for key in ["m_opt", "mu_effective"] {
        assert_eq!(results(&nats)[key], results(&bits)[key], "{key} is not a rate");
    }
    // the natural-log error bound is also unit-independent
    let e_nats = run_json(&["exponent", "--A1", "10", "--R", "0.3", "--symbols", "7"]);
    let e_bits = run_json(&[
        "exponent", "--A1", "10", "--R", "0.3", "--symbols", "7", "--units", "bits",
    ]);
    assert_eq!(
        results(&e_nats)["ln_error_bound"],
        results(&e_bits)["ln_error_bound"]
    );
    assert!(
        (results(&e_bits)["exponent"].as_f64().unwrap() * LN_2
            - results(&e_nats)["exponent"].as_f64().unwrap())
        .abs()
            < 1e-15
    );
}

#[test]
fn identical_flags_give_byte_identical_output() {
    for args in [
        vec!["verify", "--samples", "20000", "--json"],
        vec!["verify", "--samples", "20000", "--trials", "50"],
        vec![
            "sweep", "--hAC", "0.65", "--hAD", "0.45", "--R", "0.5", "--var", "m", "--from", "1",
            "--to", "99", "--steps", "99",
        ],
        vec!["capacity", "--P", "3", "--Q", "2", "--N0", "0.5", "--N1", "1", "--N2", "4", "--csv"],
    ] {
        let a = run(&args);
        let b = run(&args);
        assert_eq!(a, b, "args {args:?} must be deterministic");
        assert_eq!(a.0, 0);
    }
}

#[test]
fn sweep_csv_has_the_documented_header_and_shape() {
    let (code, out, _) = run(&[
        "sweep", "--hAC", "0.65", "--hAD", "0.45", "--R", "0.5", "--var", "m", "--from", "20",
        "--to", "30", "--steps", "6",
    ]);
    assert_eq!(code, 0);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "value,case,rate_nats,m_opt,mu");
    assert_eq!(lines.len(), 7);
    for line in &lines[1..] {
        assert_eq!(line.matches(',').count(), 4);
        assert!(line.contains("BOTH_DPC"));
    }
    // bits units rename the rate column
    let (_, out_bits, _) = run(&[
        "sweep", "--hAC", "0.65", "--hAD", "0.45", "--R", "0.5", "--var", "m", "--from", "20",
        "--to", "30", "--steps", "6", "--units", "bits",
    ]);
    assert!(out_bits.starts_with("value,case,rate_bits,m_opt,mu\n"));
}

#[test]
fn sweep_marks_invalid_grid_values_as_error_rows() {
    let (code, out, _) = run(&[
        "sweep", "--hAC", "0.65", "--hAD", "0.45", "--R", "0.5", "--var", "n", "--from", "50",
        "--to", "52.5", "--steps", "2",
    ]);
    assert_eq!(code, 0, "error rows must not fail the sweep");
    let lines: Vec<&str> = out.lines().collect();
    assert!(lines[1].starts_with("50,BOTH_DPC,"));
    assert_eq!(lines[2], "5.25000000000e1,ERROR,,,");
}

#[test]
fn exit_codes_follow_the_contract() {
    // 1: usage — missing required flag, bad sweep variable, zero trials/steps
    assert_eq!(run(&["capacity", "--P", "1"]).0, 1);
    assert_eq!(
        run(&[
            "sweep", "--hAC", "0.1", "--hAD", "0.1", "--R", "0.5", "--var", "q", "--from", "0",
            "--to", "1", "--steps", "5",
        ])
        .0,
        1
    );
    assert_eq!(run(&["verify", "--trials", "0"]).0, 1);
    assert_eq!(run(&["verify", "--samples", "50"]).0, 1);
    assert_eq!(
        run(&[
            "sweep", "--hAC", "0.1", "--hAD", "0.1", "--R", "0.5", "--var", "m", "--from", "1",
            "--to", "9", "--steps", "0",
        ])
        .0,
        1
    );
    // 2: verification failure (forced by an impossible tolerance)
    let (code, out, err) = run(&["verify", "--samples", "10000", "--mc-tol", "1e-12"]);
    assert_eq!(code, 2);
    assert!(out.contains("FAIL"), "record still printed: {out}");
    assert!(err.contains("mc"), "offending suite named: {err}");
    // 3: numeric/domain — invalid channel, m sweep without a listening regime
    assert_eq!(
        run(&["capacity", "--P", "1", "--Q", "1", "--N0", "0", "--N1", "1", "--N2", "1"]).0,
        3
    );
    assert_eq!(
        run(&["cognitive", "--hAC", "0.1", "--hAD", "0.1", "--R", "0"]).0,
        3
    );
    assert_eq!(
        run(&[
            "sweep", "--hAC", "0.1", "--hAD", "0.45", "--R", "0.5", "--var", "m", "--from", "1",
            "--to", "9", "--steps", "9",
        ])
        .0,
        3
    );
    // 0: help
    assert_eq!(run(&["--help"]).0, 0);
}

#[test]
fn verify_passes_by_default_and_reports_each_suite() {
    let v = run_json(&["verify", "--samples", "20000", "--trials", "50"]);
    assert_eq!(v["labels"]["status"], "PASS");
    for suite in ["determinant", "alpha_grid", "alpha_rate", "exponent", "mc"] {
        assert_eq!(v["labels"][suite], "PASS", "{suite}");
        assert!(results(&v).contains_key(&format!("{suite}_worst")));
        assert!(results(&v).contains_key(&format!("{suite}_tol")));
    }
}

#[test]
fn every_json_output_validates_against_the_published_schema() {
    let schema_text = std::fs::read_to_string(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/../../schemas/output_record.schema.json"
    ))
    .expect("schema file in repo");
    let schema: serde_json::Value = serde_json::from_str(&schema_text).unwrap();
    let validator = jsonschema::validator_for(&schema).expect("schema compiles");

    let outputs = [
        run_json(&["capacity", "--P", "1", "--Q", "1", "--N0", "1", "--N1", "1", "--N2", "1"]),
        run_json(&["capacity", "--P", "1", "--Q", "1", "--N0", "1", "--N1", "inf", "--N2", "1"]),
        run_json(&[
            "alpha", "--P", "1", "--Q", "1", "--N0", "1", "--N1", "1", "--N2", "1", "--alpha",
            "0.2",
        ]),
        run_json(&["exponent", "--A1", "2", "--R", "0.2", "--symbols", "50"]),
        run_json(&["cognitive", "--hAC", "0.65", "--hAD", "0.45", "--R", "0.5"]),
        run_json(&["cognitive", "--hAC", "0.65", "--hAD", "0.45", "--R", "0.5", "--units", "bits"]),
        run_json(&["verify", "--samples", "10000", "--trials", "20"]),
        run_json(&[
            "sweep", "--hAC", "0.65", "--hAD", "0.45", "--R", "0.5", "--var", "m", "--from", "1",
            "--to", "50", "--steps", "50",
        ]),
        run_json(&[
            "sweep", "--hAC", "0.65", "--hAD", "0.45", "--R", "0.5", "--var", "n", "--from", "50",
            "--to", "52.5", "--steps", "2",
        ]),
    ];
    for (i, v) in outputs.iter().enumerate() {
        assert!(
            validator.is_valid(v),
            "output {i} violates the schema: {}",
            validator
                .iter_errors(v)
                .map(|e| e.to_string())
                .collect::<Vec<_>>()
                .join("; ")
        );
    }
}

#[test]
fn json_round_trips_at_full_float_precision() {
    let v = run_json(&["capacity", "--P", "1", "--Q", "1", "--N0", "1", "--N1", "1", "--N2", "1"]);
    // re-serialize and re-parse: the f64 must be preserved bit for bit
    let round = serde_json::to_string(&v).unwrap();
    let v2: serde_json::Value = serde_json::from_str(&round).unwrap();
    assert_eq!(
        v["results"]["capacity"].as_f64().unwrap().to_bits(),
        v2["results"]["capacity"].as_f64().unwrap().to_bits()
    );
    assert_eq!(
        v["results"]["capacity"].as_f64().unwrap(),
        0.27980789396771133
    );
}
