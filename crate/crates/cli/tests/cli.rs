//! End-to-end tests of the `ahl` binary: exit codes, output determinism,
//! JSON round-tripping and the CSV oracle cross-check.

use std::process::{Command, Output};

use ahl_core::affine::{DominantWeight, RootVector};
use ahl_core::hall::freudenthal_mult;
use num_rational::BigRational;
use num_traits::One;

fn ahl(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ahl"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn ahl_env(args: &[&str], key: &str, value: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ahl"))
        .args(args)
        .env(key, value)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 output")
}

#[test]
fn verify_passes_with_exit_zero_and_report_json() {
    let out = ahl(&[
        "verify", "--id", "THM2", "--order", "12", "--format", "json",
    ]);
    assert!(out.status.success());
    let value: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(value["id"], "THM2");
    assert_eq!(value["status"], "pass");
    assert_eq!(value["order"], 12);
    assert!(value["first_mismatch"].is_null());
    assert!(value["elapsed_ms"].is_number());
}

#[test]
fn unknown_identity_exits_with_usage_error() {
    let out = ahl(&["verify", "--id", "NO_SUCH_ID"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("THM2"), "error message should name valid ids");
}

#[test]
fn unknown_subcommand_exits_with_usage_error() {
    let out = ahl(&["frobnicate"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn non_dominant_weight_is_a_usage_error() {
    let out = ahl(&["hl", "--level", "2", "--p", "3"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn negative_sizes_are_usage_errors() {
    for args in [
        ["verify", "--id", "THM2", "--order=-3"].as_slice(),
        ["hl", "--level", "2", "--p", "1", "--box=-5"].as_slice(),
        ["kostka", "--level", "2", "--p", "1", "--depth=-1"].as_slice(),
    ] {
        let out = ahl(args);
        assert_eq!(out.status.code(), Some(2), "{:?}", args);
    }
}

#[test]
fn mutated_build_fails_with_exit_one() {
    let out = ahl_env(
        &["verify", "--id", "THM2", "--order", "8", "--format", "json"],
        "AHL_MUTATE",
        "THM2",
    );
    assert_eq!(out.status.code(), Some(1));
    let value: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(value["status"], "fail");
    assert!(value["first_mismatch"].is_number());
    // and verify-all propagates the failure
    let all = ahl_env(&["verify-all", "--order", "3"], "AHL_MUTATE", "THM2");
    assert_eq!(all.status.code(), Some(1));
}

#[test]
fn verify_all_passes_and_is_order_stable_across_thread_counts() {
    let one = ahl_env(
        &["verify-all", "--order", "3", "--format", "csv"],
        "AHL_THREADS",
        "1",
    );
    let four = ahl_env(
        &["verify-all", "--order", "3", "--format", "csv"],
        "AHL_THREADS",
        "4",
    );
    assert!(one.status.success());
    assert!(four.status.success());
    let strip_timing = |s: &str| -> Vec<String> {
        s.lines()
            .map(|l| {
                l.rsplit_once(',')
                    .map(|(a, _)| a.to_string())
                    .unwrap_or_default()
            })
            .collect()
    };
    assert_eq!(strip_timing(&stdout(&one)), strip_timing(&stdout(&four)));
}

#[test]
fn data_outputs_are_byte_identical_across_runs() {
    for args in [
        [
            "kostka", "--level", "2", "--p", "1", "--depth", "4", "--format", "json",
        ]
        .as_slice(),
        [
            "string", "--level", "2", "--p", "2", "--order", "6", "--format", "json",
        ]
        .as_slice(),
        [
            "hl", "--level", "1", "--p", "1", "--box", "5", "--format", "json",
        ]
        .as_slice(),
        ["ct", "--box", "6", "--format", "json"].as_slice(),
        [
            "specialize",
            "--level",
            "2",
            "--p",
            "1",
            "--order",
            "6",
            "--format",
            "csv",
        ]
        .as_slice(),
    ] {
        let a = ahl(args);
        let b = ahl(args);
        assert!(a.status.success(), "{:?}", args);
        assert_eq!(stdout(&a), stdout(&b), "{:?}", args);
    }
}

#[test]
fn json_outputs_round_trip_through_a_canonical_writer() {
    for args in [
        [
            "kostka", "--level", "2", "--p", "2", "--depth", "4", "--format", "json",
        ]
        .as_slice(),
        [
            "string", "--level", "1", "--p", "1", "--order", "5", "--format", "json",
        ]
        .as_slice(),
        [
            "hl", "--level", "2", "--p", "1", "--box", "4", "--format", "json",
        ]
        .as_slice(),
        [
            "verify", "--id", "MM_L1", "--order", "6", "--format", "json",
        ]
        .as_slice(),
    ] {
        let out = ahl(args);
        assert!(out.status.success());
        let text = stdout(&out);
        let value: serde_json::Value = serde_json::from_str(text.trim()).unwrap();
        let re_emitted = serde_json::to_string(&value).unwrap();
        assert_eq!(text.trim(), re_emitted, "{:?}", args);
    }
}

#[test]
fn kostka_csv_t1_column_matches_the_freudenthal_oracle() {
    let out = ahl(&[
        "kostka", "--level", "2", "--p", "2", "--depth", "4", "--format", "csv",
    ]);
    assert!(out.status.success());
    let body = stdout(&out);
    let mut lines = body.lines();
    assert_eq!(lines.next(), Some("mu_m,mu_n,K"));
    let lam = DominantWeight::new(2, 2).unwrap();
    let mut rows = 0;
    for line in lines {
        let mut parts = line.splitn(3, ',');
        let m: i64 = parts.next().unwrap().parse().unwrap();
        let n: i64 = parts.next().unwrap().parse().unwrap();
        let poly = parts.next().unwrap();
        let at_one = eval_poly_at_one(poly);
        let mult = freudenthal_mult(&lam, &RootVector::new(m, n)).unwrap();
        assert_eq!(at_one, mult as i64, "offset ({m},{n}): {poly}");
        rows += 1;
    }
    assert!(rows >= 5);
}

/// Evaluate the CLI's canonical polynomial rendering at t = 1 by summing
/// the rendered coefficients.
fn eval_poly_at_one(s: &str) -> i64 {
    // renderings look like "t^4 + 2*t^2" or "t" or "1"; at t = 1 each term
    // contributes its coefficient
    let normalized = s.replace(" - ", " +-");
    normalized
        .split(" + ")
        .flat_map(|chunk| {
            chunk.split(" +-").enumerate().map(|(i, term)| {
                let sign = if i == 0 { 1 } else { -1 };
                sign * term_value(term)
            })
        })
        .sum()
}

fn term_value(term: &str) -> i64 {
    let term = term.trim();
    let coeff_part = term.split('*').next().unwrap();
    if coeff_part.starts_with('t') {
        1
    } else if coeff_part.starts_with("-t") {
        -1
    } else if let Ok(v) = coeff_part.parse::<i64>() {
        v
    } else {
        panic!("unexpected term rendering: {term}");
    }
}

#[test]
fn string_rejects_mu_outside_max_with_usage_error() {
    let out = ahl(&[
        "string", "--level", "2", "--p", "2", "--mu-m", "1", "--mu-n", "1",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn output_file_flag_writes_the_same_bytes() {
    let dir = std::env::temp_dir().join("ahl-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("report.json");
    let to_file = ahl(&[
        "verify",
        "--id",
        "MACD_L0",
        "--order",
        "5",
        "--format",
        "json",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(to_file.status.success());
    let from_file = std::fs::read_to_string(&path).unwrap();
    let direct = ahl(&[
        "verify", "--id", "MACD_L0", "--order", "5", "--format", "json",
    ]);
    // identical except for the timing field
    let mut a: serde_json::Value = serde_json::from_str(from_file.trim()).unwrap();
    let mut b: serde_json::Value = serde_json::from_str(stdout(&direct).trim()).unwrap();
    a["elapsed_ms"] = 0.into();
    b["elapsed_ms"] = 0.into();
    assert_eq!(a, b);
    std::fs::remove_file(&path).ok();
}

#[test]
fn zero_order_catalog_is_trivially_green() {
    let out = ahl(&["verify-all", "--order", "0"]);
    assert!(out.status.success());
}

/// The coefficient renderings in data outputs must evaluate consistently:
/// cross-check one Hall-Littlewood JSON cell against the core library.
#[test]
fn hl_json_cell_matches_library_value() {
    let out = ahl(&[
        "hl", "--level", "2", "--p", "2", "--box", "4", "--format", "json",
    ]);
    let value: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(value["box"], 4);
    assert_eq!(value["base"]["level"], 0);
    let lam = DominantWeight::new(2, 2).unwrap();
    let hl = ahl_core::hall::hl_pi_route(&lam, 4).unwrap();
    let terms = value["terms"].as_array().unwrap();
    assert!(!terms.is_empty());
    for term in terms {
        let m = term[0].as_i64().unwrap();
        let n = term[1].as_i64().unwrap();
        let rendered = term[2].as_str().unwrap();
        assert_eq!(hl.get(m, n).render(), rendered);
    }
    // leading coefficient is 1
    assert!(hl.get(0, 0).eval(&BigRational::one()).unwrap().is_one());
}
