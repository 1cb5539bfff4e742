//! End-to-end tests of the dispatch layer: exit codes, output formats, and
//! the reproducibility guarantees of batch and generate.

use polystab_cli::{cli_dispatch, parse_problem, CliOutcome};
use polystab_core::{MuValue, Rat, RatVec, StabilityReport, VPolyhedron};

fn fixture(name: &str) -> String {
    format!("{}/fixtures/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn run(args: &[&str]) -> CliOutcome {
    let argv = std::iter::once("polystab").chain(args.iter().copied());
    cli_dispatch(argv)
}

#[test]
fn eval_prints_optimal_value() {
    let out = run(&["eval", &fixture("running_example.json"), "--x", "-3"]);
    assert_eq!(out.exit_code, 0, "stderr: {}", out.stderr);
    assert_eq!(out.stdout.trim(), "3");

    let out = run(&["eval", &fixture("running_example.json"), "--x", "1/2"]);
    assert_eq!(out.stdout.trim(), "1/2");

    let out = run(&["eval", &fixture("halfline_indicator.json"), "--x", "1"]);
    assert_eq!(out.stdout.trim(), "+infinity");
}

#[test]
fn verify_running_example_exits_zero() {
    let out = run(&["verify", &fixture("running_example.json"), "--x", "0"]);
    assert_eq!(out.exit_code, 0, "stderr: {}", out.stderr);
    let report: StabilityReport = serde_json::from_str(&out.stdout).unwrap();
    assert!(report.verdicts.all_true());
    assert_eq!(report.mu_at_x_bar, MuValue::Finite(Rat::zero()));
    let expected =
        VPolyhedron::new(1, vec![RatVec::from_ints(&[-1]), RatVec::from_ints(&[1])], vec![], vec![])
            .unwrap();
    assert!(report.sub_mu.set_eq(&expected).unwrap());
}

#[test]
fn verify_rejects_non_minimizer_with_exit_two() {
    let out = run(&[
        "verify",
        &fixture("running_example.json"),
        "--x",
        "5",
        "--y",
        "0",
    ]);
    assert_eq!(out.exit_code, 2);
    assert!(out.stderr.contains("bad-request"), "stderr: {}", out.stderr);
}

#[test]
fn verify_outside_domain_is_a_hypothesis_error() {
    let out = run(&["verify", &fixture("halfline_indicator.json"), "--x", "1"]);
    assert_eq!(out.exit_code, 2);
    assert!(out.stderr.contains("hypothesis"), "stderr: {}", out.stderr);
}

#[test]
fn verify_defaults_to_zero_parameter() {
    let out = run(&["verify", &fixture("running_example.json")]);
    assert_eq!(out.exit_code, 0);
    let report: StabilityReport = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(report.x_bar, RatVec::from_ints(&[0]));
}

#[test]
fn subdiff_prints_both_sets() {
    let out = run(&["subdiff", &fixture("running_example.json"), "--x", "0"]);
    assert_eq!(out.exit_code, 0);
    let value: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(value["mu"], "0");
    assert_eq!(value["sub_mu"]["vertices"].as_array().unwrap().len(), 2);
    assert!(value.get("h_forms").is_none());

    let out = run(&[
        "subdiff",
        &fixture("running_example.json"),
        "--x",
        "0",
        "--h-form",
    ]);
    let value: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    assert!(value["h_forms"]["sub_mu"]["ineq"].is_array());
}

#[test]
fn verify_h_form_flag_adds_constraint_views() {
    let out = run(&[
        "verify",
        &fixture("running_example.json"),
        "--x",
        "0",
        "--h-form",
    ]);
    assert_eq!(out.exit_code, 0);
    let value: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    assert!(value["h_forms"]["B0"]["ineq"].is_array());
    assert!(value["h_forms"]["Binf"].is_object());
    // the report body is still parseable on its own
    let report: StabilityReport = serde_json::from_str(&out.stdout).unwrap();
    assert!(report.verdicts.all_true());
}

#[test]
fn convert_round_trips_representations() {
    let out = run(&["convert", &fixture("first_orthant_h.json"), "--to", "v"]);
    assert_eq!(out.exit_code, 0, "stderr: {}", out.stderr);
    let v: VPolyhedron = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v.vertices(), &[RatVec::from_ints(&[0, 0])]);
    assert_eq!(v.rays().len(), 2);

    // feed the V-form back and convert to H
    let dir = tempdir();
    let v_path = dir.join("orthant_v.json");
    std::fs::write(&v_path, &out.stdout).unwrap();
    let out = run(&["convert", v_path.to_str().unwrap(), "--to", "h"]);
    assert_eq!(out.exit_code, 0);
    let h: polystab_core::HPolyhedron = serde_json::from_str(&out.stdout).unwrap();
    assert!(h.contains_point(&RatVec::from_ints(&[3, 4])).unwrap());
    assert!(!h.contains_point(&RatVec::from_ints(&[-1, 0])).unwrap());
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn unknown_subcommand_exits_two_with_usage() {
    let out = run(&["frobnicate"]);
    assert_eq!(out.exit_code, 2);
    assert!(out.stderr.to_lowercase().contains("usage"), "{}", out.stderr);
}

#[test]
fn missing_file_exits_two() {
    let out = run(&["eval", "/nonexistent/problem.json", "--x", "0"]);
    assert_eq!(out.exit_code, 2);
    assert!(out.stderr.contains("io-error"));
}

#[test]
fn batch_output_is_bit_reproducible() {
    let args = ["batch", "--count", "4", "--seed", "11", "--dims", "1,1"];
    let first = run(&args);
    let second = run(&args);
    assert_eq!(first.exit_code, 0, "stderr: {}", first.stderr);
    assert_eq!(first.stdout, second.stdout);
    let value: serde_json::Value = serde_json::from_str(&first.stdout).unwrap();
    assert_eq!(value["count"], 4);
    assert!(value["failures"].as_array().unwrap().is_empty());
    assert!(value.get("wall_time").is_none());
    assert!(first.stderr.contains("wall_time_ms"));
}

#[test]
fn generate_is_deterministic_and_parseable() {
    let args = ["generate", "--seed", "0", "--dims", "2,1"];
    let first = run(&args);
    let second = run(&args);
    assert_eq!(first.exit_code, 0);
    assert_eq!(first.stdout, second.stdout);
    let problem = parse_problem(&first.stdout).unwrap();
    assert_eq!(problem.dim_x(), 2);
    assert_eq!(problem.dim_y(), 1);
}

/// The golden instance for seed 0 with default sizes, recorded once and
/// frozen; regenerating must reproduce it byte for byte.
#[test]
fn generate_matches_golden_file() {
    let golden = std::fs::read_to_string(fixture("golden_seed0.json")).unwrap();
    let out = run(&["generate", "--seed", "0", "--dims", "2,2"]);
    assert_eq!(out.exit_code, 0);
    assert_eq!(out.stdout, golden);
}

/// Serialization round trip: a reparsed problem behaves identically.
#[test]
fn serialization_round_trip_preserves_behavior() {
    let text = std::fs::read_to_string(fixture("running_example.json")).unwrap();
    let original = parse_problem(&text).unwrap();
    let reparsed = parse_problem(&serde_json::to_string(&original).unwrap()).unwrap();
    assert_eq!(original, reparsed);
    for x in [-2i64, 0, 3] {
        let x = RatVec::from_ints(&[x]);
        assert_eq!(
            original.optimal_value(&x).unwrap(),
            reparsed.optimal_value(&x).unwrap()
        );
    }
    let a = original.verify_stability(&RatVec::from_ints(&[0]), None).unwrap();
    let b = reparsed.verify_stability(&RatVec::from_ints(&[0]), None).unwrap();
    assert_eq!(a, b);
}

/// The installed binary behaves like the in-process dispatcher.
#[test]
fn binary_smoke_test() {
    let output = std::process::Command::new(env!("CARGO_BIN_EXE_polystab"))
        .args(["eval", &fixture("running_example.json"), "--x", "-3"])
        .output()
        .unwrap();
    assert!(output.status.success());
    assert_eq!(String::from_utf8_lossy(&output.stdout).trim(), "3");

    let output = std::process::Command::new(env!("CARGO_BIN_EXE_polystab"))
        .args(["verify", &fixture("running_example.json"), "--x", "5", "--y", "0"])
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(2));
}

fn tempdir() -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!("polystab-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}
