//! End-to-end tests of the command surface: file grammar, round-trips,
//! report shapes and exit codes.

use homlie::algebra::Limits;
use homlie_cli::format::{emit_algebra, parse_algebra_text};
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(name)
}

fn homlie(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_homlie"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_of(output: &Output) -> String {
    String::from_utf8_lossy(&output.stdout).to_string()
}

fn fixture_arg(name: &str) -> String {
    fixture(name).display().to_string()
}

const ALGEBRA_FIXTURES: [&str; 9] = [
    "ab1.alg",
    "ab2.alg",
    "heis3.alg",
    "heis3_ez.alg",
    "nonab2.alg",
    "nr3.alg",
    "proj_twist2.alg",
    "shift2.alg",
    "swap2.alg",
];

/// Canonical emission is a parse fixpoint: emitting what was parsed and
/// parsing it again reproduces both the text and the data.
#[test]
fn emit_parse_round_trip_on_all_fixtures() {
    for name in ALGEBRA_FIXTURES {
        let text = std::fs::read_to_string(fixture(name)).unwrap();
        let parsed = parse_algebra_text(&text, Limits::default()).unwrap();
        let emitted = emit_algebra(&parsed.algebra, parsed.pmap.as_ref());
        let reparsed = parse_algebra_text(&emitted, Limits::default()).unwrap();
        assert_eq!(reparsed.algebra, parsed.algebra, "{name}: algebra changed");
        assert_eq!(reparsed.pmap, parsed.pmap, "{name}: pmap changed");
        let re_emitted = emit_algebra(&reparsed.algebra, reparsed.pmap.as_ref());
        assert_eq!(re_emitted, emitted, "{name}: emission is not a fixpoint");
    }
}

#[test]
fn canonical_emission_golden() {
    let text = std::fs::read_to_string(fixture("nonab2.alg")).unwrap();
    let parsed = parse_algebra_text(&text, Limits::default()).unwrap();
    let emitted = emit_algebra(&parsed.algebra, parsed.pmap.as_ref());
    assert_eq!(
        emitted,
        "p 2\ndim 2\nnames h x\nalpha h = h\nalpha x = x\nbracket h x = x\npmap h = h\npmap x = 0\n"
    );
}

#[test]
fn validate_reports_and_exits_zero() {
    let out = homlie(&["validate", &fixture_arg("nonab2.alg")]);
    assert!(out.status.success());
    let text = stdout_of(&out);
    assert!(text.contains("validation: ok"));
    assert!(text.contains("multiplicative: true"));
}

#[test]
fn parse_error_exits_two() {
    let dir = std::env::temp_dir().join("homlie_cli_test_bad_coeff");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("bad.alg");
    std::fs::write(&path, "p 2\ndim 2\nnames h x\nbracket h x = 2*x\n").unwrap();
    let out = homlie(&["validate", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr).to_string();
    assert!(err.contains("coefficient 2"), "stderr: {err}");
}

#[test]
fn axiom_violation_exits_two_with_witness() {
    let dir = std::env::temp_dir().join("homlie_cli_test_jacobi");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("nojacobi.alg");
    std::fs::write(
        &path,
        "p 2\ndim 3\nnames a b c\nbracket a b = c\nbracket a c = a\n",
    )
    .unwrap();
    let out = homlie(&["validate", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr).to_string();
    assert!(err.contains("hom-jacobi"), "stderr: {err}");
}

#[test]
fn quotient_by_non_ideal_exits_three() {
    let out = homlie(&["quotient", &fixture_arg("nonab2.alg"), "--ideal", "h"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn quotient_emits_parseable_file() {
    let out = homlie(&["quotient", &fixture_arg("heis3.alg"), "--ideal", "z"]);
    assert!(out.status.success());
    let text = stdout_of(&out);
    let parsed = parse_algebra_text(&text, Limits::default()).unwrap();
    assert_eq!(parsed.algebra.dim(), 2);
    assert!(parsed.algebra.axiom_report().abelian);
}

#[test]
fn push_ill_defined_exits_three() {
    // Quotient of the shift algebra by the diagonal: representatives of the
    // same class push to different values.
    let dir = std::env::temp_dir().join("homlie_cli_test_illdefined");
    std::fs::create_dir_all(&dir).unwrap();
    std::fs::copy(fixture("shift2.alg"), dir.join("shift2.alg")).unwrap();
    std::fs::write(
        dir.join("line.alg"),
        "p 2\ndim 1\nnames a\nalpha a = a\npmap a = 0\n",
    )
    .unwrap();
    std::fs::write(
        dir.join("diag.map"),
        "source shift2.alg\ntarget line.alg\nmap a = a\nmap b = a\n",
    )
    .unwrap();
    let out = homlie(&["push", dir.join("diag.map").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    let err = String::from_utf8_lossy(&out.stderr).to_string();
    assert!(err.contains("ill-defined"), "stderr: {err}");
}

#[test]
fn envelope_obstruction_exits_four() {
    let out = homlie(&["envelope", "minimize", &fixture_arg("ab1_in_swap2.env")]);
    assert_eq!(out.status.code(), Some(4));
    let out = homlie(&["envelope", "decompose", &fixture_arg("ab1_in_swap2.env")]);
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn verify_pmap_without_section_exits_two() {
    let out = homlie(&["verify-pmap", &fixture_arg("heis3.alg")]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn json_report_is_stable_golden() {
    let out = homlie(&[
        "oracle",
        &fixture_arg("nonab2.alg"),
        "--json",
        "--stable",
    ]);
    assert!(out.status.success());
    let value: serde_json::Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    assert_eq!(value["brute_restrictable"], serde_json::json!(true));
    assert_eq!(value["checked_elements"], serde_json::json!(4));
    assert_eq!(value["audit_ok"], serde_json::json!(true));
    assert!(value.get("elapsed_ms").is_none(), "--stable must drop timings");
    // Identical bytes across runs.
    let again = homlie(&[
        "oracle",
        &fixture_arg("nonab2.alg"),
        "--json",
        "--stable",
    ]);
    assert_eq!(out.stdout, again.stdout);
}

#[test]
fn synthesize_writes_verifiable_file() {
    let dir = std::env::temp_dir().join("homlie_cli_test_synth");
    std::fs::create_dir_all(&dir).unwrap();
    let out_path = dir.join("heis3_pmap.alg");
    let out = homlie(&[
        "synthesize",
        &fixture_arg("heis3.alg"),
        "-o",
        out_path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let verify = homlie(&["verify-pmap", out_path.to_str().unwrap(), "--exhaustive"]);
    assert!(verify.status.success());
    let text = stdout_of(&verify);
    assert!(text.contains("basis_ok: true"));
    assert!(text.contains("exhaustive_ok: true"));
    assert!(text.contains("independent_audit_ok: true"));
}

#[test]
fn synthesize_with_bad_target_exits_three() {
    let dir = std::env::temp_dir().join("homlie_cli_test_targets");
    std::fs::create_dir_all(&dir).unwrap();
    let targets = dir.join("bad.targets");
    std::fs::write(&targets, "pmap h = 0\n").unwrap();
    let out = homlie(&[
        "synthesize",
        &fixture_arg("nonab2.alg"),
        "--targets",
        targets.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn synthesize_reports_failure_index_with_exit_zero() {
    let out = homlie(&["synthesize", &fixture_arg("nr3.alg")]);
    assert!(out.status.success());
    let text = stdout_of(&out);
    assert!(text.contains("restrictable: false"));
    assert!(text.contains("failing_basis_name: x"));
}

#[test]
fn random_is_deterministic_and_valid() {
    let args = [
        "random",
        "--p",
        "2",
        "--dim",
        "3",
        "--seed",
        "9",
        "--construction",
        "yau-twist",
    ];
    let a = homlie(&args);
    let b = homlie(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout, "identical spec must give identical bytes");
    let parsed = parse_algebra_text(&stdout_of(&a), Limits::default()).unwrap();
    assert!(parsed.algebra.axiom_report().is_multiplicative_hom_lie());
}

#[test]
fn directsum_of_pmapped_fixtures_carries_pmap() {
    let out = homlie(&[
        "directsum",
        &fixture_arg("nonab2.alg"),
        &fixture_arg("ab1.alg"),
    ]);
    assert!(out.status.success());
    let parsed = parse_algebra_text(&stdout_of(&out), Limits::default()).unwrap();
    assert_eq!(parsed.algebra.dim(), 3);
    assert!(parsed.pmap.is_some());
}

#[test]
fn morphism_check_restricted_report() {
    let out = homlie(&[
        "morphism",
        "check",
        &fixture_arg("quot_heis3.map"),
        "--restricted",
    ]);
    assert!(out.status.success());
    let text = stdout_of(&out);
    assert!(text.contains("is_morphism: true"));
    assert!(text.contains("restricted: true"));
    assert!(text.contains("graph_agrees: true"));
}

#[test]
fn center_modes() {
    let twisted = homlie(&["center", &fixture_arg("heis3.alg")]);
    assert!(stdout_of(&twisted).contains("dim: 1"));
    let ordinary = homlie(&["center", &fixture_arg("heis3.alg"), "--ordinary"]);
    assert!(stdout_of(&ordinary).contains("dim: 1"));
    let full = homlie(&["center", &fixture_arg("proj_twist2.alg")]);
    assert!(stdout_of(&full).contains("dim: 2"));
}

#[test]
fn limit_cap_exits_three_and_allow_large_lifts_it() {
    let dir = std::env::temp_dir().join("homlie_cli_test_large");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("p17.alg");
    std::fs::write(&path, "p 17\ndim 1\nnames a\n").unwrap();
    let out = homlie(&["validate", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2), "cap violation surfaces at parse");
    let lifted = homlie(&["validate", path.to_str().unwrap(), "--allow-large"]);
    assert!(lifted.status.success());
}
