use std::path::Path;
use std::process::Command;

use uncertain_evidence::cli::{self, ModelDocument};

fn manifest(path: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR")).join(path).display().to_string()
}

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = cli::run(std::iter::once("uncertain-evidence").chain(args.iter().copied()), &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn code(args: &[&str]) -> i32 {
    run(args).0
}

#[test]
fn success() {
    assert_eq!(code(&["weights", &manifest("fixtures/xam0.json")]), 0);
    assert_eq!(code(&["--help"]), 0);
    assert_eq!(code(&["--version"]), 0);
}

#[test]
fn clean_verification_exits_zero() {
    let (c, out, _) = run(&["verify", &manifest("fixtures/def-strictness.json"), "--samples", "50"]);
    assert_eq!(c, 0);
    assert!(out.ends_with("all checks passed\n"));
}

#[test]
fn parse_errors_exit_two() {
    assert_eq!(code(&["weights", &manifest("tests/data/decimal.json")]), 2);
    assert_eq!(code(&["weights", &manifest("tests/data/missing.json")]), 2);
    assert_eq!(code(&["frobnicate"]), 2);
    assert_eq!(code(&["update", &manifest("fixtures/xam0.json")]), 2);
    assert_eq!(code(&["update", &manifest("fixtures/xam0.json"), "--obs", "heads", "--prior", "A=0.01"]), 2);
}

#[test]
fn validation_errors_exit_three() {
    let (c, _, err) = run(&["weights", &manifest("tests/data/unnormalized.json")]);
    assert_eq!(c, 3);
    assert!(err.contains("NonNormalizedLikelihood") && err.contains("delta[0].B"));
    assert_eq!(code(&["update", &manifest("tests/data/no-prior.json"), "--obs", "heads"]), 3);
    assert_eq!(code(&["update", &manifest("fixtures/xam0.json"), "--obs", "sideways"]), 3);
    assert_eq!(code(&["update", &manifest("fixtures/xam0.json"), "--obs", "heads", "--prior", "A=1/2,B=1/3"]), 3);
}

#[test]
fn empty_results_exit_four() {
    let (c, _, err) = run(&["update", &manifest("tests/data/empty-posterior.json"), "--obs", "tails"]);
    assert_eq!(c, 4);
    assert!(err.contains("EmptyPosteriorSet"));
    assert_eq!(code(&["update", &manifest("tests/data/empty-posterior.json"), "--obs", "heads,tails"]), 4);
    let (c, _, err) = run(&["combine", &manifest("tests/data/opposite-coins.json"), "--obs", "heads,tails"]);
    assert_eq!(c, 4);
    assert!(err.contains("EmptyResult"));
}

#[test]
fn explosion_exits_five() {
    let (c, _, err) = run(&[
        "combine",
        &manifest("fixtures/def-strictness.json"),
        "--obs",
        "X,X,X,X,X,X,X",
        "--semantics",
        "per-observation",
    ]);
    assert_eq!(c, 5);
    assert!(err.contains("ExplosionGuard"));
}

#[test]
fn zero_denominator_exits_six() {
    let (c, _, err) = run(&["bounds", &manifest("tests/data/zero-denominator.json"), "--obs", "heads"]);
    assert_eq!(c, 6);
    assert!(err.contains("\"heads\"") && err.contains("\"A\""));
}

#[test]
fn refining_a_correlated_model_exits_seven() {
    let (c, out, err) = run(&["refine", &manifest("fixtures/correlated-delta2.json")]);
    assert_eq!(c, 7);
    assert!(out.is_empty());
    assert!(err.contains("CorrelatedSpace"));
}

#[test]
fn refined_model_written_to_file_reloads() {
    let dir = tempfile::tempdir().unwrap();
    let target = dir.path().join("refined.json");
    let target = target.to_str().unwrap();
    assert_eq!(code(&["refine", &manifest("fixtures/coins1.json"), "--output", target]), 0);
    let doc = ModelDocument::load(Path::new(target)).unwrap();
    assert_eq!(doc.hypotheses, ["(A,1)", "(A,2)", "(B,1)"]);
    let (c, out, _) = run(&["weights", target]);
    assert_eq!(c, 0);
    assert!(out.contains("heads  4/9    1/3    2/9"));
}

#[test]
fn binary_follows_the_same_contract() {
    let bin = env!("CARGO_BIN_EXE_uncertain-evidence");
    let cases: [(&[&str], i32); 7] = [
        (&["weights", "fixtures/xam0.json"], 0),
        (&["weights", "tests/data/decimal.json"], 2),
        (&["weights", "tests/data/unnormalized.json"], 3),
        (&["update", "tests/data/empty-posterior.json", "--obs", "tails"], 4),
        (&["combine", "fixtures/def-strictness.json", "--obs", "X,X,X,X,X,X,X", "--semantics", "per-observation"], 5),
        (&["bounds", "tests/data/zero-denominator.json", "--obs", "heads"], 6),
        (&["refine", "fixtures/correlated-delta2.json"], 7),
    ];
    for (args, expected) in cases {
        let status = Command::new(bin).args(args).current_dir(env!("CARGO_MANIFEST_DIR")).output().unwrap();
        assert_eq!(status.status.code(), Some(expected), "{args:?}");
        if expected == 0 {
            assert!(status.stderr.is_empty());
        } else {
            assert!(status.stdout.is_empty());
            assert!(!status.stderr.is_empty());
        }
    }
}
