//! Golden outputs for every fixture and command. Run with `UPDATE_GOLDEN=1`
//! to rewrite the files under `tests/golden/`.

use std::fs;
use std::path::{Path, PathBuf};

use uncertain_evidence::cli;

const FIXTURES: [&str; 6] =
    ["xam0", "xam1-refined", "coins1", "def-strictness", "correlated-delta1", "correlated-delta2"];

const COMMANDS: [&str; 7] = ["weights", "update", "bounds", "check-uncorrelated", "refine", "combine", "verify"];

fn manifest_dir() -> &'static Path {
    Path::new(env!("CARGO_MANIFEST_DIR"))
}

fn capture(args: &[&str]) -> String {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = cli::run(std::iter::once("uncertain-evidence").chain(args.iter().copied()), &mut out, &mut err);
    format!(
        "$ uncertain-evidence {}\nexit: {code}\n--- stdout\n{}--- stderr\n{}",
        args.join(" "),
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap()
    )
}

fn check_golden(name: &str, args: &[&str]) {
    let path: PathBuf = manifest_dir().join("tests/golden").join(format!("{name}.txt"));
    let actual = capture(args);
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        fs::write(&path, &actual).unwrap();
        return;
    }
    let expected = fs::read_to_string(&path).unwrap_or_else(|_| panic!("missing golden file {}", path.display()));
    assert_eq!(actual, expected, "output of {name} differs from {}", path.display());
}

fn first_observation(fixture: &str) -> String {
    let doc = cli::ModelDocument::load(&fixture_path(fixture)).unwrap();
    doc.observations[0].clone()
}

fn fixture_path(fixture: &str) -> PathBuf {
    manifest_dir().join("fixtures").join(format!("{fixture}.json"))
}

fn command_args(command: &str, fixture: &str) -> Vec<String> {
    let model = format!("fixtures/{fixture}.json");
    let ob = first_observation(fixture);
    let mut args = vec![command.to_string(), model];
    match command {
        "update" => args.extend(["--obs".to_string(), ob]),
        "combine" => args.extend(["--obs".to_string(), format!("{ob},{ob}")]),
        _ => {}
    }
    args
}

fn in_manifest_dir() {
    std::env::set_current_dir(manifest_dir()).unwrap();
}

#[test]
fn every_fixture_and_command() {
    in_manifest_dir();
    for fixture in FIXTURES {
        for command in COMMANDS {
            let args = command_args(command, fixture);
            let refs: Vec<&str> = args.iter().map(String::as_str).collect();
            check_golden(&format!("{fixture}.{command}"), &refs);
        }
    }
}

#[test]
fn every_fixture_and_command_as_json() {
    in_manifest_dir();
    for fixture in FIXTURES {
        for command in COMMANDS {
            let mut args = vec!["--format".to_string(), "json".to_string()];
            args.extend(command_args(command, fixture));
            let refs: Vec<&str> = args.iter().map(String::as_str).collect();
            check_golden(&format!("{fixture}.{command}.json"), &refs);
        }
    }
}

#[test]
fn worked_examples() {
    in_manifest_dir();
    let cases: [(&str, &[&str]); 8] = [
        (
            "xam0.update-heads-heads",
            &["update", "fixtures/xam0.json", "--prior", "A=1/2,B=1/2", "--obs", "heads,heads"],
        ),
        ("xam0.update-uniform", &["update", "fixtures/xam0.json", "--prior", "A=1/2", "--obs", "tails"]),
        (
            "xam1-refined.update-naive-prior",
            &[
                "update",
                "fixtures/xam1-refined.json",
                "--prior",
                "A1=1407/81300,A2=-99/13550,B=99/100",
                "--obs",
                "heads",
            ],
        ),
        (
            "coins1.combine-per-observation",
            &["combine", "fixtures/coins1.json", "--obs", "heads,heads", "--semantics", "per-observation"],
        ),
        ("coins1.update-sequence", &["update", "fixtures/coins1.json", "--obs", "heads,heads"]),
        ("def-strictness.bounds-x", &["bounds", "fixtures/def-strictness.json", "--obs", "X"]),
        (
            "def-strictness.verify-seed-7",
            &["--seed", "7", "verify", "fixtures/def-strictness.json", "--samples", "100"],
        ),
        ("zero-denominator.bounds", &["bounds", "tests/data/zero-denominator.json", "--obs", "heads"]),
    ];
    for (name, args) in cases {
        check_golden(name, args);
    }
}

#[test]
fn output_is_deterministic() {
    in_manifest_dir();
    let args = ["--seed", "3", "verify", "fixtures/coins1.json"];
    assert_eq!(capture(&args), capture(&args));
}
