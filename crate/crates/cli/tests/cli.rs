//! End-to-end command tests: exit codes, report text, determinism.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_filippov-lab")
}

fn run(args: &[&str]) -> Output {
    Command::new(bin())
        .args(args)
        .env_remove("FILIPPOV_LAB_JOBS")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 output")
}

fn write_fixture(dir: &Path, name: &str, make_args: &[&str]) -> PathBuf {
    let out = run(make_args);
    assert!(out.status.success(), "make failed: {out:?}");
    let path = dir.join(name);
    std::fs::write(&path, out.stdout).expect("fixture written");
    path
}

#[test]
fn validate_simple4_passes() {
    let dir = tempfile::tempdir().unwrap();
    let alg = write_fixture(dir.path(), "simple4.json", &["make", "simple4"]);
    let out = run(&["validate", "--input", alg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("fundamental_identity: pass (24 tuples)"), "{text}");
    assert!(text.contains("verdict: pass"));
}

#[test]
fn validate_corrupted_simple4_fails_with_witness() {
    let dir = tempfile::tempdir().unwrap();
    let alg = write_fixture(dir.path(), "simple4.json", &["make", "simple4"]);
    let text = std::fs::read_to_string(&alg).unwrap();
    // redirect [e1,e2,e3] from e4 to e1
    let corrupted = text.replacen("\"basis\": 3", "\"basis\": 0", 1);
    assert_ne!(text, corrupted);
    let bad = dir.path().join("broken.json");
    std::fs::write(&bad, corrupted).unwrap();
    let out = run(&["validate", "--input", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let text = stdout(&out);
    assert!(text.contains("fundamental_identity: fail"), "{text}");
    assert!(text.contains("witness fundamental_identity @"), "{text}");
    assert!(text.contains("verdict: fail"));
}

#[test]
fn witness_cap_limits_output() {
    let dir = tempfile::tempdir().unwrap();
    let alg = write_fixture(dir.path(), "simple4.json", &["make", "simple4"]);
    let text = std::fs::read_to_string(&alg).unwrap();
    let corrupted = text.replacen("\"basis\": 3", "\"basis\": 0", 1);
    let bad = dir.path().join("broken.json");
    std::fs::write(&bad, corrupted).unwrap();
    let out = run(&[
        "validate",
        "--input",
        bad.to_str().unwrap(),
        "--witness-cap",
        "2",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let text = stdout(&out);
    let witness_lines = text.lines().filter(|l| l.contains("  witness")).count();
    assert_eq!(witness_lines, 2, "{text}");
    // the full violation count is still reported
    assert!(text.contains("violations)"), "{text}");
}

#[test]
fn malformed_input_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{ not json").unwrap();
    let out = run(&["validate", "--input", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let missing = dir.path().join("nope.json");
    let out = run(&["validate", "--input", missing.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["validate"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn extend_direct_sum_zero_pair() {
    let dir = tempfile::tempdir().unwrap();
    let spec = write_fixture(dir.path(), "heis.json", &["make", "heisenberg-spec"]);
    let pair = dir.path().join("pair.json");
    std::fs::write(
        &pair,
        r#"{ "sigma": [["0","0","0"],["0","0","0"],["0","0","0"]], "tau": [["0"]] }"#,
    )
    .unwrap();
    let out = run(&[
        "extend",
        "--input",
        spec.to_str().unwrap(),
        "--input",
        pair.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("solvable: true"), "{text}");
    assert!(text.contains("gamma: [[0, 0, 0]]"), "{text}");
}

#[test]
fn extend_unsolvable_exits_1() {
    let dir = tempfile::tempdir().unwrap();
    let spec = write_fixture(dir.path(), "heis.json", &["make", "heisenberg-spec"]);
    // tau scales H but sigma = 0, so the bracket row demands 2 h1 = 0
    let pair = dir.path().join("pair.json");
    std::fs::write(
        &pair,
        r#"{ "sigma": [["0","0","0"],["0","0","0"],["0","0","0"]], "tau": [["2"]] }"#,
    )
    .unwrap();
    let out = run(&[
        "extend",
        "--input",
        spec.to_str().unwrap(),
        "--input",
        pair.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(1));
    let text = stdout(&out);
    assert!(text.contains("solvable: false"), "{text}");
    assert!(text.contains("verdict: fail"), "{text}");
}

#[test]
fn check_extension_passes_on_heisenberg() {
    let dir = tempfile::tempdir().unwrap();
    let spec = write_fixture(dir.path(), "heis.json", &["make", "heisenberg-spec"]);
    let out = run(&["check-extension", "--input", spec.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("conditions_match_direct: pass"), "{text}");
    assert!(text.contains("module_criterion: is_module=true beta_mu_zero=true"));
}

#[test]
fn json_report_parses_and_mirrors_fields() {
    let dir = tempfile::tempdir().unwrap();
    let alg = write_fixture(dir.path(), "simple4.json", &["make", "simple4"]);
    let out = run(&[
        "validate",
        "--input",
        alg.to_str().unwrap(),
        "--report",
        "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("valid json");
    assert_eq!(doc["command"], "validate");
    assert_eq!(doc["verdict"], "pass");
    let checks = doc["checks"].as_array().unwrap();
    assert_eq!(checks[0]["name"], "fundamental_identity");
    assert_eq!(checks[0]["passed"], true);
    assert_eq!(checks[0]["checked"], 24);
    assert_eq!(checks[0]["violations"], 0);
    assert!(checks[0]["witnesses"].as_array().unwrap().is_empty());
}

#[test]
fn rep_check_command() {
    let dir = tempfile::tempdir().unwrap();
    let alg = write_fixture(dir.path(), "abelian4.json", &["make", "abelian", "--dim", "4"]);
    let action = dir.path().join("rho.json");
    std::fs::write(
        &action,
        r#"{ "pairs": [ { "args": [0, 1], "matrix": [["1","0"],["0","1"]] } ] }"#,
    )
    .unwrap();
    let out = run(&[
        "rep-check",
        "--input",
        alg.to_str().unwrap(),
        "--input",
        action.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));

    // adding a second identity pair breaks the expansion identity
    std::fs::write(
        &action,
        r#"{ "pairs": [ { "args": [0, 1], "matrix": [["1","0"],["0","1"]] },
                        { "args": [2, 3], "matrix": [["1","0"],["0","1"]] } ] }"#,
    )
    .unwrap();
    let out = run(&[
        "rep-check",
        "--input",
        alg.to_str().unwrap(),
        "--input",
        action.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn cube_command_emits_block_labels() {
    let dir = tempfile::tempdir().unwrap();
    let alg = write_fixture(dir.path(), "simple4.json", &["make", "simple4"]);
    let out = run(&["cube", "--input", alg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("\"x:e1\""));
    assert!(text.contains("\"z:e4\""));
    let doc: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(doc["dim"], 12);
}

#[test]
fn reports_are_byte_identical_across_runs_and_jobs() {
    let dir = tempfile::tempdir().unwrap();
    let alg = write_fixture(dir.path(), "simple4.json", &["make", "simple4"]);
    let spec = write_fixture(dir.path(), "heis.json", &["make", "heisenberg-spec"]);
    let command_sets: Vec<Vec<&str>> = vec![
        vec!["validate", "--input", alg.to_str().unwrap(), "--seed", "42"],
        vec!["derivations", "--input", alg.to_str().unwrap()],
        vec!["check-extension", "--input", spec.to_str().unwrap(), "--report", "json"],
    ];
    for base in command_sets {
        let first = run(&base);
        let again = run(&base);
        let mut with_jobs = base.clone();
        with_jobs.extend(["--jobs", "4"]);
        let parallel = run(&with_jobs);
        assert_eq!(first.stdout, again.stdout, "rerun differs for {base:?}");
        assert_eq!(first.stdout, parallel.stdout, "--jobs 4 differs for {base:?}");
        assert_eq!(first.status.code(), parallel.status.code());
    }
}

#[test]
fn jobs_env_var_sets_default() {
    let dir = tempfile::tempdir().unwrap();
    let alg = write_fixture(dir.path(), "simple4.json", &["make", "simple4"]);
    let out = Command::new(bin())
        .args(["validate", "--input", alg.to_str().unwrap()])
        .env("FILIPPOV_LAB_JOBS", "3")
        .output()
        .expect("binary runs");
    assert_eq!(out.status.code(), Some(0));
    // an invalid env value surfaces as a usage error, not a crash
    let out = Command::new(bin())
        .args(["validate", "--input", alg.to_str().unwrap()])
        .env("FILIPPOV_LAB_JOBS", "zero")
        .output()
        .expect("binary runs");
    assert_eq!(out.status.code(), Some(2));
}
