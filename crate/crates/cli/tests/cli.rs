//! End-to-end tests of the `framelab` binary: exit codes, output layout,
//! config-file handling, and byte-level determinism.

use std::path::Path;
use std::process::{Command, Output};

fn framelab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_framelab"))
        .args(args)
        .env_remove("FRAMELAB_THREADS")
        .output()
        .expect("binary runs")
}

fn framelab_env(args: &[&str], key: &str, value: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_framelab"))
        .args(args)
        .env_remove("FRAMELAB_THREADS")
        .env(key, value)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 stdout")
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("utf-8 stderr")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn write_file(path: &Path, content: &str) {
    std::fs::write(path, content).expect("write test file");
}

/// Grabs `# key = value` from a CSV preamble.
fn meta_value<'a>(text: &'a str, key: &str) -> Option<&'a str> {
    let prefix = format!("# {key} = ");
    text.lines().find_map(|l| l.strip_prefix(prefix.as_str()))
}

#[test]
fn help_and_version_exit_zero() {
    let help = framelab(&["--help"]);
    assert_eq!(code(&help), 0);
    assert!(stdout(&help).contains("frame-bounds"));

    let version = framelab(&["--version"]);
    assert_eq!(code(&version), 0);
    assert!(stdout(&version).contains("framelab"));

    let sub_help = framelab(&["wco", "--help"]);
    assert_eq!(code(&sub_help), 0);
    assert!(stdout(&sub_help).contains("--phi"));
}

#[test]
fn unknown_flag_exits_one() {
    let out = framelab(&["carleson", "--points", "0.5", "--frobnicate"]);
    assert_eq!(code(&out), 1);
    assert!(stderr(&out).contains("--frobnicate"));
}

#[test]
fn missing_required_flag_exits_one() {
    let out = framelab(&["carleson"]);
    assert_eq!(code(&out), 1);
    assert!(stderr(&out).contains("--points"));
}

#[test]
fn single_atom_orbit_is_a_tight_frame() {
    let out = framelab(&["frame-bounds", "--mus", "0", "--weights", "1"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    let closed: Vec<&str> = text
        .lines()
        .find(|l| l.starts_with("closed-form"))
        .expect("closed-form row")
        .split(',')
        .collect();
    let lower: f64 = closed[1].parse().unwrap();
    let upper: f64 = closed[2].parse().unwrap();
    assert!((lower - 1.0).abs() < 1e-10, "lower {lower}");
    assert!((upper - 1.0).abs() < 1e-10, "upper {upper}");
}

#[test]
fn csv_preamble_has_tool_and_verdict_lines() {
    let out = framelab(&["carleson", "--points", "0.5,0.75,0.875"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "# tool = framelab");
    assert!(meta_value(&text, "experiment") == Some("carleson"));
    assert!(meta_value(&text, "verdict").is_some());
    // The verdict is the last preamble line, directly above the header.
    let header_at = lines
        .iter()
        .position(|l| *l == "index,re,im,separation_product,delta_min")
        .expect("header row");
    assert!(lines[header_at - 1].starts_with("# verdict = "));
    // One data row per point, no trailing junk.
    assert_eq!(lines.len(), header_at + 1 + 3);
}

#[test]
fn thinned_exponent_sweep_decreases() {
    let out = framelab(&["muntz-sweep", "--set", "ceil", "--n-max", "5000"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert_eq!(meta_value(&text, "verdict"), Some("pass"));
    let header_at = text
        .lines()
        .position(|l| l == "parameter,value,tail_bound")
        .expect("sweep header");
    let values: Vec<f64> = text
        .lines()
        .skip(header_at + 1)
        .map(|l| l.split(',').nth(1).unwrap().parse().unwrap())
        .collect();
    assert_eq!(values.len(), 3);
    assert!(values.windows(2).all(|w| w[1] < w[0]), "{values:?}");
}

#[test]
fn cowen_factorization_defect_is_small() {
    let out = framelab(&[
        "wco",
        "--phi",
        "1,0.5,0.5,1",
        "--check",
        "cowen",
        "--degree",
        "64",
    ]);
    assert_eq!(code(&out), 0);
    let value: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("json output");
    assert_eq!(value["verdict"], "pass");
    assert_eq!(value["report"]["sigma_maps_disc"], true);
    let defect: f64 = value["report"]["defect"].as_str().unwrap().parse().unwrap();
    assert!(defect < 1e-8, "defect {defect}");
}

#[test]
fn negative_coefficients_parse_in_flag_values() {
    let out = framelab(&[
        "wco",
        "--phi",
        "-1,0.65,-0.65,1",
        "--weight-kind",
        "bn:0.65",
        "--check",
        "unitary",
    ]);
    assert_eq!(code(&out), 0);
    let value: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("json output");
    assert_eq!(value["report"]["is_bn_form"], true);
    assert_eq!(value["verdict"], "pass");
}

#[test]
fn expectation_gates_exit_code() {
    let met = framelab(&["carleson", "--points", "0.5,0.75", "--expect", "pass"]);
    assert_eq!(code(&met), 0);

    let unmet = framelab(&["carleson", "--points", "0.5,0.75", "--expect", "fail"]);
    assert_eq!(code(&unmet), 2);
    assert!(stderr(&unmet).contains("expectation not met"));
    // The report itself is still printed.
    assert!(stdout(&unmet).contains("# verdict = pass"));

    let met_fail = framelab(&[
        "muntz-sweep",
        "--set",
        "naturals",
        "--n-max",
        "200",
        "--expect",
        "fail",
    ]);
    assert_eq!(
        code(&met_fail),
        0,
        "truncated flatness fails, expectation met"
    );
}

#[test]
fn seed_is_required_for_random_draws() {
    let out = framelab(&["model", "--zeros", "0.3,0,0.5,0", "--check", "parseval"]);
    assert_eq!(code(&out), 1);
    assert!(stderr(&out).contains("--seed"));
}

#[test]
fn seeded_runs_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for path in [&a, &b] {
        let out = framelab(&[
            "model",
            "--zeros",
            "0.3,0,0.5,0:2",
            "--check",
            "parseval",
            "--seed",
            "42",
            "--out",
            path.to_str().unwrap(),
        ]);
        assert_eq!(code(&out), 0);
        assert!(stdout(&out).is_empty(), "report went to the file");
    }
    let first = std::fs::read(&a).unwrap();
    let second = std::fs::read(&b).unwrap();
    assert!(!first.is_empty());
    assert_eq!(first, second);

    let other_seed = framelab(&[
        "model",
        "--zeros",
        "0.3,0,0.5,0:2",
        "--check",
        "parseval",
        "--seed",
        "43",
    ]);
    assert_ne!(stdout(&other_seed).into_bytes(), first);
}

#[test]
fn seed_and_prng_are_recorded() {
    let out = framelab(&[
        "model", "--zeros", "0.4,0", "--check", "parseval", "--seed", "7", "--format", "csv",
    ]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert_eq!(meta_value(&text, "seed"), Some("7"));
    assert_eq!(meta_value(&text, "prng"), Some("chacha12-64"));
}

#[test]
fn config_file_drives_a_run() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("sweep.json");
    write_file(
        &cfg,
        r#"{
            "experiment": {
                "muntz-sweep": {"set": "primes", "n_max": 2000, "xs": [0.1, 0.01]}
            },
            "expect": "pass"
        }"#,
    );
    let out = framelab(&["muntz-sweep", "--config", cfg.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert_eq!(meta_value(&text, "set"), Some("primes"));
    assert_eq!(meta_value(&text, "verdict"), Some("pass"));
}

#[test]
fn config_runs_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("model.json");
    write_file(
        &cfg,
        r#"{
            "experiment": {
                "model": {
                    "zeros": [{"re": 0.3}, {"re": 0.5, "mult": 2}],
                    "check": "parseval",
                    "draws": 3
                }
            },
            "seed": 2024,
            "format": "json"
        }"#,
    );
    let first = framelab(&["model", "--config", cfg.to_str().unwrap()]);
    let second = framelab(&["model", "--config", cfg.to_str().unwrap()]);
    assert_eq!(code(&first), 0);
    assert_eq!(first.stdout, second.stdout);
}

#[test]
fn config_with_unknown_field_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("bad.json");
    write_file(
        &cfg,
        r#"{"experiment": {"carleson": {"points": [[0.5, 0]], "bogus": 1}}}"#,
    );
    let out = framelab(&["carleson", "--config", cfg.to_str().unwrap()]);
    assert_eq!(code(&out), 1);
    let err = stderr(&out);
    assert!(err.contains("bogus"), "{err}");
    assert!(err.contains("line"), "diagnostic has a location: {err}");
}

#[test]
fn config_conflicts_with_experiment_flags() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("cfg.json");
    write_file(
        &cfg,
        r#"{"experiment": {"carleson": {"points": [[0.5, 0]]}}}"#,
    );
    let out = framelab(&[
        "carleson",
        "--config",
        cfg.to_str().unwrap(),
        "--points",
        "0.25",
    ]);
    assert_eq!(code(&out), 1);
    assert!(stderr(&out).contains("--config"));
}

#[test]
fn config_kind_must_match_subcommand() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("cfg.json");
    write_file(
        &cfg,
        r#"{"experiment": {"carleson": {"points": [[0.5, 0]]}}}"#,
    );
    let out = framelab(&["muntz-sweep", "--config", cfg.to_str().unwrap()]);
    assert_eq!(code(&out), 1);
    assert!(stderr(&out).contains("carleson"));
}

#[test]
fn interp_problem_file_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let problem = dir.path().join("problem.json");
    write_file(
        &problem,
        r#"{
            "nodes": [[0.5, 0.0], [0.75, 0.0], [0.875, 0.0]],
            "weights": [[[0.866, 0.0]], [[0.661, 0.0]], [[0.484, 0.0]]],
            "targets": [[1.0, 0.0], [0.5, 0.0], [0.25, 0.0]],
            "N": 1,
            "degree": 32
        }"#,
    );
    let out = framelab(&["interp", "--problem", problem.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert_eq!(meta_value(&text, "verdict"), Some("pass"));
    let residual: f64 = text
        .lines()
        .find(|l| l.starts_with("residual,"))
        .expect("residual row")
        .split(',')
        .nth(1)
        .unwrap()
        .parse()
        .unwrap();
    assert!(residual < 1e-8, "residual {residual}");

    let riesz = framelab(&[
        "interp",
        "--problem",
        problem.to_str().unwrap(),
        "--check",
        "riesz",
    ]);
    assert_eq!(code(&riesz), 0);
    assert!(stdout(&riesz).contains("condition,"));
}

#[test]
fn threads_variable_is_validated_and_recorded() {
    let args = ["carleson", "--points", "0.5"];
    let bad = framelab_env(&args, "FRAMELAB_THREADS", "many");
    assert_eq!(code(&bad), 1);
    assert!(stderr(&bad).contains("FRAMELAB_THREADS"));

    let zero = framelab_env(&args, "FRAMELAB_THREADS", "0");
    assert_eq!(code(&zero), 1);

    let good = framelab_env(&args, "FRAMELAB_THREADS", "4");
    assert_eq!(code(&good), 0);
    assert_eq!(meta_value(&stdout(&good), "threads"), Some("4"));

    let unset = framelab(&args);
    assert_eq!(meta_value(&stdout(&unset), "threads"), Some("1"));
}

#[test]
fn json_format_floats_are_strings() {
    let out = framelab(&["carleson", "--points", "0.5,0.75", "--format", "json"]);
    assert_eq!(code(&out), 0);
    let value: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("json");
    assert_eq!(value["columns"][3], "separation_product");
    // Every float in the structured report is carried as a string.
    let constant = &value["report"]["carleson"]["constant"];
    assert!(constant.is_string(), "constant {constant:?}");
    let parsed: f64 = constant.as_str().unwrap().parse().unwrap();
    assert!((parsed - 0.4).abs() < 1e-12);
}

#[test]
fn out_of_disc_input_is_a_clean_error() {
    let out = framelab(&["carleson", "--points", "0.5,1.5"]);
    assert_eq!(code(&out), 1);
    assert!(stderr(&out).starts_with("error:"));

    let wco = framelab(&["wco", "--phi", "0,1,1,0", "--check", "invert"]);
    assert_eq!(code(&wco), 1);
    assert!(stderr(&wco).contains("disc"));
}
