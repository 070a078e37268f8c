//! End-to-end tests of the `eqsep` binary: every exit code path, report
//! shapes, and byte-level determinism modulo the timing field.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_eqsep")
}

fn run(args: &[&str]) -> Output {
    Command::new(bin())
        .args(args)
        .output()
        .expect("binary runs")
}

fn write_config(dir: &Path, name: &str, contents: &str) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

const Z3_REGULAR: &str = r#"{
    "group": "cyclic(3)",
    "activation": "relu",
    "layers": [
        {"source": "regular", "target": "regular", "generators": "full", "bias": "orbit"},
        {"source": "regular", "target": "cosets(full)", "generators": "full", "bias": "orbit"}
    ]
}"#;

const CNN_1: &str = r#"{
    "group": "cyclic(3)",
    "activation": "relu",
    "layers": [
        {"source": "power(3,1)", "target": "power(3,1)", "generators": "circular(1)", "bias": "orbit"},
        {"source": "power(3,1)", "target": "cosets(full)", "generators": "full", "bias": "orbit"}
    ]
}"#;

const CNN_3: &str = r#"{
    "group": "cyclic(3)",
    "activation": "relu",
    "layers": [
        {"source": "power(3,1)", "target": "power(3,1)", "generators": "circular(3)", "bias": "orbit"},
        {"source": "power(3,1)", "target": "cosets(full)", "generators": "full", "bias": "orbit"}
    ]
}"#;

#[test]
fn rho_writes_a_relation_report_and_exits_zero() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(dir.path(), "arch.json", Z3_REGULAR);
    let out_path = dir.path().join("report.json");
    let out = run(&[
        "rho",
        config.to_str().unwrap(),
        "--output",
        out_path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "{out:?}");
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&out_path).unwrap()).unwrap();
    assert_eq!(report["command"], "rho");
    assert_eq!(report["result"]["ambient_dim"], 6);
    // Z_3 regular hidden with invariant readout: the three rotation graphs.
    assert_eq!(report["result"]["members"].as_array().unwrap().len(), 3);
    assert!(report["result"]["stats"]["nodes"].as_u64().unwrap() > 0);
}

#[test]
fn rho_reports_are_deterministic_modulo_timing() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(dir.path(), "arch.json", Z3_REGULAR);
    let mut values: Vec<serde_json::Value> = (0..2)
        .map(|_| {
            let out = run(&["rho", config.to_str().unwrap()]);
            assert_eq!(out.status.code(), Some(0));
            serde_json::from_slice(&out.stdout).unwrap()
        })
        .collect();
    for v in &mut values {
        v.as_object_mut().unwrap().remove("timing");
    }
    assert_eq!(values[0], values[1]);
}

#[test]
fn identify_answers_membership_queries() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(dir.path(), "arch.json", CNN_3);
    // Cyclic shift: identified.
    let out = run(&["identify", config.to_str().unwrap(), "1,2,3", "2,3,1"]);
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["result"]["identified"], true);
    // Reflection: separated.
    let out = run(&["identify", config.to_str().unwrap(), "1,2,3", "1,3,2"]);
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["result"]["identified"], false);
}

#[test]
fn compare_reports_the_filter_hierarchy() {
    let dir = tempfile::tempdir().unwrap();
    let full = write_config(dir.path(), "cnn3.json", CNN_3);
    let one = write_config(dir.path(), "cnn1.json", CNN_1);
    let out = run(&["compare", full.to_str().unwrap(), one.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["result"]["comparison"], "strict-subset");
}

#[test]
fn compare_with_failed_expectation_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let full = write_config(dir.path(), "cnn3.json", CNN_3);
    let one = write_config(dir.path(), "cnn1.json", CNN_1);
    let out = run(&[
        "compare",
        full.to_str().unwrap(),
        one.to_str().unwrap(),
        "--expect",
        "equal",
    ]);
    assert_eq!(out.status.code(), Some(1), "{out:?}");
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["result"]["expectation_met"], false);
}

#[test]
fn malformed_inputs_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    // Unparseable group spec.
    let bad_group = write_config(
        dir.path(),
        "bad.json",
        r#"{"group": "rubiks(3)", "activation": "relu", "layers": [
            {"source": "regular", "target": "regular", "generators": "full", "bias": "orbit"}
        ]}"#,
    );
    let out = run(&["rho", bad_group.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2), "{out:?}");
    assert!(String::from_utf8_lossy(&out.stderr).contains("group"));

    // Not JSON at all.
    let not_json = write_config(dir.path(), "nope.json", "{not json");
    let out = run(&["rho", not_json.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));

    // Missing file.
    let out = run(&["rho", dir.path().join("absent.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));

    // Unknown verify suite.
    let out = run(&["verify", "everything"]);
    assert_eq!(out.status.code(), Some(2));

    // Wrong vector arity for identify.
    let config = write_config(dir.path(), "arch.json", Z3_REGULAR);
    let out = run(&["identify", config.to_str().unwrap(), "1,2", "2,1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn resource_limits_exit_three() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(dir.path(), "arch.json", Z3_REGULAR);
    // The twin bias partition has one block of size 6; a cap of 2 trips.
    let out = run(&["rho", config.to_str().unwrap(), "--max-block-size", "2"]);
    assert_eq!(out.status.code(), Some(3), "{out:?}");
    assert!(String::from_utf8_lossy(&out.stderr).contains("max-block-size"));

    let out = run(&["rho", config.to_str().unwrap(), "--max-union-members", "1"]);
    assert_eq!(out.status.code(), Some(3), "{out:?}");
}

#[test]
fn verify_regular_suite_passes() {
    let out = run(&["verify", "regular"]);
    assert_eq!(out.status.code(), Some(0), "{out:?}");
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["result"]["all_passed"], true);
}

#[test]
fn stabilize_reports_threshold_one() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(dir.path(), "arch.json", Z3_REGULAR);
    let out = run(&["stabilize", config.to_str().unwrap(), "--layer", "0", "--max-reps", "3"]);
    assert_eq!(out.status.code(), Some(0), "{out:?}");
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["result"]["threshold"], 1);
    assert_eq!(report["result"]["monotone"], true);
}

#[test]
fn empirical_oracle_verdicts() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(dir.path(), "arch.json", CNN_3);
    let out = run(&[
        "empirical",
        config.to_str().unwrap(),
        "1,2,3",
        "1,3,2",
        "--samples",
        "200",
        "--seed",
        "5",
    ]);
    assert_eq!(out.status.code(), Some(0), "{out:?}");
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["result"]["verdict"], "separated");

    let out = run(&[
        "empirical",
        config.to_str().unwrap(),
        "1,2,3",
        "2,3,1",
        "--samples",
        "200",
        "--seed",
        "5",
    ]);
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["result"]["verdict"], "likely-identified");
}

#[test]
fn basis_counts_s4_pair_commutant() {
    let out = run(&[
        "basis",
        "--group",
        "symmetric(4)",
        "--source",
        "power(4,2)",
        "--target",
        "power(4,2)",
    ]);
    assert_eq!(out.status.code(), Some(0), "{out:?}");
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["result"]["count"], 15);

    let out = run(&[
        "basis",
        "--group",
        "symmetric(3)",
        "--source",
        "regular",
        "--target",
        "cosets(alternating)",
        "--method",
        "double_coset",
    ]);
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["result"]["count"], 2);
}

#[test]
fn text_format_renders_lines() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(dir.path(), "arch.json", Z3_REGULAR);
    let out = run(&["rho", config.to_str().unwrap(), "--format", "text"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("command: rho"));
    assert!(text.contains("ambient_dim: 6"));
}
