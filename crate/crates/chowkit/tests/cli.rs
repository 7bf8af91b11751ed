//! End-to-end checks of the command-line interface: exit codes, output
//! shapes and determinism.

use std::process::Command;

fn chowkit(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_chowkit"))
        .args(args)
        .output()
        .expect("spawn chowkit")
}

#[test]
fn verify_single_n_passes() {
    let out = chowkit(&["verify", "--n", "8"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["schema"], "chowkit/1");
    assert_eq!(v["n"], 8);
    assert_eq!(v["index"], "3");
    assert_eq!(v["all_ok"], true);
    assert_eq!(v["chow_x"]["matches_expected"], true);
}

#[test]
fn verify_degenerate_range_passes() {
    let out = chowkit(&["verify", "--n-range", "6..7"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let reports = v["reports"].as_array().unwrap();
    assert_eq!(reports.len(), 2);
    assert!(reports.iter().all(|r| r["all_ok"] == true));
    // the cokernel closed form does not apply below n = 8
    assert!(reports[0]["chow_x"].is_null());
    assert!(reports[0]["chow_x_note"].is_string());
}

#[test]
fn compute_x_markdown_lists_odd_torsion() {
    let out = chowkit(&["compute-x", "--n", "11", "--format", "markdown"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("| 16 | 0 | Z/5 |"), "{text}");
}

#[test]
fn compute_y_reports_basis_and_index() {
    let out = chowkit(&["compute-y", "--n", "9"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["rank"], 24);
    assert_eq!(v["index"], "3");
    let basis = v["basis"].as_array().unwrap();
    assert_eq!(basis.len(), 24);
    assert_eq!(
        basis.iter().filter(|b| b["divided"] == true).count(),
        1
    );
}

#[test]
fn identities_pass() {
    let out = chowkit(&["identities", "--n", "13"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["all_pass"], true);
}

#[test]
fn invalid_configs_exit_2() {
    for args in [
        vec!["verify", "--n", "5"],
        vec!["verify", "--n", "65"],
        vec!["verify", "--n-range", "9..8"],
        vec!["verify", "--n-range", "abc"],
        vec!["verify", "--n", "8", "--primes", "9"],
        vec!["verify"],
        vec!["compute-x", "--n", "7"],
    ] {
        let out = chowkit(&args);
        assert_eq!(out.status.code(), Some(2), "args {args:?}");
    }
}

#[test]
fn ceiling_override_via_env() {
    let out = Command::new(env!("CARGO_BIN_EXE_chowkit"))
        .args(["compute-y", "--n", "26"])
        .env("CHOWKIT_MAX_N", "25")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn output_is_deterministic() {
    let a = chowkit(&["verify", "--n", "9"]);
    let b = chowkit(&["verify", "--n", "9"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn output_file_is_written() {
    let dir = std::env::temp_dir().join("chowkit-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("y8.json");
    let out = chowkit(&["compute-y", "--n", "8", "--output", path.to_str().unwrap()]);
    assert!(out.status.success());
    let v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["n"], 8);
    std::fs::remove_file(path).ok();
}
