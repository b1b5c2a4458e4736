//! End-to-end behavior of the `ltbx` binary: artifact contents, exit-code
//! taxonomy, determinism, and atomicity.

use std::path::Path;
use std::process::Command;

fn ltbx() -> Command {
    Command::new(env!("CARGO_BIN_EXE_ltbx"))
}

fn read(path: &Path) -> String {
    std::fs::read_to_string(path).unwrap_or_else(|e| panic!("read {}: {}", path.display(), e))
}

#[test]
fn zxy_q1_contents() {
    let dir = tempfile::tempdir().unwrap();
    let status = ltbx()
        .args(["zxy", "--q", "1", "--out"])
        .arg(dir.path())
        .status()
        .unwrap();
    assert!(status.success());
    let value: serde_json::Value =
        serde_json::from_str(&read(&dir.path().join("zxy_q1.json"))).unwrap();
    // Z_1 = 2b: one monomial, coeff [2,1,0,1], single b atom
    let z = value["Z"].as_array().unwrap();
    assert_eq!(z.len(), 1);
    assert_eq!(z[0]["coeff"], serde_json::json!([2, 1, 0, 1]));
    assert_eq!(z[0]["atoms"][0]["field"], "b");
    // X_1 = {(0,0): 2B° + 2b, (1,1): 4}
    let x = value["X"].as_object().unwrap();
    assert_eq!(x.len(), 2);
    assert_eq!(x["0,0"].as_array().unwrap().len(), 2);
    assert_eq!(x["1,1"][0]["coeff"], serde_json::json!([4, 1, 0, 1]));
}

#[test]
fn effpot_exits_5_with_term_diff() {
    let dir = tempfile::tempdir().unwrap();
    let out = ltbx()
        .args(["effpot", "--q", "1", "--sign", "minus", "--out"])
        .arg(dir.path())
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(5), "divergence reports exit 5");
    let value: serde_json::Value =
        serde_json::from_str(&read(&dir.path().join("effpot_q1_minus.json"))).unwrap();
    assert_eq!(value["agrees"], serde_json::json!(false));
    assert!(!value["difference_printed_minus_truth"]
        .as_array()
        .unwrap()
        .is_empty());
    assert_eq!(value["field_free"]["matches"], serde_json::json!(true));
}

#[test]
fn toeplitz_disk_first_row() {
    // --disk R=1 --B0 2: x₀ = 1, λ₀ = 1 − e⁻¹
    let dir = tempfile::tempdir().unwrap();
    let status = ltbx()
        .args([
            "toeplitz", "--disk", "R=1", "--B0", "2", "--n-max", "10", "--out",
        ])
        .arg(dir.path())
        .status()
        .unwrap();
    assert!(status.success());
    let eigen = read(&dir.path().join("toeplitz_eigen.csv"));
    assert!(eigen.starts_with("# ltbx toeplitz config_hash="));
    // disk weights label both decay reference constants in the header
    assert!(eigen.contains("# s_n oracle limit B0*R^2/2"), "{}", eigen);
    let mut lines = eigen.lines().skip_while(|l| l.starts_with('#'));
    assert!(lines.next().unwrap().starts_with("n,lambda,log10_lambda"));
    let first_data = lines.next().unwrap();
    let cells: Vec<&str> = first_data.split(',').collect();
    assert_eq!(cells[0], "0");
    let lambda0: f64 = cells[1].parse().unwrap();
    assert!(
        (lambda0 - (1.0 - (-1.0f64).exp())).abs() < 1e-12,
        "λ₀ = {}",
        lambda0
    );
    let counting = read(&dir.path().join("toeplitz_counting.csv"));
    assert!(counting
        .lines()
        .find(|l| !l.starts_with('#'))
        .unwrap()
        .starts_with("lambda,count,xi"));
}

#[test]
fn config_error_exit_codes() {
    // q = 0 for effpot: config error (exit 2)
    let out = ltbx()
        .args(["--config", r#"{"command": "effpot", "q": 0}"#])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    // unknown key: exit 2
    let out = ltbx()
        .args(["--config", r#"{"command": "zxy", "bogus": 1}"#])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    // smoothness too small for the requested q: exit 2, checked early
    let cfg = r#"{"command": "split", "q": 2,
                  "field": {"B0": 1.0, "b": [{"center": [0,0], "c": 0.1, "R": 1.0, "k": 4}]}}"#;
    let out = ltbx().args(["--config", cfg]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    let msg = String::from_utf8_lossy(&out.stderr);
    assert!(msg.contains("k >= 10"), "{}", msg);
}

#[test]
fn split_artifacts_and_determinism() {
    let cfg = r#"{
        "command": "split", "q": 0, "N": 10,
        "lambda_grid": {"from": 1e-2, "to": 1e-5, "per_decade": 1},
        "field": {"B0": 1.0, "V": [{"center": [0,0], "c": 0.02, "R": 2.0, "k": 6}]}
    }"#;
    let dir1 = tempfile::tempdir().unwrap();
    let dir2 = tempfile::tempdir().unwrap();
    for (dir, threads) in [(&dir1, "1"), (&dir2, "7")] {
        let status = ltbx()
            .args(["--config", cfg, "--threads", threads, "--out"])
            .arg(dir.path())
            .status()
            .unwrap();
        assert!(status.success());
    }
    // byte-identical artifacts regardless of the threads annotation
    for name in ["split_q0_counts.csv", "split_q0_eigen.csv", "split_q0.json"] {
        let a = read(&dir1.path().join(name));
        let b = read(&dir2.path().join(name));
        assert_eq!(a, b, "{} differs between runs", name);
    }
    // no temp droppings
    for entry in std::fs::read_dir(dir1.path()).unwrap() {
        let name = entry.unwrap().file_name().into_string().unwrap();
        assert!(!name.ends_with(".tmp~"), "leftover {}", name);
    }
    // counts CSV: oracle and ritz pipelines both present, N₋ ≡ 0 for V ≥ 0
    let counts = read(&dir1.path().join("split_q0_counts.csv"));
    for line in counts.lines().skip(2) {
        let cells: Vec<&str> = line.split(',').collect();
        assert_eq!(cells[3], "0", "N₋ nonzero: {}", line);
        assert_eq!(cells[2], cells[4], "pipelines disagree: {}", line);
    }
}

#[test]
fn split_dump_matrices_roundtrip() {
    let cfg = r#"{
        "command": "split", "q": 1, "N": 6,
        "lambda_grid": {"values": [1e-3]},
        "field": {"B0": 1.0, "b": [{"center": [0,0], "c": 0.1, "R": 1.0, "k": 10}]}
    }"#;
    let dir = tempfile::tempdir().unwrap();
    let status = ltbx()
        .args(["--config", cfg, "--out"])
        .arg(dir.path())
        .args(["split", "--dump-matrices"])
        .status()
        .unwrap();
    assert!(status.success());
    let m =
        ltbx_cli::output::ltbx_binary::read_matrix(&dir.path().join("split_q1_A.ltbx")).unwrap();
    assert_eq!(m.n, 6);
    // header magic spot check
    let bytes = std::fs::read(dir.path().join("split_q1_Bm.ltbx")).unwrap();
    assert_eq!(&bytes[0..4], b"LTBX");
    let csv = read(&dir.path().join("split_q1_A.csv"));
    assert!(csv.lines().nth(1).unwrap().starts_with("row,col,re,im"));
}

#[test]
fn verify_passes() {
    let out = ltbx().arg("verify").output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert_eq!(stdout.matches("PASS").count(), 8, "{}", stdout);
}
