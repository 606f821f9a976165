//! End-to-end checks of the `braidsim` binary: output files, formats, and
//! exit codes.

use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_braidsim"))
}

#[test]
fn preset_writes_csv() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("fig6.csv");
    let status = bin()
        .args(["fig6", "--out"])
        .arg(&out)
        .status()
        .unwrap();
    assert!(status.success());
    let text = std::fs::read_to_string(&out).unwrap();
    assert!(text.starts_with("word,P1,P2,P3,P4\n"));
    assert_eq!(text.lines().count(), 3);
    assert!(!text.contains('\r'));
}

#[test]
fn json_output_parses() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("spec.json");
    let status = bin()
        .args(["spectrum", "--format", "json", "--out"])
        .arg(&out)
        .status()
        .unwrap();
    assert!(status.success());
    let v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(v["columns"][0], "theta");
    assert_eq!(v["rows"].as_array().unwrap().len(), 81);
}

#[test]
fn identical_runs_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a.csv"), dir.path().join("b.csv"));
    for out in [&a, &b] {
        assert!(bin().args(["fig2a", "--out"]).arg(out).status().unwrap().success());
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
}

#[test]
fn config_file_run() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.toml");
    std::fs::write(
        &cfg,
        r#"
scenario = "kscan"
t1 = 9.42477796076938

[scan]
parameter = "dt"
from = 3.2
to = 6.4
samples = 5
"#,
    )
    .unwrap();
    let out = dir.path().join("k.csv");
    let status = bin()
        .args(["kscan", "--config"])
        .arg(&cfg)
        .arg("--out")
        .arg(&out)
        .status()
        .unwrap();
    assert!(status.success());
    let text = std::fs::read_to_string(&out).unwrap();
    assert!(text.starts_with("dt,K\n"));
    // Δt beyond the pulse duration: the 54 plateau
    for line in text.lines().skip(1) {
        let k: f64 = line.split(',').nth(1).unwrap().parse().unwrap();
        assert!((k - 54.0).abs() < 1e-6, "{line}");
    }
}

#[test]
fn invalid_config_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("bad.toml");
    std::fs::write(&cfg, "scenario = \"nope\"\n").unwrap();
    let status = bin().args(["nope", "--config"]).arg(&cfg).status().unwrap();
    assert_eq!(status.code(), Some(2));
}

#[test]
fn malformed_toml_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("bad.toml");
    std::fs::write(&cfg, "scenario = [unclosed\n").unwrap();
    let status = bin()
        .args(["evolve", "--config"])
        .arg(&cfg)
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(2));
}

#[test]
fn unwritable_output_exits_4() {
    let status = bin()
        .args(["fig2a", "--out", "/nonexistent-dir/x.csv"])
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(4));
}
