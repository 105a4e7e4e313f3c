//! End-to-end checks of the `adsim` binary: artifact layout, exit codes,
//! and byte-identical reruns.

use std::fs;
use std::path::Path;
use std::process::Command;

fn adsim() -> Command {
    Command::new(env!("CARGO_BIN_EXE_adsim"))
}

fn read(dir: &Path, name: &str) -> Vec<u8> {
    fs::read(dir.join(name)).unwrap_or_else(|e| panic!("{name}: {e}"))
}

#[test]
fn run_preset_writes_all_artifacts() {
    let dir = tempfile::tempdir().unwrap();
    let out = adsim()
        .args(["run", "--preset", "ppn-with-access", "--out"])
        .arg(dir.path())
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains("verdict: DefenderWins"), "stdout: {stdout}");

    for name in [
        "trace.csv",
        "outcome.json",
        "trajectories.svg",
        "time_to_go.svg",
        "accelerations.svg",
        "errors.svg",
        "meta.txt",
    ] {
        assert!(!read(dir.path(), name).is_empty(), "{name} missing or empty");
    }
    let header = String::from_utf8(read(dir.path(), "trace.csv")).unwrap();
    assert!(header.starts_with("t,x_E,y_E,"), "unexpected CSV header");
}

#[test]
fn run_json_format_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let out = adsim()
        .args(["run", "--preset", "apn-with-access", "--format", "json", "--out"])
        .arg(dir.path())
        .output()
        .unwrap();
    assert!(out.status.success());
    let rows: serde_json::Value =
        serde_json::from_slice(&read(dir.path(), "trace.json")).unwrap();
    assert!(rows.as_array().unwrap().len() > 100);
    let outcome: serde_json::Value =
        serde_json::from_slice(&read(dir.path(), "outcome.json")).unwrap();
    assert_eq!(outcome["verdict"], "DefenderWins");
}

#[test]
fn reruns_are_byte_identical() {
    let once = || {
        let dir = tempfile::tempdir().unwrap();
        let out = adsim()
            .args(["run", "--preset", "rtpn-with-access", "--out"])
            .arg(dir.path())
            .output()
            .unwrap();
        assert!(out.status.success());
        (
            read(dir.path(), "trace.csv"),
            read(dir.path(), "outcome.json"),
            read(dir.path(), "trajectories.svg"),
        )
    };
    assert_eq!(once(), once());
}

#[test]
fn mc_from_spec_file_writes_report() {
    let dir = tempfile::tempdir().unwrap();

    // Small custom batch exercising the spec-file input path. The library
    // is the source of truth for the JSON schema.
    let spec = serde_json::json!({
        "n_runs": 25,
        "seed": 99,
        "params": [
            { "param": "r_de_m", "lo": 200.0, "hi": 2000.0 },
            { "param": "tau_s", "lo": 3.0, "hi": 6.0 }
        ],
        "base": serde_json::to_value(adsim_lib_preset()).unwrap()
    });
    let spec_path = dir.path().join("spec.json");
    fs::write(&spec_path, serde_json::to_string_pretty(&spec).unwrap()).unwrap();

    let out = adsim()
        .arg("mc")
        .arg(&spec_path)
        .args(["--jobs", "1", "--out"])
        .arg(dir.path())
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let report: serde_json::Value =
        serde_json::from_slice(&read(dir.path(), "report.json")).unwrap();
    assert_eq!(report["n_runs"], 25);
    let runs = String::from_utf8(read(dir.path(), "runs.csv")).unwrap();
    assert_eq!(runs.lines().count(), 26, "header plus one row per run");
    assert!(!read(dir.path(), "scatter.svg").is_empty());
}

fn adsim_lib_preset() -> adsim::experiments::ScenarioConfig {
    let mut cfg = adsim::experiments::preset("ppn-with-access").unwrap();
    cfg.sim.record_stride = usize::MAX;
    cfg
}

#[test]
fn validate_reports_errors_with_usage_exit() {
    let dir = tempfile::tempdir().unwrap();
    let mut cfg = adsim_lib_preset();
    cfg.scenario.v_p = -1.0;
    let path = dir.path().join("bad.json");
    fs::write(&path, serde_json::to_string(&cfg).unwrap()).unwrap();

    let out = adsim().arg("validate").arg(&path).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains("error"), "stdout: {stdout}");

    // A clean preset validates successfully.
    let ok = adsim()
        .args(["validate", "--preset", "mc1-base-like"]) // unknown name
        .output()
        .unwrap();
    assert_eq!(ok.status.code(), Some(2), "unknown preset is a usage error");
    let ok = adsim()
        .args(["validate", "--preset", "apn-without-access"])
        .output()
        .unwrap();
    assert!(ok.status.success());
}

#[test]
fn usage_errors_exit_2() {
    // Neither config nor preset.
    let out = adsim().arg("run").output().unwrap();
    assert_eq!(out.status.code(), Some(2));

    // Both config and preset.
    let out = adsim()
        .args(["run", "nonexistent.json", "--preset", "ppn-with-access"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));

    // Unreadable config path.
    let out = adsim().args(["run", "no-such-file.json"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}
