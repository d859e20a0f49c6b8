use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn ridgeline(args: &[&str], envs: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_ridgeline"));
    cmd.args(args);
    for (k, v) in envs {
        cmd.env(k, v);
    }
    cmd.output().expect("binary runs")
}

fn write_tone(path: &Path, hz: f64, seconds: f64) {
    let fs = 20.0;
    let n = (seconds * fs) as usize;
    let body: String =
        (0..n).map(|i| format!("{}\n", (2.0 * std::f64::consts::PI * hz * i as f64 / fs).cos())).collect();
    fs::write(path, body).unwrap();
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn extract_happy_path() {
    let dir = tempfile::tempdir().unwrap();
    let sig = dir.path().join("sig.csv");
    let curve = dir.path().join("curve.csv");
    write_tone(&sig, 1.2, 60.0);
    let out = ridgeline(
        &[
            "extract",
            "--scheme",
            "II",
            "--alpha",
            "1",
            "--beta",
            "1",
            "--in",
            s(&sig),
            "--out",
            s(&curve),
            "--fs",
            "20",
        ],
        &[],
    );
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let text = fs::read_to_string(&curve).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("time_s,freq_hz,peak_index,amplitude"));
    let rows: Vec<Vec<f64>> = lines.map(|l| l.split(',').map(|x| x.parse().unwrap()).collect()).collect();
    assert_eq!(rows.len(), 1200);
    for r in &rows[100..1100] {
        assert!((r[1] - 1.2).abs() < 1e-3, "{r:?}");
        assert!((r[3] - 0.5).abs() < 1e-3, "{r:?}");
    }
    let report: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("curve.json")).unwrap()).unwrap();
    assert_eq!(report["scheme"], "II");
    assert_eq!(report["converged"], true);
    let manifest: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("curve.manifest.json")).unwrap()).unwrap();
    assert_eq!(manifest["command"], "extract");
    assert_eq!(manifest["outputs"]["curve.csv"].as_str().unwrap().len(), 64);
}

#[test]
fn unknown_flag_is_usage_error() {
    let out = ridgeline(&["extract", "--in", "x.csv", "--frobnicate"], &[]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("Usage:"), "{err}");
    assert!(out.stdout.is_empty());
}

#[test]
fn runtime_failure_exits_two() {
    let out = ridgeline(&["transform", "--in", "/does/not/exist.csv", "--fs", "20"], &[]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("exist.csv"));
}

#[test]
fn describe_lists_defaults() {
    let out = ridgeline(&["describe", "extract"], &[]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("II(1,1)"));
    let out = ridgeline(&["describe", "bench"], &[]);
    let text = String::from_utf8_lossy(&out.stdout).into_owned();
    for needle in ["0.5", "40 per noise level", "f0 = 1", "alpha = beta = 1", "dxi_g/25"] {
        assert!(text.contains(needle), "missing {needle}");
    }
    assert_eq!(ridgeline(&["describe", "everything"], &[]).status.code(), Some(1));
}

#[test]
fn transform_to_stdout_and_env_override() {
    let dir = tempfile::tempdir().unwrap();
    let sig = dir.path().join("sig.csv");
    write_tone(&sig, 1.0, 10.0);
    let out = ridgeline(
        &["transform", "--in", s(&sig), "--fmin", "0.5", "--fmax", "1.5"],
        &[("RIDGELINE_FS", "20"), ("RIDGELINE_DFREQ", "0.25")],
    );
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8(out.stdout).unwrap();
    // header plus bins at 0.5, 0.75, 1.0, 1.25, 1.5 Hz
    assert_eq!(text.lines().count(), 6);
    // a flag beats the environment
    let out = ridgeline(
        &["transform", "--in", s(&sig), "--fmin", "0.5", "--fmax", "1.5", "--dfreq", "0.5"],
        &[("RIDGELINE_FS", "20"), ("RIDGELINE_DFREQ", "0.25")],
    );
    assert_eq!(String::from_utf8(out.stdout).unwrap().lines().count(), 4);
}

#[test]
fn squeeze_writes_sidecar_and_leaves_input_alone() {
    let dir = tempfile::tempdir().unwrap();
    let sig = dir.path().join("sig.csv");
    let sq = dir.path().join("sq.csv");
    write_tone(&sig, 1.0, 30.0);
    let before = fs::read(&sig).unwrap();
    let out = ridgeline(&["squeeze", "--in", s(&sig), "--out", s(&sq), "--fs", "20", "--tfr", "wt"], &[]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let meta: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("sq.json")).unwrap()).unwrap();
    assert_eq!(meta["kind"], "swt");
    assert!(meta["dropped_fraction"].as_f64().unwrap() < 0.05);
    assert!(dir.path().join("sq.manifest.json").exists());
    assert_eq!(fs::read(&sig).unwrap(), before);
}

#[test]
fn bench_twice_gives_identical_checksums() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("bench.cfg.toml");
    fs::write(&cfg, "spec_version = 1\nduration_s = 200.0\nanalyze_s = 60.0\nsigmas = [0.2, 0.6]\nrealizations = 2\n")
        .unwrap();
    let mut sums = Vec::new();
    for name in ["a", "b"] {
        let out_dir = dir.path().join(name);
        let out = ridgeline(&["bench", "--config", s(&cfg), "--seed", "7", "--out", s(&out_dir)], &[]);
        assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
        let m: serde_json::Value =
            serde_json::from_str(&fs::read_to_string(out_dir.join("manifest.json")).unwrap()).unwrap();
        assert_eq!(m["config"]["master_seed"], 7);
        sums.push(m["outputs"].clone());
    }
    assert_eq!(sums[0], sums[1]);
    assert!(sums[0]["summary.csv"].is_string());
}

#[test]
fn bench_rejects_unknown_config_keys() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("bad.toml");
    fs::write(&cfg, "spec_version = 1\nrealisations = 3\n").unwrap();
    let out = ridgeline(&["bench", "--config", s(&cfg), "--out", s(&dir.path().join("o"))], &[]);
    assert_eq!(out.status.code(), Some(2));
}
