//! End-to-end tests of the binary: exit codes, output files, round trips.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn hs() -> Command {
    Command::new(env!("CARGO_BIN_EXE_hs"))
}

fn repo_scenario(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../scenarios")
        .join(name)
}

fn run_ok(cmd: &mut Command) -> Output {
    let out = cmd.output().expect("binary runs");
    assert!(
        out.status.success(),
        "stdout: {}\nstderr: {}",
        String::from_utf8_lossy(&out.stdout),
        String::from_utf8_lossy(&out.stderr)
    );
    out
}

#[test]
fn run_writes_manifest_fields_masks_and_graphs() {
    let dir = tempdir("run-flat");
    run_ok(
        hs().args(["run", "--scenario"])
            .arg(repo_scenario("flat.json"))
            .args(["--times", "0:1:0.25", "--dx", "0.03125"])
            .args(["--R", "1", "--L", "2.5", "--Htop", "1.25"])
            .arg("--out")
            .arg(&dir),
    );

    let manifest_text = fs::read_to_string(dir.join("manifest.json")).unwrap();
    let manifest: serde_json::Value = serde_json::from_str(&manifest_text).unwrap();
    let entries = manifest["entries"].as_array().unwrap();
    assert_eq!(entries.len(), 5);
    let tol = manifest["tol"].as_f64().unwrap();
    for e in entries {
        // every listed file exists
        for key in ["field_file", "mask_file"] {
            let name = e[key].as_str().unwrap();
            assert!(dir.join(name).exists(), "{name} missing");
        }
        let graph = e["graph_file"].as_str().unwrap();
        assert!(dir.join(graph).exists());
        // converged below tolerance (scaled by the bottom value)
        let t = e["t"].as_f64().unwrap();
        let scale = (t * (t / 2.0 + 2.5)).max(1.0);
        assert!(e["residual"]["primal_inf"].as_f64().unwrap() <= tol * scale);
        assert!(e["residual"]["comp_inf"].as_f64().unwrap() <= tol * scale);
    }

    // field dump round-trips byte-identically
    let raw = fs::read(dir.join("u_t4.f64")).unwrap();
    let field = hs_core::ScalarField::read_dump(&mut &raw[..]).unwrap();
    let mut again = Vec::new();
    field.write_dump(&mut again).unwrap();
    assert_eq!(raw, again);

    // re-serializing the manifest reproduces the file
    let back = hs_core::manifest::RunManifest::from_json(&manifest_text).unwrap();
    assert_eq!(back.to_json().unwrap(), manifest_text);
}

#[test]
fn missing_scenario_file_exits_one() {
    let out = hs()
        .args(["run", "--scenario", "/nonexistent.json"])
        .args(["--times", "0.5", "--dx", "0.0625"])
        .args([
            "--R",
            "1",
            "--L",
            "2",
            "--Htop",
            "1",
            "--out",
            "/tmp/hs-nope",
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn too_deep_time_range_exits_one_before_solving() {
    let dir = tempdir("run-deep");
    let out = hs()
        .args(["run", "--scenario"])
        .arg(repo_scenario("flat.json"))
        .args(["--times", "0:3:0.5", "--dx", "0.0625"])
        .args(["--R", "1", "--L", "2", "--Htop", "1"])
        .arg("--out")
        .arg(&dir)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(
        err.contains("too shallow") || err.contains("too low"),
        "stderr: {err}"
    );
    assert!(
        !dir.join("manifest.json").exists(),
        "must fail before writing"
    );
}

#[test]
fn nonconvergence_exits_two() {
    let dir = tempdir("run-noconv");
    let out = hs()
        .args(["run", "--scenario"])
        .arg(repo_scenario("flat.json"))
        .args(["--times", "1", "--dx", "0.03125"])
        .args(["--R", "1", "--L", "2.5", "--Htop", "1.25"])
        .args(["--max-iters", "2"])
        .arg("--out")
        .arg(&dir)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn bubble_run_notes_missing_graphs() {
    let dir = tempdir("run-bubble");
    let out = run_ok(
        hs().args(["run", "--scenario"])
            .arg(repo_scenario("bubble.json"))
            .args(["--times", "0,0.25", "--dx", "0.0625"])
            .args(["--R", "1", "--L", "2.5", "--Htop", "2.25"])
            .arg("--out")
            .arg(&dir),
    );
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("not a subgraph"), "stderr: {err}");
    let manifest: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.join("manifest.json")).unwrap()).unwrap();
    assert!(manifest["entries"][0]["graph_file"].is_null());
}

#[test]
fn check_oracle_suite_passes() {
    let out = run_ok(hs().args(["check", "--suite", "oracle"]));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("[PASS] oracle-equivalence"), "stdout: {text}");
}

#[test]
fn unknown_suite_and_curve_exit_one() {
    let out = hs().args(["check", "--suite", "bogus"]).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    let out = hs().args(["ref", "--curve", "bogus"]).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn ref_v0_emits_expected_rows() {
    let out = run_ok(hs().args([
        "ref", "--curve", "v0", "--t", "1", "--min", "-4", "--max", "2", "--step", "0.25",
    ]));
    let text = String::from_utf8_lossy(&out.stdout);
    let rows: Vec<&str> = text.trim().lines().collect();
    assert_eq!(rows.len(), 26); // header + 25 samples
    assert_eq!(rows[0], "x,v0");
    let at_zero = rows.iter().find(|r| r.starts_with("0,")).unwrap();
    assert_eq!(*at_zero, "0,0.5");
}

#[test]
fn ref_cone_exponent_is_strictly_decreasing() {
    let out = run_ok(hs().args([
        "ref",
        "--curve",
        "cone-exponent",
        "--min",
        "0.1",
        "--max",
        "6.2",
        "--step",
        "0.05",
    ]));
    let text = String::from_utf8_lossy(&out.stdout);
    let lambdas: Vec<f64> = text
        .trim()
        .lines()
        .skip(1)
        .map(|r| r.split(',').nth(1).unwrap().parse().unwrap())
        .collect();
    assert!(lambdas.windows(2).all(|w| w[1] < w[0]));
}

#[test]
fn ref_quadratic_harmonic_vanishes_on_the_critical_cone() {
    let out = run_ok(hs().args([
        "ref",
        "--curve",
        "quadratic-harmonic",
        "--d",
        "1",
        "--min",
        "-1",
        "--max",
        "1",
        "--step",
        "0.5",
    ]));
    let text = String::from_utf8_lossy(&out.stdout);
    // at |x| = |z| the value is zero for d = 1
    let row = text
        .trim()
        .lines()
        .find(|r| r.starts_with("0.5,-0.5,"))
        .unwrap();
    assert_eq!(row, "0.5,-0.5,0");
}

fn tempdir(tag: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("hs-cli-test-{tag}-{}", std::process::id()));
    let _ = fs::remove_dir_all(&dir);
    fs::create_dir_all(&dir).unwrap();
    dir
}
