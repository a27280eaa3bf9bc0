//! End-to-end command tests: pipelines, determinism, exit codes.

use std::path::Path;
use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_nlheat"))
}

fn read(dir: &Path, name: &str) -> String {
    std::fs::read_to_string(dir.join(name)).unwrap_or_else(|e| panic!("{name}: {e}"))
}

#[test]
fn solve_track_compare_pipeline() {
    let tmp = tempfile::tempdir().unwrap();
    let run = tmp.path().join("run");
    let status = bin()
        .args(["solve", "--ic", "cosine", "--alpha", "2", "--beta", "0", "--n", "32"])
        .args(["--t-end", "0.42", "--set", "solver.snapshot_dt=0.02"])
        .args(["--set", "solver.convolution=direct"])
        .arg("--out")
        .arg(&run)
        .status()
        .unwrap();
    assert!(status.success());
    let manifest = read(&run, "manifest.txt");
    assert!(manifest.contains("termination = reached_t_end"), "{manifest}");
    assert!(manifest.contains("solver.N = 32"));

    let track = tmp.path().join("track");
    let status = bin().args(["track", "--run"]).arg(&run).arg("--out").arg(&track).status().unwrap();
    assert!(status.success());
    let csv = read(&track, "track.csv");
    assert!(csv.lines().count() > 10);
    assert!(csv.starts_with("t,y_star,mu,"));

    let cmp = tmp.path().join("cmp");
    let status = bin()
        .args(["compare", "--track-csv"])
        .arg(track.join("track.csv"))
        .args(["--regimes", "sigma-small-time", "--set", "ic.alpha=2", "--out"])
        .arg(&cmp)
        .status()
        .unwrap();
    assert!(status.success());
    let manifest = read(&cmp, "manifest.txt");
    assert!(manifest.contains("max_gap_sigma-small-time"), "{manifest}");
    // inside the small-time validity window the two columns agree closely
    let gap: f64 = manifest
        .lines()
        .find(|l| l.starts_with("max_gap_sigma-small-time"))
        .and_then(|l| l.split('=').nth(1))
        .unwrap()
        .trim()
        .parse()
        .unwrap();
    assert!(gap < 0.15, "max gap {gap}");
}

#[test]
fn solve_reports_blowup_in_manifest() {
    let tmp = tempfile::tempdir().unwrap();
    let run = tmp.path().join("run");
    let status = bin()
        .args(["solve", "--ic", "cosine", "--alpha", "0.5", "--beta", "0", "--n", "96"])
        .args(["--t-end", "30"])
        .arg("--out")
        .arg(&run)
        .status()
        .unwrap();
    assert!(status.success());
    let manifest = read(&run, "manifest.txt");
    assert!(manifest.contains("termination = blowup"));
    let t_c: f64 = manifest
        .lines()
        .find(|l| l.starts_with("t_c ="))
        .and_then(|l| l.split('=').nth(1))
        .unwrap()
        .trim()
        .parse()
        .unwrap();
    assert!((t_c - 15.530458826185942).abs() < 1e-3, "t_c = {t_c}");
}

#[test]
fn ode_finds_the_first_singularity() {
    let tmp = tempfile::tempdir().unwrap();
    let out = tmp.path().join("ode");
    let status = bin()
        .args(["ode", "--ic", "log", "--anchor", "50", "--path", "real-left"])
        .arg("--out")
        .arg(&out)
        .status()
        .unwrap();
    assert!(status.success());
    let sing = read(&out, "singularities.csv");
    assert!(
        sing.lines().any(|l| l.starts_with("5.695") || l.starts_with("5.6954")),
        "{sing}"
    );
    let manifest = read(&out, "manifest.txt");
    assert!(manifest.contains("local_c2"));
}

#[test]
fn identical_configs_give_identical_outputs() {
    let tmp = tempfile::tempdir().unwrap();
    let mk = |name: &str| {
        let dir = tmp.path().join(name);
        let status = bin()
            .args(["solve", "--ic", "cosine", "--alpha", "1", "--beta", "0", "--n", "24"])
            .args(["--t-end", "0.3", "--set", "solver.snapshot_dt=0.05"])
            .arg("--out")
            .arg(&dir)
            .status()
            .unwrap();
        assert!(status.success());
        dir
    };
    let a = mk("a");
    let b = mk("b");
    assert_eq!(read(&a, "coeffs.csv"), read(&b, "coeffs.csv"));
    assert_eq!(read(&a, "monitor.csv"), read(&b, "monitor.csv"));
}

#[test]
fn exit_codes() {
    // config error -> 1
    let tmp = tempfile::tempdir().unwrap();
    let status = bin()
        .args(["solve", "--set", "no.such.key=1", "--out"])
        .arg(tmp.path().join("x"))
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(1));

    // invalid initial data -> 1
    let status = bin()
        .args(["solve", "--ic", "flat", "--alpha", "1", "--set", "ic.eps=2", "--out"])
        .arg(tmp.path().join("y"))
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(1));

    // under-resolved solve -> 3 (tiny truncation forced onto a blow-up run
    // with refinement and the reciprocal switch disabled)
    let status = bin()
        .args(["solve", "--ic", "cosine", "--alpha", "20", "--beta", "0", "--n", "6"])
        .args(["--t-end", "0.2", "--set", "solver.switch_threshold=1e99"])
        .args(["--set", "solver.tail_stop_ratio=1e-6"])
        .arg("--out")
        .arg(tmp.path().join("z"))
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(3));
}

#[test]
fn sweep_runs_all_values() {
    let tmp = tempfile::tempdir().unwrap();
    let out = tmp.path().join("sweep");
    let status = bin()
        .args(["sweep", "--key", "ic.alpha", "--values", "1,2", "--jobs", "2"])
        .args(["--set", "solver.N=16", "--set", "solver.t_end=0.1"])
        .arg("--out")
        .arg(&out)
        .status()
        .unwrap();
    assert!(status.success());
    assert!(out.join("ic_alpha=1/manifest.txt").exists());
    assert!(out.join("ic_alpha=2/manifest.txt").exists());
}

#[test]
fn asym_csv_carries_the_estimate_tag() {
    let tmp = tempfile::tempdir().unwrap();
    let out = tmp.path().join("asym");
    let status = bin()
        .args(["asym", "--regime", "sigma-small-time", "--set", "ic.alpha=2"])
        .arg("--out")
        .arg(&out)
        .status()
        .unwrap();
    assert!(status.success());
    let csv = read(&out, "asym.csv");
    assert!(csv.starts_with("# estimate = sigma-small-time\n"));
    // value frozen from the closed form at t = 0.02
    assert!(csv.contains("4.0473649256452724e0"), "{csv}");
}
