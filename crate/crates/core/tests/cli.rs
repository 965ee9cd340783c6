use std::path::Path;
use std::process::{Command, Output};

use susyzeta::cli::files::{parse_zeros_csv, read_cache, SpectrumDocument, CACHE_FILE};
use susyzeta::cli::manifest::{RunManifest, RunStatus};
use susyzeta::cli::{scan_settings, AccelArg, SeriesArgs, CACHE_DIR_ENV};
use susyzeta::ScanConfig;

const FIRST_ZERO: f64 = 14.134_725_141_734_694;

fn bin() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_susyzeta"));
    cmd.env_remove(CACHE_DIR_ENV);
    cmd
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn out_dir_args(dir: &Path) -> Vec<String> {
    vec!["--out-dir".into(), dir.display().to_string()]
}

fn run_in(dir: &Path, args: &[&str]) -> Output {
    let mut all = out_dir_args(dir);
    all.extend(args.iter().map(|s| s.to_string()));
    bin().args(&all).output().unwrap()
}

#[test]
fn zeta_prints_known_values() {
    let o = run(&["zeta", "--sigma", "0", "--lambda", "0"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "-0.5");

    let o = run(&["zeta", "--sigma", "2", "--lambda", "0"]);
    assert_eq!(stdout(&o).trim(), "1.6449340668");

    let o = run(&["--precision", "4", "zeta", "--sigma", "0.5", "--lambda", "3"]);
    assert_eq!(stdout(&o).trim(), "0.5327 - 0.0789i");

    let o = run(&["zeta", "--sigma", "-2", "--lambda", "0"]);
    assert_eq!(stdout(&o).trim(), "0");
}

#[test]
fn zeta_pole_is_a_domain_error() {
    let o = run(&["zeta", "--sigma", "1", "--lambda", "0"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("pole at s=1"));
    assert_eq!(stderr(&o).lines().count(), 1);
    assert!(stdout(&o).is_empty());
}

#[test]
fn bad_arguments_exit_two() {
    assert_eq!(run(&["zeta", "--sigma", "x", "--lambda", "0"]).status.code(), Some(2));
    let dir = tempfile::tempdir().unwrap();
    let o = run_in(dir.path(), &["scan", "--min", "5", "--max", "1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(!dir.path().join("zeros.csv").exists());
}

#[test]
fn scan_writes_csv_manifest_and_cache() {
    let dir = tempfile::tempdir().unwrap();
    let o = run_in(dir.path(), &["scan", "--min", "10", "--max", "30"]);
    assert!(o.status.success(), "{}", stderr(&o));

    let body = std::fs::read(dir.path().join("zeros.csv")).unwrap();
    let records = parse_zeros_csv(&body).unwrap();
    assert_eq!(records.len(), 3);
    assert!((records[0].lambda_star - FIRST_ZERO).abs() < 1e-6);

    let m = RunManifest::read(&dir.path().join("zeros.manifest.json")).unwrap();
    assert_eq!(m.command, "scan");
    assert_eq!(m.status, RunStatus::Ok);
    assert!(m.hash_is_consistent());
    assert_eq!(m.outputs["zeros.csv"], susyzeta::cli::manifest::sha256_hex(&body));
    assert!(chrono::DateTime::parse_from_rfc3339(&m.timestamp).is_ok());

    // The stored settings parse back into the configuration that was run.
    let s = &m.settings;
    let cfg = ScanConfig {
        lambda_min: s.get_f64("lambda_min").unwrap(),
        lambda_max: s.get_f64("lambda_max").unwrap(),
        coarse_step: s.get_f64("coarse_step").unwrap(),
        detect_threshold: s.get_f64("detect_threshold").unwrap(),
        refine_tol: s.get_f64("refine_tol").unwrap(),
        max_refine_iters: s.get_u64("max_refine_iters").unwrap() as usize,
        accept_energy: s.get_f64("accept_energy").unwrap(),
    };
    let series = SeriesArgs {
        target_error: s.get_f64("target_error").unwrap(),
        max_terms: s.get_u64("max_terms").unwrap() as usize,
        acceleration: AccelArg::Cvz,
    };
    assert_eq!(scan_settings(&cfg, &series).hash("scan"), m.config_hash);

    let cache_dir = dir.path().join("cache");
    assert_eq!(read_cache(&cache_dir, &m.config_hash).unwrap(), records);

    // A rerun adds nothing to the cache and reproduces the body exactly.
    let o = run_in(dir.path(), &["scan", "--max", "30", "--min", "10"]);
    assert!(stdout(&o).contains("0 new in cache"));
    assert_eq!(std::fs::read(dir.path().join("zeros.csv")).unwrap(), body);
    let m2 = RunManifest::read(&dir.path().join("zeros.manifest.json")).unwrap();
    assert_eq!(m2.config_hash, m.config_hash);
    assert_eq!(read_cache(&cache_dir, &m.config_hash).unwrap().len(), 3);
}

#[test]
fn empty_scan_is_header_only() {
    let dir = tempfile::tempdir().unwrap();
    let o = run_in(dir.path(), &["scan", "--min", "2", "--max", "10"]);
    assert!(o.status.success());
    let text = std::fs::read_to_string(dir.path().join("zeros.csv")).unwrap();
    assert_eq!(
        text,
        "index,lambda_star,energy_at_min,bracket_lo,bracket_hi,iterations,method\n"
    );
}

#[test]
fn cache_dir_resolution() {
    let out = tempfile::tempdir().unwrap();
    let env_dir = tempfile::tempdir().unwrap();
    let flag_dir = tempfile::tempdir().unwrap();
    let args = |extra: &[&str]| {
        let mut a = out_dir_args(out.path());
        a.extend(extra.iter().map(|s| s.to_string()));
        a.extend(["scan", "--min", "13", "--max", "15"].map(String::from));
        a
    };

    let o = bin()
        .args(args(&[]))
        .env(CACHE_DIR_ENV, env_dir.path())
        .output()
        .unwrap();
    assert!(o.status.success());
    assert!(env_dir.path().join(CACHE_FILE).exists());

    let flag = flag_dir.path().display().to_string();
    let o = bin()
        .args(args(&["--cache-dir", &flag]))
        .env(CACHE_DIR_ENV, env_dir.path())
        .output()
        .unwrap();
    assert!(o.status.success());
    assert!(flag_dir.path().join(CACHE_FILE).exists());
    assert!(!out.path().join("cache").exists());
}

#[test]
fn failed_refinement_flushes_a_failed_manifest() {
    let dir = tempfile::tempdir().unwrap();
    let o = run_in(
        dir.path(),
        &[
            "scan",
            "--min",
            "10",
            "--max",
            "30",
            "--max-iters",
            "2",
            "--output",
            "short.csv",
        ],
    );
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("scan stopped"));
    let m = RunManifest::read(&dir.path().join("short.manifest.json")).unwrap();
    assert_eq!(m.status, RunStatus::Failed);
    assert!(m.error.as_deref().unwrap().contains("stalled"));
    let body = std::fs::read(dir.path().join("short.csv")).unwrap();
    assert!(parse_zeros_csv(&body).is_ok());
    assert!(!dir.path().join("cache").exists());
}

fn spectrum(dir: &Path, lambda: f64, n_max: usize) -> SpectrumDocument {
    let l = lambda.to_string();
    let n = n_max.to_string();
    let o = run_in(dir, &["spectrum", "--omega", "1.5", "--lambda-star", &l, "--n-max", &n]);
    assert!(o.status.success(), "{}", stderr(&o));
    let m = RunManifest::read(&dir.join("spectrum.manifest.json")).unwrap();
    assert!(m.hash_is_consistent());
    assert_eq!(m.settings.get_f64("lambda_star"), Some(lambda));
    serde_json::from_slice(&std::fs::read(dir.join("spectrum.json")).unwrap()).unwrap()
}

#[test]
fn spectrum_at_a_zero_and_away_from_it() {
    let dir = tempfile::tempdir().unwrap();
    let doc = spectrum(dir.path(), FIRST_ZERO, 8);
    assert_eq!(doc.levels.len(), 9);
    assert!(doc.ground_energy < 1e-9 && doc.lambda_star_is_zero);
    assert_eq!(doc.levels[0].energy, doc.ground_energy);
    assert!(doc.diagnostics.iter().all(|d| d.within_tolerance));

    for pair in doc.levels.windows(2) {
        let (prev, l) = (&pair[0], &pair[1]);
        let want = (prev.c_re * l.energy, prev.c_im * l.energy);
        assert!((l.c_tilde_re - want.0).abs() <= 1e-12 * want.0.abs().max(1.0));
        assert!((l.c_tilde_im - want.1).abs() <= 1e-12 * want.1.abs().max(1.0));
        assert!(l.energy >= 0.0);
        assert!((l.psi_rho - prev.psi_rho - 1.5).abs() < 1e-12);
    }

    let doc = spectrum(dir.path(), 10.0, 2);
    assert!(doc.ground_energy > 0.01 && !doc.lambda_star_is_zero);
}

#[test]
fn spectrum_json_keys() {
    let dir = tempfile::tempdir().unwrap();
    spectrum(dir.path(), 3.0, 1);
    let v: serde_json::Value =
        serde_json::from_slice(&std::fs::read(dir.path().join("spectrum.json")).unwrap()).unwrap();
    for key in ["omega", "lambda_star", "levels"] {
        assert!(v.get(key).is_some(), "{key}");
    }
    let level = &v["levels"][1];
    for key in [
        "n",
        "C_re",
        "C_im",
        "Ctilde_re",
        "Ctilde_im",
        "E",
        "psi_rho",
        "psi_tilde_rho",
    ] {
        assert!(level.get(key).is_some(), "{key}");
    }
}

#[test]
fn verify_suites() {
    let dir = tempfile::tempdir().unwrap();
    let o = run_in(dir.path(), &["verify", "--suite", "algebra", "--seed", "42"]);
    assert!(o.status.success(), "{}", stdout(&o));

    let o = run_in(dir.path(), &["verify", "--suite", "selfadjoint"]);
    assert!(o.status.success());
    let line = stdout(&o)
        .lines()
        .find(|l| l.contains("selfadjoint.defect_at_sigma_half"))
        .unwrap()
        .to_string();
    assert!(line.starts_with("PASS"));

    let m = RunManifest::read(&dir.path().join("verify_selfadjoint.manifest.json")).unwrap();
    assert_eq!(m.seed, Some(42));
    assert_eq!(m.settings.get_u64("seed"), Some(42));
}

#[test]
fn verify_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let a = run_in(dir.path(), &["--seed", "7", "verify", "--suite", "all"]);
    let report = std::fs::read(dir.path().join("verify_all.txt")).unwrap();
    assert_eq!(report, a.stdout);
    let b = run_in(dir.path(), &["verify", "--suite", "all", "--seed", "7"]);
    assert!(a.status.success() && b.status.success());
    assert_eq!(a.stdout, b.stdout);
    let c = run_in(dir.path(), &["verify", "--suite", "all", "--seed", "8"]);
    assert_ne!(a.stdout, c.stdout);
}

#[test]
fn unknown_suite_is_rejected() {
    let o = run(&["verify", "--suite", "everything"]);
    assert_eq!(o.status.code(), Some(2));
}
