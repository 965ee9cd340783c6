//! The `susyzeta` command line: argument definitions and command runners.
//!
//! Exit codes: 0 on success, 1 when a check or refinement fails, 2 for
//! domain and input errors.

pub mod files;
pub mod format;
pub mod manifest;
pub mod suites;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::algebra::Omega;
use crate::error::Error;
use crate::model::{build_spectrum, isospectral_report, ModelConfig, ISOSPECTRAL_TOL};
use crate::zeros::{scan_partial, ScanConfig};
use crate::zeta::{zeta, Acceleration, ComplexPoint, SeriesConfig};
use files::{append_to_cache, zeros_csv, SpectrumDocument};
use manifest::{RunManifest, Settings};
use suites::{run_suite, Suite};

pub const CACHE_DIR_ENV: &str = "SUSYZETA_CACHE_DIR";

#[derive(Debug, Parser)]
#[command(
    name = "susyzeta",
    version,
    about = "Zeta-function SUSY model: evaluation, zeros, spectra and checks"
)]
pub struct Cli {
    /// Decimal places for printed values.
    #[arg(long, global = true, default_value_t = 10)]
    pub precision: usize,

    /// Seed for the randomized verification suites.
    #[arg(long, global = true, default_value_t = 42)]
    pub seed: u64,

    /// Directory for CSV, JSON, report and manifest files.
    #[arg(long, global = true, default_value = ".")]
    pub out_dir: PathBuf,

    /// Directory holding the zero cache. Defaults to `<out-dir>/cache`.
    #[arg(long, global = true, env = CACHE_DIR_ENV)]
    pub cache_dir: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate zeta(sigma + i lambda).
    Zeta {
        #[arg(long, allow_hyphen_values = true)]
        sigma: f64,
        #[arg(long, allow_hyphen_values = true)]
        lambda: f64,
        #[command(flatten)]
        series: SeriesArgs,
    },
    /// Locate critical-line zeros as minima of the ground energy.
    Scan {
        #[command(flatten)]
        scan: ScanArgs,
        #[command(flatten)]
        series: SeriesArgs,
    },
    /// Build the eigenvalue tower for a given lambda*.
    Spectrum {
        #[arg(long, allow_hyphen_values = true)]
        omega: f64,
        #[arg(long, allow_hyphen_values = true)]
        lambda_star: f64,
        #[arg(long, default_value_t = 8)]
        n_max: usize,
        #[command(flatten)]
        series: SeriesArgs,
    },
    /// Run the seeded invariant suites.
    Verify {
        #[arg(long, default_value = "all")]
        suite: Suite,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum AccelArg {
    Cvz,
    Euler,
    Direct,
}

impl From<AccelArg> for Acceleration {
    fn from(a: AccelArg) -> Self {
        match a {
            AccelArg::Cvz => Acceleration::CvzAlternating,
            AccelArg::Euler => Acceleration::EulerTransform,
            AccelArg::Direct => Acceleration::DirectPartialSums,
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct SeriesArgs {
    /// Absolute error target for the eta series.
    #[arg(long, default_value_t = 1e-13)]
    pub target_error: f64,
    #[arg(long, default_value_t = 512)]
    pub max_terms: usize,
    #[arg(long, value_enum, default_value_t = AccelArg::Cvz)]
    pub acceleration: AccelArg,
}

impl SeriesArgs {
    fn config(&self) -> crate::error::Result<SeriesConfig> {
        SeriesConfig::new(self.target_error, self.max_terms, self.acceleration.into())
    }

    fn settings(&self, s: Settings) -> Settings {
        let accel = self.acceleration.to_possible_value().expect("no skipped variants");
        s.float("target_error", self.target_error)
            .int("max_terms", self.max_terms as u64)
            .text("acceleration", accel.get_name())
    }
}

#[derive(Debug, Clone, Args)]
pub struct ScanArgs {
    #[arg(long = "min", allow_hyphen_values = true)]
    pub lambda_min: f64,
    #[arg(long = "max", allow_hyphen_values = true)]
    pub lambda_max: f64,
    #[arg(long, default_value_t = ScanConfig::default().coarse_step)]
    pub step: f64,
    /// Grid minima above this energy are not refined.
    #[arg(long, default_value_t = ScanConfig::default().detect_threshold)]
    pub threshold: f64,
    /// Final bracket width.
    #[arg(long, default_value_t = ScanConfig::default().refine_tol)]
    pub tol: f64,
    #[arg(long, default_value_t = ScanConfig::default().max_refine_iters)]
    pub max_iters: usize,
    /// Refined minima above this energy are discarded.
    #[arg(long, default_value_t = ScanConfig::default().accept_energy)]
    pub accept_energy: f64,
    /// File name of the CSV inside the output directory.
    #[arg(long, default_value = "zeros.csv")]
    pub output: String,
}

impl ScanArgs {
    fn config(&self) -> crate::error::Result<ScanConfig> {
        ScanConfig {
            lambda_min: self.lambda_min,
            lambda_max: self.lambda_max,
            coarse_step: self.step,
            detect_threshold: self.threshold,
            refine_tol: self.tol,
            max_refine_iters: self.max_iters,
            accept_energy: self.accept_energy,
        }
        .validated()
    }
}

/// Settings that define a scan's result; the output file name is excluded
/// so renaming the CSV keeps the cache key.
pub fn scan_settings(cfg: &ScanConfig, series: &SeriesArgs) -> Settings {
    let s = Settings::new()
        .float("lambda_min", cfg.lambda_min)
        .float("lambda_max", cfg.lambda_max)
        .float("coarse_step", cfg.coarse_step)
        .float("detect_threshold", cfg.detect_threshold)
        .float("refine_tol", cfg.refine_tol)
        .int("max_refine_iters", cfg.max_refine_iters as u64)
        .float("accept_energy", cfg.accept_energy);
    series.settings(s)
}

/// Parses `argv` and runs the command.
pub fn main_with_args<I, T>(args: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(&cli),
        Err(e) => {
            let _ = e.print();
            ExitCode::from(if e.use_stderr() { 2 } else { 0 })
        }
    }
}

pub fn run(cli: &Cli) -> ExitCode {
    let result = match &cli.command {
        Command::Zeta { sigma, lambda, series } => cmd_zeta(*sigma, *lambda, series, cli.precision),
        Command::Scan { scan, series } => cmd_scan(cli, scan, series),
        Command::Spectrum {
            omega,
            lambda_star,
            n_max,
            series,
        } => cmd_spectrum(cli, *omega, *lambda_star, *n_max, series),
        Command::Verify { suite } => cmd_verify(cli, *suite),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn exit_code(e: &anyhow::Error) -> u8 {
    match e.downcast_ref::<Error>() {
        Some(
            Error::Domain(_)
            | Error::Pole
            | Error::PrefactorSingular { .. }
            | Error::NonConvergent { .. }
            | Error::InvalidInput(_),
        ) => 2,
        _ => 1,
    }
}

fn cache_dir(cli: &Cli) -> PathBuf {
    cli.cache_dir.clone().unwrap_or_else(|| cli.out_dir.join("cache"))
}

fn ensure_out_dir(dir: &Path) -> anyhow::Result<()> {
    std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))
}

fn manifest_path(dir: &Path, stem: &str) -> PathBuf {
    dir.join(format!("{stem}.manifest.json"))
}

fn file_stem(name: &str) -> &str {
    Path::new(name).file_stem().and_then(|s| s.to_str()).unwrap_or(name)
}

fn cmd_zeta(sigma: f64, lambda: f64, series: &SeriesArgs, precision: usize) -> anyhow::Result<u8> {
    let cfg = series.config()?;
    let value = zeta(ComplexPoint::new(sigma, lambda)?, &cfg)?;
    println!("{}", format::format_complex(value, precision));
    Ok(0)
}

fn cmd_scan(cli: &Cli, args: &ScanArgs, series_args: &SeriesArgs) -> anyhow::Result<u8> {
    let cfg = args.config()?;
    let series = series_args.config()?;
    ensure_out_dir(&cli.out_dir)?;

    let mut manifest = RunManifest::new("scan", scan_settings(&cfg, series_args), None);
    let outcome = scan_partial(&cfg, &series);

    let body = zeros_csv(&outcome.records)?;
    std::fs::write(cli.out_dir.join(&args.output), &body)?;
    manifest.record_output(&args.output, &body);

    let code = match &outcome.error {
        None => {
            let added = append_to_cache(&cache_dir(cli), &manifest.config_hash, &outcome.records)?;
            println!(
                "{} zeros in [{}, {}] -> {} ({added} new in cache)",
                outcome.records.len(),
                cfg.lambda_min,
                cfg.lambda_max,
                cli.out_dir.join(&args.output).display()
            );
            0
        }
        Some(e) => {
            manifest.fail(e.to_string());
            eprintln!("error: scan stopped after {} zeros: {e}", outcome.records.len());
            1
        }
    };
    manifest.write(&manifest_path(&cli.out_dir, file_stem(&args.output)))?;
    Ok(code)
}

fn cmd_spectrum(cli: &Cli, omega: f64, lambda_star: f64, n_max: usize, series_args: &SeriesArgs) -> anyhow::Result<u8> {
    let series = series_args.config()?;
    let cfg = ModelConfig::new(Omega::new(omega)?, lambda_star, n_max, series)?;
    ensure_out_dir(&cli.out_dir)?;

    let settings = series_args.settings(
        Settings::new()
            .float("omega", omega)
            .float("lambda_star", lambda_star)
            .int("n_max", n_max as u64),
    );
    let mut manifest = RunManifest::new("spectrum", settings, None);
    let levels = build_spectrum(&cfg)?;
    let report = isospectral_report(&cfg)?;
    let doc = SpectrumDocument::new(&cfg, &levels, &report, ISOSPECTRAL_TOL);
    let body = doc.to_bytes()?;
    std::fs::write(cli.out_dir.join("spectrum.json"), &body)?;
    manifest.record_output("spectrum.json", &body);
    manifest.write(&manifest_path(&cli.out_dir, "spectrum"))?;

    let flagged = doc.diagnostics.iter().filter(|d| !d.within_tolerance).count();
    println!(
        "E_0 = {:e}{}; {} levels, {flagged} outside tolerance",
        doc.ground_energy,
        if doc.lambda_star_is_zero { " (zero)" } else { "" },
        doc.levels.len()
    );
    Ok(0)
}

fn cmd_verify(cli: &Cli, suite: Suite) -> anyhow::Result<u8> {
    ensure_out_dir(&cli.out_dir)?;
    let settings = Settings::new().text("suite", suite.as_str()).int("seed", cli.seed);
    let mut manifest = RunManifest::new("verify", settings, Some(cli.seed));

    let report = run_suite(suite, cli.seed);
    let text = report.render();
    print!("{text}");
    let name = format!("verify_{}.txt", suite.as_str());
    std::fs::write(cli.out_dir.join(&name), &text)?;
    manifest.record_output(&name, text.as_bytes());

    let code = match report.first_failure() {
        None => 0,
        Some(bad) => {
            manifest.fail(format!("{} failed: {}", bad.name, bad.detail));
            eprintln!("error: first failing invariant: {}", bad.name);
            1
        }
    };
    manifest.write(&manifest_path(&cli.out_dir, &format!("verify_{}", suite.as_str())))?;
    Ok(code)
}
