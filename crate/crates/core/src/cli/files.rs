//! On-disk formats: zeros CSV, spectrum JSON and the zero cache.

use std::collections::HashSet;
use std::fs::OpenOptions;
use std::path::Path;

use anyhow::Context;
use serde::{Deserialize, Serialize};

use super::manifest::canonical_f64;
use crate::model::{IsospectralReport, ModelConfig, SpectrumLevel};
use crate::zeros::{Method, ZeroRecord};

pub const ZEROS_HEADER: [&str; 7] = [
    "index",
    "lambda_star",
    "energy_at_min",
    "bracket_lo",
    "bracket_hi",
    "iterations",
    "method",
];

pub const CACHE_FILE: &str = "zero_cache.csv";

/// Ground energies below this mark `lambda*` as a zero in spectrum output.
pub const VACUUM_ENERGY_TOL: f64 = 1e-9;

fn record_fields(r: &ZeroRecord) -> [String; 6] {
    [
        canonical_f64(r.lambda_star),
        canonical_f64(r.energy_at_min),
        canonical_f64(r.bracket_lo),
        canonical_f64(r.bracket_hi),
        r.iterations.to_string(),
        r.method.as_str().to_string(),
    ]
}

pub fn zeros_csv(records: &[ZeroRecord]) -> anyhow::Result<Vec<u8>> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(ZEROS_HEADER)?;
    for (i, r) in records.iter().enumerate() {
        let f = record_fields(r);
        w.write_record(std::iter::once(i.to_string()).chain(f))?;
    }
    Ok(w.into_inner()?)
}

#[derive(Debug, Deserialize)]
struct CsvRow {
    index: usize,
    lambda_star: f64,
    energy_at_min: f64,
    bracket_lo: f64,
    bracket_hi: f64,
    iterations: usize,
    method: String,
}

impl CsvRow {
    fn into_record(self) -> anyhow::Result<ZeroRecord> {
        Ok(ZeroRecord {
            lambda_star: self.lambda_star,
            energy_at_min: self.energy_at_min,
            bracket_lo: self.bracket_lo,
            bracket_hi: self.bracket_hi,
            iterations: self.iterations,
            method: self.method.parse::<Method>()?,
        })
    }
}

/// Parses a zeros CSV, checking the header and the index column.
pub fn parse_zeros_csv(bytes: &[u8]) -> anyhow::Result<Vec<ZeroRecord>> {
    let mut r = csv::Reader::from_reader(bytes);
    let header: Vec<String> = r.headers()?.iter().map(str::to_string).collect();
    anyhow::ensure!(header == ZEROS_HEADER, "unexpected zeros header {header:?}");
    let mut out = Vec::new();
    for (i, row) in r.deserialize::<CsvRow>().enumerate() {
        let row = row?;
        anyhow::ensure!(row.index == i, "row {i} carries index {}", row.index);
        out.push(row.into_record()?);
    }
    Ok(out)
}

/// Appends records not already cached under `config_hash`. Returns how many
/// rows were added.
pub fn append_to_cache(cache_dir: &Path, config_hash: &str, records: &[ZeroRecord]) -> anyhow::Result<usize> {
    std::fs::create_dir_all(cache_dir).with_context(|| format!("creating {}", cache_dir.display()))?;
    let path = cache_dir.join(CACHE_FILE);
    let mut known: HashSet<(String, String)> = HashSet::new();
    let fresh = !path.exists();
    if !fresh {
        let mut r = csv::Reader::from_path(&path).with_context(|| format!("reading {}", path.display()))?;
        for row in r.records() {
            let row = row?;
            if let (Some(h), Some(l)) = (row.get(0), row.get(1)) {
                known.insert((h.to_string(), l.to_string()));
            }
        }
    }
    let file = OpenOptions::new()
        .create(true)
        .append(true)
        .open(&path)
        .with_context(|| format!("opening {}", path.display()))?;
    let mut w = csv::Writer::from_writer(file);
    if fresh {
        w.write_record(std::iter::once("config_hash").chain(ZEROS_HEADER[1..].iter().copied()))?;
    }
    let mut added = 0;
    for r in records {
        let f = record_fields(r);
        if known.insert((config_hash.to_string(), f[0].clone())) {
            w.write_record(std::iter::once(config_hash.to_string()).chain(f))?;
            added += 1;
        }
    }
    w.flush()?;
    Ok(added)
}

/// Cached records for one configuration, in file order.
pub fn read_cache(cache_dir: &Path, config_hash: &str) -> anyhow::Result<Vec<ZeroRecord>> {
    let path = cache_dir.join(CACHE_FILE);
    if !path.exists() {
        return Ok(Vec::new());
    }
    let mut r = csv::Reader::from_path(&path)?;
    let mut out = Vec::new();
    for row in r.records() {
        let row = row?;
        if row.get(0) != Some(config_hash) {
            continue;
        }
        let field = |i: usize| row.get(i).context("short cache row");
        out.push(ZeroRecord {
            lambda_star: field(1)?.parse()?,
            energy_at_min: field(2)?.parse()?,
            bracket_lo: field(3)?.parse()?,
            bracket_hi: field(4)?.parse()?,
            iterations: field(5)?.parse()?,
            method: field(6)?.parse()?,
        });
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LevelRecord {
    pub n: usize,
    #[serde(rename = "C_re")]
    pub c_re: f64,
    #[serde(rename = "C_im")]
    pub c_im: f64,
    #[serde(rename = "Ctilde_re")]
    pub c_tilde_re: f64,
    #[serde(rename = "Ctilde_im")]
    pub c_tilde_im: f64,
    #[serde(rename = "E")]
    pub energy: f64,
    pub psi_rho: f64,
    pub psi_tilde_rho: f64,
}

impl From<&SpectrumLevel> for LevelRecord {
    fn from(l: &SpectrumLevel) -> Self {
        Self {
            n: l.n,
            c_re: l.c.re,
            c_im: l.c.im,
            c_tilde_re: l.c_tilde.re,
            c_tilde_im: l.c_tilde.im,
            energy: l.energy,
            psi_rho: l.psi_rho,
            psi_tilde_rho: l.psi_tilde_rho,
        }
    }
}

/// Partner-tower comparison for one level; failures are reported, not fatal.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LevelDiagnostic {
    pub n: usize,
    pub h_minus_re: f64,
    pub h_minus_im: f64,
    pub h_plus_re: f64,
    pub h_plus_im: f64,
    pub deviation: f64,
    pub tolerance: f64,
    pub within_tolerance: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumDocument {
    pub omega: f64,
    pub lambda_star: f64,
    pub n_max: usize,
    pub ground_energy: f64,
    /// `ground_energy < 1e-9`: `lambda*` sits on a zero and `A psi_0 = 0`.
    pub lambda_star_is_zero: bool,
    pub levels: Vec<LevelRecord>,
    pub diagnostics: Vec<LevelDiagnostic>,
}

impl SpectrumDocument {
    pub fn new(cfg: &ModelConfig, levels: &[SpectrumLevel], report: &IsospectralReport, tolerance: f64) -> Self {
        let ground_energy = levels.first().map_or(report.ground_energy, |l| l.energy);
        Self {
            omega: cfg.omega.value(),
            lambda_star: cfg.lambda_star,
            n_max: cfg.n_max,
            ground_energy,
            lambda_star_is_zero: ground_energy < VACUUM_ENERGY_TOL,
            levels: levels.iter().map(LevelRecord::from).collect(),
            diagnostics: report
                .levels
                .iter()
                .map(|l| LevelDiagnostic {
                    n: l.n,
                    h_minus_re: l.h_minus.re,
                    h_minus_im: l.h_minus.im,
                    h_plus_re: l.h_plus.re,
                    h_plus_im: l.h_plus.im,
                    deviation: l.deviation,
                    tolerance,
                    within_tolerance: l.deviation <= tolerance,
                })
                .collect(),
        }
    }

    pub fn to_bytes(&self) -> anyhow::Result<Vec<u8>> {
        let mut v = serde_json::to_vec_pretty(self)?;
        v.push(b'\n');
        Ok(v)
    }
}
