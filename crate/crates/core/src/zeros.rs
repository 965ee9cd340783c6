//! Critical-line zeros as the zero set of the ground-state energy `E(lambda)`.
//!
//! `E` is non-negative, so zeros are minima rather than sign changes. A
//! coarse grid flags V-shaped basins below a threshold, each basin is
//! minimized with golden-section search plus parabolic interpolation, and
//! only minima whose energy is numerically zero are kept.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::ground_energy;
use crate::zeta::SeriesConfig;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScanConfig {
    pub lambda_min: f64,
    pub lambda_max: f64,
    pub coarse_step: f64,
    /// A grid minimum must lie below this energy to be refined.
    pub detect_threshold: f64,
    /// Width of the final bracket.
    pub refine_tol: f64,
    pub max_refine_iters: usize,
    /// A refined minimum counts as a zero only below this energy.
    pub accept_energy: f64,
}

impl ScanConfig {
    pub const MAX_COARSE_STEP: f64 = 0.25;

    pub fn new(lambda_min: f64, lambda_max: f64) -> Result<Self> {
        Self {
            lambda_min,
            lambda_max,
            ..Self::default()
        }
        .validated()
    }

    pub fn validated(self) -> Result<Self> {
        let all_finite = [
            self.lambda_min,
            self.lambda_max,
            self.coarse_step,
            self.detect_threshold,
            self.refine_tol,
            self.accept_energy,
        ]
        .iter()
        .all(|v| v.is_finite());
        if !all_finite {
            return Err(Error::InvalidInput("scan settings must be finite".into()));
        }
        if !(self.lambda_min < self.lambda_max) {
            return Err(Error::InvalidInput(format!(
                "lambda_min must be below lambda_max, got [{}, {}]",
                self.lambda_min, self.lambda_max
            )));
        }
        if !(self.coarse_step > 0.0 && self.coarse_step <= Self::MAX_COARSE_STEP) {
            return Err(Error::InvalidInput(format!(
                "coarse_step must be in (0, {}], got {}",
                Self::MAX_COARSE_STEP,
                self.coarse_step
            )));
        }
        if !(self.detect_threshold > 0.0 && self.refine_tol > 0.0 && self.accept_energy > 0.0) {
            return Err(Error::InvalidInput(
                "detect_threshold, refine_tol and accept_energy must be positive".into(),
            ));
        }
        if self.max_refine_iters == 0 {
            return Err(Error::InvalidInput("max_refine_iters must be positive".into()));
        }
        Ok(self)
    }
}

impl Default for ScanConfig {
    fn default() -> Self {
        Self {
            lambda_min: 0.0,
            lambda_max: 60.0,
            coarse_step: 0.05,
            detect_threshold: 0.05,
            refine_tol: 1e-9,
            max_refine_iters: 200,
            accept_energy: 1e-10,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    EnergyMin,
    SignChange,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::EnergyMin => "energy_min",
            Method::SignChange => "sign_change",
        }
    }
}

impl std::str::FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "energy_min" => Ok(Method::EnergyMin),
            "sign_change" => Ok(Method::SignChange),
            other => Err(Error::InvalidInput(format!("unknown method {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ZeroRecord {
    pub lambda_star: f64,
    pub energy_at_min: f64,
    pub bracket_lo: f64,
    pub bracket_hi: f64,
    pub iterations: usize,
    pub method: Method,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Classification {
    Zero,
    NotZero,
}

pub fn classify(lambda: f64, series: &SeriesConfig, tol: f64) -> Result<Classification> {
    Ok(if ground_energy(lambda, series)? < tol {
        Classification::Zero
    } else {
        Classification::NotZero
    })
}

/// Interior samples used for the V-shape test.
const V_SUBDIVISIONS: usize = 10;

/// Golden-section fraction `(3 - sqrt 5) / 2`.
const GOLDEN: f64 = 0.381_966_011_250_105_15;

/// Minimizes `E` on `[lo, hi]` to a bracket narrower than `tol`.
pub fn refine(lo: f64, hi: f64, series: &SeriesConfig, tol: f64, max_iters: usize) -> Result<ZeroRecord> {
    if !(lo < hi) || !lo.is_finite() || !hi.is_finite() || !(tol > 0.0) {
        return Err(Error::InvalidInput(format!(
            "refine needs a finite bracket lo < hi and tol > 0, got [{lo}, {hi}], tol {tol}"
        )));
    }
    let energy = |x: f64| ground_energy(x, series);

    let e_lo = energy(lo)?;
    let e_hi = energy(hi)?;
    let mut best = (f64::NAN, f64::INFINITY);
    for k in 1..V_SUBDIVISIONS {
        let x = lo + (hi - lo) * k as f64 / V_SUBDIVISIONS as f64;
        let e = energy(x)?;
        if e < best.1 {
            best = (x, e);
        }
    }
    if !(best.1 < e_lo.min(e_hi)) {
        return Err(Error::NoInteriorMinimum { lo, hi });
    }

    let (mut a, mut b) = (lo, hi);
    let (mut x, mut fx) = best;
    let (mut w, mut fw) = best;
    let (mut v, mut fv) = best;
    let mut d: f64 = 0.0;
    let mut e: f64 = 0.0;
    for iter in 1..=max_iters {
        let mid = 0.5 * (a + b);
        let tol1 = (tol / 4.01).max(4.0 * f64::EPSILON * x.abs());
        let tol2 = 2.0 * tol1;
        if (x - mid).abs() <= tol2 - 0.5 * (b - a) {
            return Ok(ZeroRecord {
                lambda_star: x,
                energy_at_min: fx,
                bracket_lo: a,
                bracket_hi: b,
                iterations: iter - 1,
                method: Method::EnergyMin,
            });
        }
        let mut golden = true;
        if e.abs() > tol1 {
            // Parabola through (v, fv), (w, fw), (x, fx).
            let r = (x - w) * (fx - fv);
            let mut q = (x - v) * (fx - fw);
            let mut p = (x - v) * q - (x - w) * r;
            q = 2.0 * (q - r);
            if q > 0.0 {
                p = -p;
            }
            q = q.abs();
            let e_prev = e;
            if p.abs() < (0.5 * q * e_prev).abs() && p > q * (a - x) && p < q * (b - x) {
                e = d;
                d = p / q;
                let u = x + d;
                if u - a < tol2 || b - u < tol2 {
                    d = if x < mid { tol1 } else { -tol1 };
                }
                golden = false;
            }
        }
        if golden {
            e = if x >= mid { a - x } else { b - x };
            d = GOLDEN * e;
        }
        let u = if d.abs() >= tol1 {
            x + d
        } else if d > 0.0 {
            x + tol1
        } else {
            x - tol1
        };
        let fu = energy(u)?;
        if fu <= fx {
            if u >= x {
                a = x;
            } else {
                b = x;
            }
            (v, fv) = (w, fw);
            (w, fw) = (x, fx);
            (x, fx) = (u, fu);
        } else {
            if u < x {
                a = u;
            } else {
                b = u;
            }
            if fu <= fw || w == x {
                (v, fv) = (w, fw);
                (w, fw) = (u, fu);
            } else if fu <= fv || v == x || v == w {
                (v, fv) = (u, fu);
            }
        }
    }
    Err(Error::RefinementStalled {
        lo: a,
        hi: b,
        iterations: max_iters,
    })
}

/// Records found before an error, plus the error if one stopped the scan.
#[derive(Debug, Clone, PartialEq)]
pub struct ScanOutcome {
    pub records: Vec<ZeroRecord>,
    pub error: Option<Error>,
}

/// Coarse energies on the grid `lambda_min + i*step`, padded by one point on
/// each side so zeros near the ends still show a V.
fn coarse_grid(cfg: &ScanConfig, series: &SeriesConfig) -> Result<Vec<(f64, f64)>> {
    let intervals = ((cfg.lambda_max - cfg.lambda_min) / cfg.coarse_step).ceil() as i64;
    (-1..=intervals + 1)
        .map(|i| {
            let lambda = cfg.lambda_min + i as f64 * cfg.coarse_step;
            ground_energy(lambda, series).map(|e| (lambda, e))
        })
        .collect()
}

pub fn scan_partial(cfg: &ScanConfig, series: &SeriesConfig) -> ScanOutcome {
    let mut records: Vec<ZeroRecord> = Vec::new();
    let cfg = match cfg.validated() {
        Ok(c) => c,
        Err(e) => {
            return ScanOutcome {
                records,
                error: Some(e),
            }
        }
    };
    let grid = match coarse_grid(&cfg, series) {
        Ok(g) => g,
        Err(e) => {
            return ScanOutcome {
                records,
                error: Some(e),
            }
        }
    };
    for window in grid.windows(3) {
        let [(lo, e_lo), (_, e_mid), (hi, e_hi)] = [window[0], window[1], window[2]];
        if !(e_mid < e_lo && e_mid < e_hi && e_mid < cfg.detect_threshold) {
            continue;
        }
        let rec = match refine(lo, hi, series, cfg.refine_tol, cfg.max_refine_iters) {
            Ok(r) => r,
            Err(e) => {
                return ScanOutcome {
                    records,
                    error: Some(e),
                }
            }
        };
        if rec.energy_at_min >= cfg.accept_energy {
            continue;
        }
        if rec.lambda_star < cfg.lambda_min || rec.lambda_star > cfg.lambda_max {
            continue;
        }
        let duplicate = records
            .iter()
            .any(|r| (r.lambda_star - rec.lambda_star).abs() < 10.0 * cfg.refine_tol);
        if !duplicate {
            records.push(rec);
        }
    }
    records.sort_by(|a, b| a.lambda_star.total_cmp(&b.lambda_star));
    ScanOutcome { records, error: None }
}

/// All zeros in `[lambda_min, lambda_max]`, ascending.
pub fn scan(cfg: &ScanConfig, series: &SeriesConfig) -> Result<Vec<ZeroRecord>> {
    let outcome = scan_partial(cfg, series);
    match outcome.error {
        Some(e) => Err(e),
        None => Ok(outcome.records),
    }
}
