//! The supersymmetric model built on the critical-line monomials.
//!
//! For a frequency `w` and a candidate zero location `lambda*` the ground
//! state is `|x|^(-1/2 + i(w/2 - lambda*))`. Its energy is computed rather
//! than assumed, so any `lambda*` may be supplied and `E_0` says whether it
//! is a zero.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::algebra::{
    apply_a, apply_a_dagger, apply_h_minus, apply_h_plus, eigenvalue_h_minus, eigenvalue_h_plus, MonomialState, Omega,
    Parity,
};
use crate::error::{Error, Result};
use crate::zeta::{prefactor, zeta_right, ComplexPoint, SeriesConfig};

pub const MAX_TOWER_DEPTH: usize = 64;

/// Relative tolerance for the isospectrality check.
pub const ISOSPECTRAL_TOL: f64 = 1e-10;

/// Label-agreement tolerance used when adding doublet components.
const LABEL_TOL: f64 = 1e-12;

/// Tolerance for comparing a ladder-built coefficient with `C_n`, widened
/// geometrically because `C_n` is a product of `n` zeta values.
pub fn ladder_tolerance(n: usize) -> f64 {
    1e-10 * 2f64.powf(n as f64 / 8.0)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModelConfig {
    pub omega: Omega,
    pub lambda_star: f64,
    pub n_max: usize,
    pub series: SeriesConfig,
}

impl ModelConfig {
    pub fn new(omega: Omega, lambda_star: f64, n_max: usize, series: SeriesConfig) -> Result<Self> {
        if !lambda_star.is_finite() {
            return Err(Error::InvalidInput(format!(
                "lambda_star must be finite, got {lambda_star}"
            )));
        }
        if n_max == 0 || n_max > MAX_TOWER_DEPTH {
            return Err(Error::InvalidInput(format!(
                "n_max must be in 1..={MAX_TOWER_DEPTH}, got {n_max}"
            )));
        }
        Ok(Self {
            omega,
            lambda_star,
            n_max,
            series,
        })
    }

    /// Imaginary exponent of `psi_n`: `n w + (w/2 - lambda*)`.
    pub fn psi_rho(&self, n: usize) -> f64 {
        n as f64 * self.omega.value() + (self.omega.half() - self.lambda_star)
    }

    /// Imaginary exponent of the partner `psi~_n`: `n w - (w/2 + lambda*)`.
    pub fn psi_tilde_rho(&self, n: usize) -> f64 {
        n as f64 * self.omega.value() - (self.omega.half() + self.lambda_star)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpectrumLevel {
    pub n: usize,
    pub c: Complex64,
    pub c_tilde: Complex64,
    pub energy: f64,
    pub psi_rho: f64,
    pub psi_tilde_rho: f64,
}

pub fn ground_state(cfg: &ModelConfig) -> MonomialState {
    MonomialState {
        sigma: 0.5,
        rho: cfg.omega.half() - cfg.lambda_star,
        parity: Parity::Even,
        coeff: Complex64::new(1.0, 0.0),
    }
}

/// `E(lambda) = |1 - 2^(1/2 - i lambda)|^2 |zeta(1/2 + i lambda)|^2`.
pub fn ground_energy(lambda: f64, series: &SeriesConfig) -> Result<f64> {
    let s = ComplexPoint::new(0.5, lambda)?;
    let z = zeta_right(s, series)?;
    Ok(prefactor(s).norm_sqr() * z.norm_sqr())
}

/// One factor of `C_n`:
/// `(1 - 2^(1/2 - i(m w - lambda*))) zeta(1/2 + i(m w - lambda*))`.
fn ladder_factor(m: usize, cfg: &ModelConfig) -> Result<Complex64> {
    let t = m as f64 * cfg.omega.value() - cfg.lambda_star;
    let s = ComplexPoint::new(0.5, t)?;
    Ok(prefactor(s) * zeta_right(s, &cfg.series)?)
}

/// `E_n = |1 - 2^(1/2 - i(n w - lambda*))|^2 |zeta(1/2 + i(lambda* - n w))|^2`.
fn level_energy(n: usize, cfg: &ModelConfig) -> Result<f64> {
    let t = n as f64 * cfg.omega.value() - cfg.lambda_star;
    let pf = prefactor(ComplexPoint::new(0.5, t)?);
    let z = zeta_right(ComplexPoint::new(0.5, -t)?, &cfg.series)?;
    Ok(pf.norm_sqr() * z.norm_sqr())
}

/// Levels `0..=n_max` of the tower, unnormalized.
pub fn build_spectrum(cfg: &ModelConfig) -> Result<Vec<SpectrumLevel>> {
    let mut levels = Vec::with_capacity(cfg.n_max + 1);
    levels.push(SpectrumLevel {
        n: 0,
        c: Complex64::new(1.0, 0.0),
        c_tilde: Complex64::new(0.0, 0.0),
        energy: ground_energy(cfg.lambda_star, &cfg.series)?,
        psi_rho: cfg.psi_rho(0),
        psi_tilde_rho: cfg.psi_tilde_rho(0),
    });
    let mut c_prev = Complex64::new(1.0, 0.0);
    for n in 1..=cfg.n_max {
        let c = c_prev * ladder_factor(n, cfg)?;
        let energy = level_energy(n, cfg)?;
        levels.push(SpectrumLevel {
            n,
            c,
            c_tilde: c_prev * energy,
            energy,
            psi_rho: cfg.psi_rho(n),
            psi_tilde_rho: cfg.psi_tilde_rho(n),
        });
        c_prev = c;
    }
    Ok(levels)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IsospectralLevel {
    pub n: usize,
    pub energy: f64,
    pub h_minus: Complex64,
    pub h_plus: Complex64,
    pub deviation: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IsospectralReport {
    pub ground_energy: f64,
    pub levels: Vec<IsospectralLevel>,
    pub max_deviation: f64,
}

fn relative_gap(a: Complex64, b: Complex64) -> f64 {
    let scale = a.norm().max(b.norm());
    if scale == 0.0 {
        0.0
    } else {
        (a - b).norm() / scale
    }
}

/// Per-level comparison of `H-` on `psi_n`, `H+` on `psi~_n` and `E_n`,
/// without failing on tolerance.
pub fn isospectral_report(cfg: &ModelConfig) -> Result<IsospectralReport> {
    let spectrum = build_spectrum(cfg)?;
    let mut levels = Vec::with_capacity(cfg.n_max);
    let mut max_deviation: f64 = 0.0;
    for level in spectrum.iter().skip(1) {
        let h_minus = eigenvalue_h_minus(0.5, level.psi_rho, cfg.omega, &cfg.series)?;
        let h_plus = eigenvalue_h_plus(0.5, level.psi_tilde_rho, cfg.omega, &cfg.series)?;
        let e = Complex64::new(level.energy, 0.0);
        let deviation = relative_gap(h_minus, e)
            .max(relative_gap(h_plus, e))
            .max(relative_gap(h_minus, h_plus));
        max_deviation = max_deviation.max(deviation);
        levels.push(IsospectralLevel {
            n: level.n,
            energy: level.energy,
            h_minus,
            h_plus,
            deviation,
        });
    }
    Ok(IsospectralReport {
        ground_energy: spectrum[0].energy,
        levels,
        max_deviation,
    })
}

/// Checks `H+ psi~_n = H- psi_n = E_n psi_n` for every `n >= 1`.
pub fn verify_isospectral(cfg: &ModelConfig) -> Result<IsospectralReport> {
    let report = isospectral_report(cfg)?;
    if let Some(bad) = report.levels.iter().find(|l| l.deviation > ISOSPECTRAL_TOL) {
        return Err(Error::ToleranceExceeded {
            level: bad.n,
            deviation: bad.deviation,
            tolerance: ISOSPECTRAL_TOL,
        });
    }
    Ok(report)
}

/// Two-component state: `top` in the `H-` sector, `bottom` in `H+`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DoubletState {
    pub top: MonomialState,
    pub bottom: MonomialState,
}

impl DoubletState {
    pub fn new(top: MonomialState, bottom: MonomialState) -> Result<Self> {
        if top.sigma != bottom.sigma || top.parity != bottom.parity {
            return Err(Error::LabelMismatch(format!(
                "doublet components must share sigma and parity: ({}, {:?}) vs ({}, {:?})",
                top.sigma, top.parity, bottom.sigma, bottom.parity
            )));
        }
        Ok(Self { top, bottom })
    }

    pub fn is_zero(&self) -> bool {
        self.top.is_zero() && self.bottom.is_zero()
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        Ok(Self {
            top: self.top.combine(&other.top, 1.0, LABEL_TOL)?,
            bottom: self.bottom.combine(&other.bottom, 1.0, LABEL_TOL)?,
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        Ok(Self {
            top: self.top.combine(&other.top, -1.0, LABEL_TOL)?,
            bottom: self.bottom.combine(&other.bottom, -1.0, LABEL_TOL)?,
        })
    }

    /// Largest component amplitude.
    pub fn max_coeff(&self) -> f64 {
        self.top.coeff.norm().max(self.bottom.coeff.norm())
    }
}

/// `Q = [[0, 0], [A, 0]]`: `(top, bottom) -> (0, A top)`.
pub fn apply_q(omega: Omega, d: &DoubletState, cfg: &SeriesConfig) -> Result<DoubletState> {
    Ok(DoubletState {
        top: d.top.zeroed(),
        bottom: apply_a(omega, &d.top, cfg)?,
    })
}

/// `Q† = [[0, A†], [0, 0]]`: `(top, bottom) -> (A† bottom, 0)`.
pub fn apply_q_dagger(omega: Omega, d: &DoubletState, cfg: &SeriesConfig) -> Result<DoubletState> {
    Ok(DoubletState {
        top: apply_a_dagger(omega, &d.bottom, cfg)?,
        bottom: d.bottom.zeroed(),
    })
}

/// `H = diag(H-, H+)`.
pub fn apply_h(omega: Omega, d: &DoubletState, cfg: &SeriesConfig) -> Result<DoubletState> {
    Ok(DoubletState {
        top: apply_h_minus(omega, &d.top, cfg)?,
        bottom: apply_h_plus(omega, &d.bottom, cfg)?,
    })
}

/// `Q Q† + Q† Q`.
pub fn anticommutator_q(omega: Omega, d: &DoubletState, cfg: &SeriesConfig) -> Result<DoubletState> {
    let qqd = apply_q(omega, &apply_q_dagger(omega, d, cfg)?, cfg)?;
    let qdq = apply_q_dagger(omega, &apply_q(omega, d, cfg)?, cfg)?;
    qqd.add(&qdq)
}

/// `Q H - H Q`.
pub fn commutator_q_h(omega: Omega, d: &DoubletState, cfg: &SeriesConfig) -> Result<DoubletState> {
    let qh = apply_q(omega, &apply_h(omega, d, cfg)?, cfg)?;
    let hq = apply_h(omega, &apply_q(omega, d, cfg)?, cfg)?;
    qh.sub(&hq)
}

/// `Q† H - H Q†`.
pub fn commutator_q_dagger_h(omega: Omega, d: &DoubletState, cfg: &SeriesConfig) -> Result<DoubletState> {
    let qh = apply_q_dagger(omega, &apply_h(omega, d, cfg)?, cfg)?;
    let hq = apply_h(omega, &apply_q_dagger(omega, d, cfg)?, cfg)?;
    qh.sub(&hq)
}

/// Exponent of `|x|` kept as an exact integer combination
/// `(re_halves / 2) + i (half_omega * w/2 + lambda * lambda*)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExponentLabel {
    pub re_halves: i64,
    pub half_omega: i64,
    pub lambda: i64,
}

impl ExponentLabel {
    pub fn ground_state() -> Self {
        Self {
            re_halves: -1,
            half_omega: 1,
            lambda: -1,
        }
    }

    pub fn plus(self, other: Self) -> Self {
        Self {
            re_halves: self.re_halves + other.re_halves,
            half_omega: self.half_omega + other.half_omega,
            lambda: self.lambda + other.lambda,
        }
    }

    pub fn negated(self) -> Self {
        Self {
            re_halves: -self.re_halves,
            half_omega: -self.half_omega,
            lambda: -self.lambda,
        }
    }

    pub fn evaluate(self, omega: Omega, lambda_star: f64) -> Complex64 {
        let re = self.re_halves as f64 * 0.5;
        let im = match (self.half_omega, self.lambda) {
            (0, 0) => 0.0,
            (0, l) => l as f64 * lambda_star,
            (h, 0) => h as f64 * omega.half(),
            (h, l) => h as f64 * omega.half() + l as f64 * lambda_star,
        };
        Complex64::new(re, im)
    }
}

/// Eigenvalue of the scale generator `x d/dx` on `psi_0`:
/// `-1/2 + i(w/2 - lambda*)`.
pub fn scale_generator_eigenvalue(cfg: &ModelConfig) -> Complex64 {
    ExponentLabel::ground_state().evaluate(cfg.omega, cfg.lambda_star)
}

/// Eigenvalue of `B = i |x|^(-(1 - iw)/2) (x d/dx) |x|^((1 - iw)/2)` on
/// `psi_0`, by exponent arithmetic. Equals `lambda*`.
pub fn b_operator_check(cfg: &ModelConfig) -> Result<f64> {
    let ground = ground_state(cfg);
    let label = ExponentLabel::ground_state();
    let from_label = label.evaluate(cfg.omega, cfg.lambda_star);
    if from_label != Complex64::new(-ground.sigma, ground.rho) {
        return Err(Error::LabelMismatch(format!(
            "exponent label {from_label} disagrees with ground state (-{}, {})",
            ground.sigma, ground.rho
        )));
    }
    // |x|^((1 - iw)/2): real +1/2, imaginary -w/2.
    let similarity = ExponentLabel {
        re_halves: 1,
        half_omega: -1,
        lambda: 0,
    };
    let conjugated = label.plus(similarity);
    // x d/dx multiplies by the exponent; the outer factor undoes the shift
    // on the state but not on the eigenvalue.
    let scale_eigenvalue = conjugated.evaluate(cfg.omega, cfg.lambda_star);
    let restored = conjugated.plus(similarity.negated());
    debug_assert_eq!(restored, label);
    let eigenvalue = Complex64::new(0.0, 1.0) * scale_eigenvalue;
    if eigenvalue.im != 0.0 {
        return Err(Error::InvalidInput(format!("B eigenvalue {eigenvalue} is not real")));
    }
    Ok(eigenvalue.re)
}

/// Grid points in `[lo, hi]` where `E(lambda) < tol`. Several hits in
/// separate basins mean several candidate vacua for the chosen range.
pub fn vacuum_diagnostic(lo: f64, hi: f64, step: f64, tol: f64, series: &SeriesConfig) -> Result<Vec<f64>> {
    if !(lo < hi) || !(step > 0.0) {
        return Err(Error::InvalidInput(format!(
            "need lo < hi and step > 0, got [{lo}, {hi}] step {step}"
        )));
    }
    let count = ((hi - lo) / step).floor() as usize;
    let mut hits = Vec::new();
    for i in 0..=count {
        let lambda = lo + i as f64 * step;
        if ground_energy(lambda, series)? < tol {
            hits.push(lambda);
        }
    }
    Ok(hits)
}
