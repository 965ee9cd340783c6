//! Dirichlet eta and Riemann zeta evaluation.
//!
//! `eta` sums the alternating series with one of three acceleration
//! schemes. `zeta_right` divides by `1 - 2^(1-s)` on `Re s > 0` and
//! `zeta_left` continues to `Re s < 1` with the reflection formula.
//!
//! Every evaluation is a pure function of its arguments. Term generation is
//! written so that `eta(conj s) == conj(eta(s))` holds bit for bit.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::{LN_2, PI};

use crate::error::{Error, Result};
use crate::gamma::gamma;

/// Threshold on `|1 - 2^(1-s)|` below which `zeta_right` refuses to divide.
pub const PREFACTOR_SINGULAR_THRESHOLD: f64 = 1e-12;

/// A point `s = sigma + i*lambda`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ComplexPoint {
    pub sigma: f64,
    pub lambda: f64,
}

impl ComplexPoint {
    pub fn new(sigma: f64, lambda: f64) -> Result<Self> {
        if !sigma.is_finite() || !lambda.is_finite() {
            return Err(Error::InvalidInput(format!("non-finite point s = {sigma} + {lambda}i")));
        }
        Ok(Self { sigma, lambda })
    }

    pub fn from_complex(s: Complex64) -> Result<Self> {
        Self::new(s.re, s.im)
    }

    pub fn to_complex(self) -> Complex64 {
        Complex64::new(self.sigma, self.lambda)
    }

    pub fn conj(self) -> Self {
        Self {
            sigma: self.sigma,
            lambda: -self.lambda,
        }
    }

    /// `1 - s`.
    pub fn reflect(self) -> Self {
        Self {
            sigma: 1.0 - self.sigma,
            lambda: -self.lambda,
        }
    }

    fn check_finite(self) -> Result<()> {
        Self::new(self.sigma, self.lambda).map(|_| ())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Acceleration {
    /// Plain partial sums, truncated by a rigorous tail bound on paired terms.
    DirectPartialSums,
    /// Repeated averaging of partial sums (Euler-Knopp means).
    EulerTransform,
    /// Cohen, Rodriguez Villegas and Zagier's Chebyshev-weighted scheme.
    CvzAlternating,
}

/// Truncation control for the alternating series.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SeriesConfig {
    pub target_abs_error: f64,
    pub max_terms: usize,
    pub acceleration: Acceleration,
}

impl SeriesConfig {
    pub const MIN_TARGET_ABS_ERROR: f64 = 1e-14;
    pub const MIN_TERMS: usize = 16;

    pub fn new(target_abs_error: f64, max_terms: usize, acceleration: Acceleration) -> Result<Self> {
        if !(target_abs_error >= Self::MIN_TARGET_ABS_ERROR) || !target_abs_error.is_finite() {
            return Err(Error::InvalidInput(format!(
                "target_abs_error must be finite and >= {:e}, got {target_abs_error}",
                Self::MIN_TARGET_ABS_ERROR
            )));
        }
        if max_terms < Self::MIN_TERMS {
            return Err(Error::InvalidInput(format!(
                "max_terms must be >= {}, got {max_terms}",
                Self::MIN_TERMS
            )));
        }
        Ok(Self {
            target_abs_error,
            max_terms,
            acceleration,
        })
    }

    pub fn with_acceleration(self, acceleration: Acceleration) -> Self {
        Self { acceleration, ..self }
    }

    /// Requested accuracy in decimal digits.
    pub fn digits(&self) -> f64 {
        -self.target_abs_error.log10()
    }
}

impl Default for SeriesConfig {
    fn default() -> Self {
        Self {
            target_abs_error: 1e-13,
            max_terms: 512,
            acceleration: Acceleration::CvzAlternating,
        }
    }
}

/// `(k)^(-s)` for integer `k >= 1`, conjugation-symmetric in `s`.
#[inline]
fn inverse_power(k: usize, s: ComplexPoint) -> Complex64 {
    let ln_k = (k as f64).ln();
    let modulus = (-s.sigma * ln_k).exp();
    let phase = -(s.lambda * ln_k);
    Complex64::new(modulus * phase.cos(), modulus * phase.sin())
}

/// `2^w` for complex `w`, conjugation-symmetric in `w`.
#[inline]
fn pow2(re: f64, im: f64) -> Complex64 {
    let modulus = (re * LN_2).exp();
    let phase = im * LN_2;
    Complex64::new(modulus * phase.cos(), modulus * phase.sin())
}

/// Number of terms the CVZ scheme uses for `s` at the configured accuracy.
///
/// Error decays like `(3 + sqrt 8)^(-n)` once `n` exceeds roughly `|Im s|`.
pub fn cvz_term_count(s: ComplexPoint, cfg: &SeriesConfig) -> usize {
    (1.31 * cfg.digits() + s.lambda.abs()).ceil() as usize + 4
}

/// `1 - 2^(1-s)`.
pub fn prefactor(s: ComplexPoint) -> Complex64 {
    Complex64::new(1.0, 0.0) - pow2(1.0 - s.sigma, -s.lambda)
}

/// Dirichlet eta `sum_{n>=1} (-1)^(n+1) n^(-s)` for `Re s > 0`.
pub fn eta(s: ComplexPoint, cfg: &SeriesConfig) -> Result<Complex64> {
    s.check_finite()?;
    if !(s.sigma > 0.0) {
        return Err(Error::Domain(format!(
            "eta series requires Re s > 0, got sigma = {}",
            s.sigma
        )));
    }
    match cfg.acceleration {
        Acceleration::CvzAlternating => eta_cvz(s, cfg),
        Acceleration::EulerTransform => eta_euler(s, cfg),
        Acceleration::DirectPartialSums => eta_direct(s, cfg),
    }
}

fn eta_cvz(s: ComplexPoint, cfg: &SeriesConfig) -> Result<Complex64> {
    let n = cvz_term_count(s, cfg);
    if n > cfg.max_terms {
        return Err(Error::NonConvergent {
            max_terms: cfg.max_terms,
            needed: n,
        });
    }
    let nf = n as f64;
    let mut d = (3.0 + 8f64.sqrt()).powf(nf);
    d = (d + 1.0 / d) / 2.0;
    let mut b = -1.0;
    let mut c = -d;
    let mut acc = Complex64::new(0.0, 0.0);
    for k in 0..n {
        c = b - c;
        acc += inverse_power(k + 1, s) * c;
        let kf = k as f64;
        b *= (kf + nf) * (kf - nf) / ((kf + 0.5) * (kf + 1.0));
    }
    Ok(acc / d)
}

fn eta_euler(s: ComplexPoint, cfg: &SeriesConfig) -> Result<Complex64> {
    // row[j] holds the j-fold average ending at the newest partial sum.
    let mut row: Vec<Complex64> = Vec::with_capacity(cfg.max_terms);
    let mut partial = Complex64::new(0.0, 0.0);
    let mut previous: Option<Complex64> = None;
    let mut settled = 0;
    let step_tol = cfg.target_abs_error / 8.0;
    for k in 0..cfg.max_terms {
        let term = inverse_power(k + 1, s);
        if k % 2 == 0 {
            partial += term;
        } else {
            partial -= term;
        }
        let mut carry = partial;
        for slot in row.iter_mut() {
            let averaged = (*slot + carry) * 0.5;
            *slot = carry;
            carry = averaged;
        }
        row.push(carry);
        let estimate = carry;
        if let Some(prev) = previous {
            if (estimate - prev).norm() <= step_tol {
                settled += 1;
                if settled >= 3 && k >= 8 {
                    return Ok(estimate);
                }
            } else {
                settled = 0;
            }
        }
        previous = Some(estimate);
    }
    Err(Error::NonConvergent {
        max_terms: cfg.max_terms,
        needed: cfg.max_terms + 1,
    })
}

fn eta_direct(s: ComplexPoint, cfg: &SeriesConfig) -> Result<Complex64> {
    // Pairing (2k-1)^-s - (2k)^-s gives |pair| <= |s| (2k-1)^(-sigma-1), so
    // the tail after K pairs is at most |s| (2K-1)^(-sigma) / (2 sigma).
    let modulus = s.to_complex().norm();
    let ratio = modulus / (2.0 * s.sigma * cfg.target_abs_error);
    let needed_base = ratio.max(1.0).powf(1.0 / s.sigma);
    let pairs = ((needed_base + 1.0) / 2.0).ceil();
    let terms = 2.0 * pairs;
    if !terms.is_finite() || terms > cfg.max_terms as f64 {
        let needed = if terms.is_finite() && terms < usize::MAX as f64 {
            terms as usize
        } else {
            usize::MAX
        };
        return Err(Error::NonConvergent {
            max_terms: cfg.max_terms,
            needed,
        });
    }
    let terms = terms as usize;
    let mut acc = Complex64::new(0.0, 0.0);
    for k in 1..=terms {
        let term = inverse_power(k, s);
        if k % 2 == 1 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    Ok(acc)
}

/// `zeta(s) = eta(s) / (1 - 2^(1-s))` on `Re s > 0`, `s != 1`.
pub fn zeta_right(s: ComplexPoint, cfg: &SeriesConfig) -> Result<Complex64> {
    s.check_finite()?;
    if !(s.sigma > 0.0) {
        return Err(Error::Domain(format!(
            "zeta_right requires Re s > 0, got sigma = {}",
            s.sigma
        )));
    }
    if s.sigma == 1.0 && s.lambda == 0.0 {
        return Err(Error::Pole);
    }
    let pf = prefactor(s);
    if pf.norm() <= PREFACTOR_SINGULAR_THRESHOLD {
        return Err(Error::PrefactorSingular {
            sigma: s.sigma,
            lambda: s.lambda,
            magnitude: pf.norm(),
        });
    }
    Ok(eta(s, cfg)? / pf)
}

// Stieltjes constants for the Laurent expansion of zeta about s = 1.
const STIELTJES: [f64; 3] = [
    0.577_215_664_901_532_9,
    -0.072_815_845_483_676_72,
    -0.009_690_363_192_872_318,
];

/// Below this `|s|`, `sin(pi s/2) zeta(1-s)` is taken from its Laurent series.
const LAURENT_RADIUS: f64 = 1e-4;

/// `zeta(s) = 2 (2 pi)^(s-1) sin(pi s / 2) Gamma(1-s) zeta(1-s)` on `Re s < 1`.
pub fn zeta_left(s: ComplexPoint, cfg: &SeriesConfig) -> Result<Complex64> {
    s.check_finite()?;
    if !(s.sigma < 1.0) {
        return Err(Error::Domain(format!(
            "zeta_left requires Re s < 1, got sigma = {}",
            s.sigma
        )));
    }
    let z = s.to_complex();
    let half_angle = z * (PI / 2.0);
    let sine_times_zeta = if z.norm() < LAURENT_RADIUS {
        // zeta(1-s) = -1/s + g0 + g1 s + g2 s^2/2 + O(s^3)
        let x2 = half_angle * half_angle;
        let sinc = Complex64::new(1.0, 0.0) - x2 / 6.0 + x2 * x2 / 120.0;
        let regular = z * (z * (STIELTJES[2] / 2.0) + STIELTJES[1]) + STIELTJES[0];
        -(PI / 2.0) * sinc + half_angle.sin() * regular
    } else {
        half_angle.sin() * zeta_right(s.reflect(), cfg)?
    };
    let one = Complex64::new(1.0, 0.0);
    let power = ((z - one) * (2.0 * PI).ln()).exp();
    Ok(2.0 * power * gamma(one - z) * sine_times_zeta)
}

/// Zeta anywhere except the pole, choosing the route by `Re s`.
pub fn zeta(s: ComplexPoint, cfg: &SeriesConfig) -> Result<Complex64> {
    if s.sigma >= 0.5 {
        zeta_right(s, cfg)
    } else {
        zeta_left(s, cfg)
    }
}
