//! Exact action of the scale-transformation operators on monomial states.
//!
//! A state `c * |x|^(-sigma + i rho)` is stored as its labels plus the
//! complex amplitude `c`. Every operator here is either diagonal on the
//! labels (O, O†, H-, H+) or shifts `rho` by a fixed amount (A, A†), so the
//! representation is exact; only the multipliers need numerics.
//!
//! With `s = sigma - i rho` the multipliers are
//!
//! * `O`:  `(1 - 2^(1-s)) zeta(s)`
//! * `O†`: `(1 - 2^s) zeta(1-s)`
//!
//! and `A(w) = |x|^(-iw/2) O |x|^(-iw/2)`, `A†(w) = |x|^(iw/2) O† |x|^(iw/2)`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::zeta::{prefactor, zeta_right, ComplexPoint, SeriesConfig};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Parity {
    Even,
    Odd,
}

/// `coeff * |x|^(-sigma + i rho)`, times `sgn(x)` for odd parity.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MonomialState {
    pub sigma: f64,
    pub rho: f64,
    pub parity: Parity,
    pub coeff: Complex64,
}

impl MonomialState {
    pub fn new(sigma: f64, rho: f64, parity: Parity, coeff: Complex64) -> Result<Self> {
        if !(sigma > 0.0 && sigma < 1.0) {
            return Err(Error::Domain(format!(
                "monomial states live in the strip 0 < sigma < 1, got {sigma}"
            )));
        }
        if !rho.is_finite() || !coeff.re.is_finite() || !coeff.im.is_finite() {
            return Err(Error::InvalidInput(format!(
                "non-finite state label rho = {rho} or coeff = {coeff}"
            )));
        }
        Ok(Self {
            sigma,
            rho,
            parity,
            coeff,
        })
    }

    pub fn unit(sigma: f64, rho: f64, parity: Parity) -> Result<Self> {
        Self::new(sigma, rho, parity, Complex64::new(1.0, 0.0))
    }

    pub fn is_zero(&self) -> bool {
        self.coeff == Complex64::new(0.0, 0.0)
    }

    /// Same labels, zero amplitude.
    pub fn zeroed(&self) -> Self {
        Self {
            coeff: Complex64::new(0.0, 0.0),
            ..*self
        }
    }

    pub fn scaled(&self, k: Complex64) -> Self {
        Self {
            coeff: self.coeff * k,
            ..*self
        }
    }

    /// Multiplication by `|x|^(i delta)`.
    pub fn shift(&self, delta: f64) -> Self {
        Self {
            rho: self.rho + delta,
            ..*self
        }
    }

    /// `s = sigma - i rho`, so the state is `|x|^(-s)`.
    pub fn exponent_point(&self) -> ComplexPoint {
        ComplexPoint {
            sigma: self.sigma,
            lambda: -self.rho,
        }
    }

    /// Whether two states describe the same monomial up to `rel_tol` in `rho`.
    pub fn same_labels(&self, other: &Self, rel_tol: f64) -> bool {
        let scale = self.rho.abs().max(other.rho.abs()).max(1.0);
        self.sigma == other.sigma && self.parity == other.parity && (self.rho - other.rho).abs() <= rel_tol * scale
    }

    /// `self + sign * other`. Zero states are absorbed; otherwise the labels
    /// must agree to `rel_tol`.
    pub fn combine(&self, other: &Self, sign: f64, rel_tol: f64) -> Result<Self> {
        if other.is_zero() {
            return Ok(*self);
        }
        if self.is_zero() {
            return Ok(other.scaled(Complex64::new(sign, 0.0)));
        }
        if !self.same_labels(other, rel_tol) {
            return Err(Error::LabelMismatch(format!(
                "(sigma {}, rho {}, {:?}) vs (sigma {}, rho {}, {:?})",
                self.sigma, self.rho, self.parity, other.sigma, other.rho, other.parity
            )));
        }
        Ok(Self {
            coeff: self.coeff + other.coeff * sign,
            ..*self
        })
    }
}

/// The real, nonzero frequency `omega` of the ladder operators.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "f64", into = "f64")]
pub struct Omega(f64);

impl Omega {
    pub fn new(omega: f64) -> Result<Self> {
        if !omega.is_finite() || omega == 0.0 {
            return Err(Error::InvalidInput(format!(
                "omega must be finite and nonzero, got {omega}"
            )));
        }
        Ok(Self(omega))
    }

    /// Complex frequencies break self-adjointness and are rejected.
    pub fn from_complex(omega: Complex64) -> Result<Self> {
        if omega.im != 0.0 {
            return Err(Error::InvalidInput(format!("omega must be real, got {omega}")));
        }
        Self::new(omega.re)
    }

    pub fn value(self) -> f64 {
        self.0
    }

    pub fn half(self) -> f64 {
        self.0 / 2.0
    }
}

impl TryFrom<f64> for Omega {
    type Error = Error;

    fn try_from(value: f64) -> Result<Self> {
        Self::new(value)
    }
}

impl From<Omega> for f64 {
    fn from(value: Omega) -> f64 {
        value.0
    }
}

fn check_strip(sigma: f64) -> Result<()> {
    if sigma > 0.0 && sigma < 1.0 {
        Ok(())
    } else {
        Err(Error::Domain(format!(
            "operators act on the strip 0 < sigma < 1, got {sigma}"
        )))
    }
}

/// Eigenvalue of `O` on `|x|^(-s)`: `(1 - 2^(1-s)) zeta(s)`.
pub fn o_multiplier(s: ComplexPoint, cfg: &SeriesConfig) -> Result<Complex64> {
    Ok(prefactor(s) * zeta_right(s, cfg)?)
}

/// Eigenvalue of `O†` on `|x|^(-s)`: `(1 - 2^s) zeta(1-s)`.
pub fn o_dagger_multiplier(s: ComplexPoint, cfg: &SeriesConfig) -> Result<Complex64> {
    let r = s.reflect();
    Ok(prefactor(r) * zeta_right(r, cfg)?)
}

/// Multiplier of `A(w)` on `|x|^(-sigma + i rho)`:
/// `(1 - 2^((1-sigma) + i(rho - w/2))) zeta(sigma - i(rho - w/2))`.
pub fn a_multiplier(sigma: f64, rho: f64, omega: Omega, cfg: &SeriesConfig) -> Result<Complex64> {
    check_strip(sigma)?;
    let y = rho - omega.half();
    let s = ComplexPoint::new(sigma, -y)?;
    Ok(prefactor(s) * zeta_right(s, cfg)?)
}

/// Multiplier of `A†(w)` on `|x|^(-sigma + i rho)`:
/// `(1 - 2^(sigma - i(rho + w/2))) zeta(1 - sigma + i(rho + w/2))`.
pub fn a_dagger_multiplier(sigma: f64, rho: f64, omega: Omega, cfg: &SeriesConfig) -> Result<Complex64> {
    check_strip(sigma)?;
    let y = rho + omega.half();
    let s = ComplexPoint::new(1.0 - sigma, y)?;
    Ok(prefactor(s) * zeta_right(s, cfg)?)
}

/// Scalar eigenvalue of `H- = A†A` on `|x|^(-sigma + i rho)`.
///
/// Built as (A-type factor at `sigma - i y`) times (A†-type factor at
/// `1 - sigma + i y`) with `y = rho - w/2`; on `sigma = 1/2` the two
/// factors are exact conjugates and the product is exactly real.
pub fn eigenvalue_h_minus(sigma: f64, rho: f64, omega: Omega, cfg: &SeriesConfig) -> Result<Complex64> {
    check_strip(sigma)?;
    eigenvalue_at_offset(sigma, rho - omega.half(), cfg)
}

/// Scalar eigenvalue of `H+ = AA†`; same form with `y = rho + w/2`.
pub fn eigenvalue_h_plus(sigma: f64, rho: f64, omega: Omega, cfg: &SeriesConfig) -> Result<Complex64> {
    check_strip(sigma)?;
    eigenvalue_at_offset(sigma, rho + omega.half(), cfg)
}

fn eigenvalue_at_offset(sigma: f64, y: f64, cfg: &SeriesConfig) -> Result<Complex64> {
    let lower = ComplexPoint::new(sigma, -y)?;
    let upper = ComplexPoint::new(1.0 - sigma, y)?;
    let a = prefactor(lower) * zeta_right(lower, cfg)?;
    let b = prefactor(upper) * zeta_right(upper, cfg)?;
    Ok(a * b)
}

pub fn apply_o(state: &MonomialState, cfg: &SeriesConfig) -> Result<MonomialState> {
    check_strip(state.sigma)?;
    if state.is_zero() {
        return Ok(*state);
    }
    Ok(state.scaled(o_multiplier(state.exponent_point(), cfg)?))
}

pub fn apply_o_dagger(state: &MonomialState, cfg: &SeriesConfig) -> Result<MonomialState> {
    check_strip(state.sigma)?;
    if state.is_zero() {
        return Ok(*state);
    }
    Ok(state.scaled(o_dagger_multiplier(state.exponent_point(), cfg)?))
}

/// Lowering operator: `rho -> rho - w`.
pub fn apply_a(omega: Omega, state: &MonomialState, cfg: &SeriesConfig) -> Result<MonomialState> {
    check_strip(state.sigma)?;
    let lowered = state.shift(-omega.value());
    if state.is_zero() {
        return Ok(lowered);
    }
    let m = a_multiplier(state.sigma, state.rho, omega, cfg)?;
    Ok(lowered.scaled(m))
}

/// Raising operator: `rho -> rho + w`.
pub fn apply_a_dagger(omega: Omega, state: &MonomialState, cfg: &SeriesConfig) -> Result<MonomialState> {
    check_strip(state.sigma)?;
    let raised = state.shift(omega.value());
    if state.is_zero() {
        return Ok(raised);
    }
    let m = a_dagger_multiplier(state.sigma, state.rho, omega, cfg)?;
    Ok(raised.scaled(m))
}

pub fn apply_h_minus(omega: Omega, state: &MonomialState, cfg: &SeriesConfig) -> Result<MonomialState> {
    check_strip(state.sigma)?;
    if state.is_zero() {
        return Ok(*state);
    }
    Ok(state.scaled(eigenvalue_h_minus(state.sigma, state.rho, omega, cfg)?))
}

pub fn apply_h_plus(omega: Omega, state: &MonomialState, cfg: &SeriesConfig) -> Result<MonomialState> {
    check_strip(state.sigma)?;
    if state.is_zero() {
        return Ok(*state);
    }
    Ok(state.scaled(eigenvalue_h_plus(state.sigma, state.rho, omega, cfg)?))
}
