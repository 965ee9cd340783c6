//! Numerical checks on the critical-line basis: smeared Dirac normalization,
//! discrete orthonormality on the unit circle, polynomial completeness and
//! the self-adjointness defect off the critical line.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use crate::algebra::{eigenvalue_h_minus, Omega};
use crate::error::{Error, Result};
use crate::zeta::{prefactor, zeta_right, ComplexPoint, SeriesConfig};

/// Relative size of the smeared integrand at an automatically chosen cutoff.
const AUTO_CUTOFF_DECAY: f64 = 1e-13;

/// A user-supplied cutoff is rejected above this boundary integrand.
pub const CUTOFF_LIMIT: f64 = 1e-9;

/// Gaussian window `w(rho') = exp(-((rho' - center)/width)^2)`, peak 1.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SmearWindow {
    pub center: f64,
    pub width: f64,
    /// Integration runs over `u = ln x` in `[-u_cutoff, u_cutoff]`.
    pub u_cutoff: f64,
}

impl SmearWindow {
    /// Window with the cutoff placed where the integrand has decayed to
    /// about `1e-13` of its peak.
    pub fn new(center: f64, width: f64) -> Result<Self> {
        if !(width > 0.0) || !width.is_finite() || !center.is_finite() {
            return Err(Error::InvalidInput(format!(
                "window needs finite center and width > 0, got ({center}, {width})"
            )));
        }
        // Window transform ~ exp(-width^2 u^2 / 4).
        let u_cutoff = 2.0 / width * (-AUTO_CUTOFF_DECAY.ln()).sqrt();
        Ok(Self {
            center,
            width,
            u_cutoff,
        })
    }

    pub fn with_cutoff(center: f64, width: f64, u_cutoff: f64) -> Result<Self> {
        let mut w = Self::new(center, width)?;
        if !(u_cutoff > 0.0) || !u_cutoff.is_finite() {
            return Err(Error::InvalidInput(format!(
                "u_cutoff must be positive, got {u_cutoff}"
            )));
        }
        w.u_cutoff = u_cutoff;
        Ok(w)
    }

    pub fn weight(&self, rho: f64) -> f64 {
        let z = (rho - self.center) / self.width;
        (-z * z).exp()
    }
}

/// Trapezoid estimate of `int w(rho') exp(i (rho' - rho) u) d rho'`.
fn smeared_profile(rho: f64, window: &SmearWindow, u: f64, nodes: &[f64], h: f64) -> Complex64 {
    nodes
        .iter()
        .map(|&r| Complex64::from_polar(window.weight(r), (r - rho) * u))
        .sum::<Complex64>()
        * h
}

/// `int dx psi_rho*(x) int d rho' w(rho') psi_rho'(x)` over `x > 0` for the
/// `sigma = 1/2` family, divided by `2 pi` times the window's peak.
///
/// With `x = e^u` the outer integral becomes a Fourier integral over `u`;
/// both integrals are done by the trapezoid rule. The result tends to
/// `w(rho)` as the cutoff grows, i.e. to 1 for a centered window.
pub fn smeared_inner_product(rho: f64, window: &SmearWindow) -> Result<f64> {
    if !rho.is_finite() {
        return Err(Error::InvalidInput(format!("rho must be finite, got {rho}")));
    }
    let cutoff = window.u_cutoff;
    // Inner grid: +-7 widths, step fine enough to resolve frequency `cutoff`.
    let half_span = 7.0 * window.width;
    let h_rho = 0.5 * 2.0 * PI / (cutoff + 12.0 / window.width);
    let n_rho = (2.0 * half_span / h_rho).ceil() as usize;
    let h_rho = 2.0 * half_span / n_rho as f64;
    let nodes: Vec<f64> = (0..=n_rho)
        .map(|k| window.center - half_span + k as f64 * h_rho)
        .collect();

    let peak = smeared_profile(rho, window, 0.0, &nodes, h_rho).norm();
    let boundary = smeared_profile(rho, window, cutoff, &nodes, h_rho).norm() / peak;
    if boundary > CUTOFF_LIMIT {
        return Err(Error::CutoffTooSmall {
            boundary,
            limit: CUTOFF_LIMIT,
        });
    }

    // Outer grid: the u-integrand's spectrum sits at center - rho with
    // spread ~7 widths.
    let band = (window.center - rho).abs() + half_span;
    let h_u = 0.5 * PI / band;
    let n_u = (2.0 * cutoff / h_u).ceil() as usize;
    let h_u = 2.0 * cutoff / n_u as f64;
    let mut total = Complex64::new(0.0, 0.0);
    for k in 0..=n_u {
        let u = -cutoff + k as f64 * h_u;
        let weight = if k == 0 || k == n_u { 0.5 } else { 1.0 };
        total += smeared_profile(rho, window, u, &nodes, h_rho) * weight;
    }
    total *= h_u;
    Ok(total.re / (2.0 * PI))
}

/// Trapezoid nodes on the unit circle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContourGrid {
    pub points: usize,
}

impl ContourGrid {
    pub fn new(points: usize) -> Result<Self> {
        if points == 0 {
            return Err(Error::InvalidInput("contour grid needs at least one node".into()));
        }
        Ok(Self { points })
    }

    /// Smallest grid satisfying the node-count rule for `|n - n'| <= max_gap`.
    pub fn for_max_gap(max_gap: usize) -> Self {
        Self {
            points: 4 * max_gap + 4,
        }
    }

    /// `z_j^(-k)` with the angle reduced exactly modulo the grid.
    fn inverse_power(&self, j: usize, k: i64) -> Complex64 {
        let n = self.points as i64;
        let idx = ((j as i64 % n) * (k.rem_euclid(n))) % n;
        let angle = -2.0 * PI * idx as f64 / n as f64;
        Complex64::new(angle.cos(), angle.sin())
    }
}

/// `(-i/w) contour-integral dz / z^(1 + n - n')` around the unit circle.
/// Equals `2 pi / w` when `n == n'` and 0 otherwise.
pub fn discrete_orthonormality(n: i64, n_prime: i64, omega: Omega, grid: &ContourGrid) -> Result<Complex64> {
    let gap = (n - n_prime).unsigned_abs() as usize;
    if grid.points < 4 * gap + 4 {
        return Err(Error::InvalidInput(format!(
            "contour grid of {} nodes is too coarse for |n - n'| = {gap}",
            grid.points
        )));
    }
    // z = e^(i theta): dz = i z d theta, so the integrand is i z^(-k) d theta.
    let k = n - n_prime;
    let sum: Complex64 = (0..grid.points).map(|j| grid.inverse_power(j, k)).sum();
    let d_theta = 2.0 * PI / grid.points as f64;
    let contour = Complex64::new(0.0, 1.0) * sum * d_theta;
    Ok(Complex64::new(0.0, -1.0 / omega.value()) * contour)
}

/// Gram matrix of `phi_0 .. phi_n_max` under the contour inner product.
pub fn orthonormality_matrix(n_max: usize, omega: Omega, grid: &ContourGrid) -> Result<Vec<Vec<Complex64>>> {
    (0..=n_max as i64)
        .map(|n| {
            (0..=n_max as i64)
                .map(|m| discrete_orthonormality(n, m, omega, grid))
                .collect()
        })
        .collect()
}

/// Expands `z^((i/2 + C)/w) f(z)` over `phi_n(z) = z^((i/2 + C)/w) z^n` and
/// returns the largest pointwise reconstruction error on the unit circle.
///
/// The coefficients come from projecting onto the basis with a trapezoid
/// contour rule; `f` itself is evaluated by Horner's rule for comparison.
pub fn completeness_reconstruction(f_coeffs: &[f64], omega: Omega, c: f64, sample_points: usize) -> Result<f64> {
    if f_coeffs.is_empty() || sample_points == 0 {
        return Err(Error::InvalidInput(
            "need at least one polynomial coefficient and one sample point".into(),
        ));
    }
    if !c.is_finite() || f_coeffs.iter().any(|v| !v.is_finite()) {
        return Err(Error::InvalidInput("non-finite expansion input".into()));
    }
    let degree = f_coeffs.len() - 1;
    let horner = |z: Complex64| {
        f_coeffs
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, &a| acc * z + a)
    };
    let exponent = Complex64::new(c, 0.5) / omega.value();
    let prefix = |z: Complex64| (exponent * z.ln()).exp();

    // c_n = (1/2 pi i) contour F(z) / (z^a z^(n+1)) dz
    let grid = ContourGrid::for_max_gap(degree.max(1));
    let node = |j: usize| grid.inverse_power(j, -1);
    let f_nodes: Vec<Complex64> = (0..grid.points).map(|j| horner(node(j))).collect();
    let coeffs: Vec<Complex64> = (0..=degree as i64)
        .map(|n| {
            f_nodes
                .iter()
                .enumerate()
                .map(|(j, &fz)| fz * grid.inverse_power(j, n))
                .sum::<Complex64>()
                / grid.points as f64
        })
        .collect();

    let mut worst: f64 = 0.0;
    for k in 0..sample_points {
        // Offset from the projection nodes, inside (-pi, pi].
        let theta = PI * (2.0 * (k as f64 + 0.5) / sample_points as f64 - 1.0);
        let z = Complex64::from_polar(1.0, theta);
        let expected = prefix(z) * horner(z);
        let expansion: Complex64 = coeffs
            .iter()
            .enumerate()
            .map(|(n, &cn)| cn * prefix(z) * Complex64::from_polar(1.0, n as f64 * theta))
            .sum();
        worst = worst.max((expansion - expected).norm());
    }
    Ok(worst)
}

/// The two scalar prefactors of `<H- psi_rho | psi_rho>` and
/// `<psi_rho | H- psi_rho>`, with the common divergent integral removed.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AdjointPrefactors {
    pub bra_side: Complex64,
    pub ket_side: Complex64,
}

pub fn adjoint_prefactors(sigma: f64, rho: f64, omega: Omega, cfg: &SeriesConfig) -> Result<AdjointPrefactors> {
    let y = rho - omega.half();
    // (1 - 2^(sigma + i y)) (1 - 2^(1 - sigma - i y)) zeta(sigma + i y) zeta(1 - sigma - i y)
    let p = ComplexPoint::new(sigma, y)?;
    let q = ComplexPoint::new(1.0 - sigma, -y)?;
    let bra_side = prefactor(q) * prefactor(p) * zeta_right(p, cfg)? * zeta_right(q, cfg)?;
    let ket_side = eigenvalue_h_minus(sigma, rho, omega, cfg)?;
    Ok(AdjointPrefactors { bra_side, ket_side })
}

/// `|bra_side - ket_side|`, which equals `2 |Im E|` for the `H-` eigenvalue.
pub fn self_adjointness_defect(sigma: f64, rho: f64, omega: Omega, cfg: &SeriesConfig) -> Result<f64> {
    let pre = adjoint_prefactors(sigma, rho, omega, cfg)?;
    Ok((pre.bra_side - pre.ket_side).norm())
}
