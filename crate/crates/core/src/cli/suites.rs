//! Seeded invariant suites behind `susyzeta verify`.
//!
//! Every suite draws from its own ChaCha stream of the run seed, so a suite
//! gives the same lines whether it runs alone or as part of `all`.

use std::fmt::Write as _;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{
    a_dagger_multiplier, a_multiplier, apply_a, apply_a_dagger, apply_h_minus, apply_h_plus, apply_o, apply_o_dagger,
    eigenvalue_h_minus, eigenvalue_h_plus, MonomialState, Omega, Parity,
};
use crate::basis::{
    completeness_reconstruction, discrete_orthonormality, orthonormality_matrix, self_adjointness_defect,
    smeared_inner_product, ContourGrid, SmearWindow,
};
use crate::error::Result;
use crate::model::{
    anticommutator_q, apply_h, apply_q, apply_q_dagger, b_operator_check, build_spectrum, commutator_q_dagger_h,
    commutator_q_h, ground_state, isospectral_report, ladder_tolerance, DoubletState, ModelConfig, ISOSPECTRAL_TOL,
};
use crate::zeros::{scan, ScanConfig};
use crate::zeta::SeriesConfig;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Algebra,
    Basis,
    SelfAdjoint,
    All,
}

impl Suite {
    pub fn as_str(self) -> &'static str {
        match self {
            Suite::Algebra => "algebra",
            Suite::Basis => "basis",
            Suite::SelfAdjoint => "selfadjoint",
            Suite::All => "all",
        }
    }

    fn parts(self) -> &'static [Suite] {
        match self {
            Suite::All => &[Suite::Algebra, Suite::Basis, Suite::SelfAdjoint],
            Suite::Algebra => &[Suite::Algebra],
            Suite::Basis => &[Suite::Basis],
            Suite::SelfAdjoint => &[Suite::SelfAdjoint],
        }
    }

    fn stream(self) -> u64 {
        match self {
            Suite::Algebra => 1,
            Suite::Basis => 2,
            Suite::SelfAdjoint => 3,
            Suite::All => 0,
        }
    }
}

impl std::str::FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "algebra" => Ok(Suite::Algebra),
            "basis" => Ok(Suite::Basis),
            "selfadjoint" => Ok(Suite::SelfAdjoint),
            "all" => Ok(Suite::All),
            other => Err(format!(
                "unknown suite {other:?}; expected algebra|basis|selfadjoint|all"
            )),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteReport {
    pub suite: Suite,
    pub seed: u64,
    pub checks: Vec<Check>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn first_failure(&self) -> Option<&Check> {
        self.checks.iter().find(|c| !c.passed)
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "# susyzeta {} verify suite={} seed={}",
            env!("CARGO_PKG_VERSION"),
            self.suite.as_str(),
            self.seed
        );
        for c in &self.checks {
            let tag = if c.passed { "PASS" } else { "FAIL" };
            let _ = writeln!(out, "{tag} {} {}", c.name, c.detail);
        }
        let failed = self.checks.iter().filter(|c| !c.passed).count();
        let _ = writeln!(out, "summary: {} passed, {failed} failed", self.checks.len() - failed);
        out
    }
}

pub fn run_suite(suite: Suite, seed: u64) -> SuiteReport {
    let series = SeriesConfig::default();
    let mut checks = Vec::new();
    for &part in suite.parts() {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(part.stream());
        match part {
            Suite::Algebra => algebra_checks(&mut rng, &series, &mut checks),
            Suite::Basis => basis_checks(&mut rng, &mut checks),
            Suite::SelfAdjoint => selfadjoint_checks(&mut rng, &series, &mut checks),
            Suite::All => unreachable!(),
        }
    }
    SuiteReport { suite, seed, checks }
}

/// `|a - b| / max(|a|, |b|)`, zero when both vanish.
pub fn rel_dev(a: Complex64, b: Complex64) -> f64 {
    let scale = a.norm().max(b.norm());
    if scale == 0.0 {
        0.0
    } else {
        (a - b).norm() / scale
    }
}

fn sci(v: f64) -> String {
    format!("{v:.3e}")
}

/// Records a check whose measured worst case must stay at or below `tol`.
fn at_most(out: &mut Vec<Check>, name: &str, samples: usize, worst: Result<f64>, tol: f64) {
    out.push(match worst {
        Ok(w) => Check {
            name: name.into(),
            passed: w <= tol,
            detail: format!("samples={samples} worst={} tol={}", sci(w), sci(tol)),
        },
        Err(e) => errored(name, e),
    });
}

/// Records a check whose measured best case must stay strictly above `floor`.
fn above(out: &mut Vec<Check>, name: &str, samples: usize, best: Result<f64>, floor: f64) {
    out.push(match best {
        Ok(b) => Check {
            name: name.into(),
            passed: b > floor,
            detail: format!("samples={samples} min={} floor={}", sci(b), sci(floor)),
        },
        Err(e) => errored(name, e),
    });
}

fn errored(name: &str, e: crate::error::Error) -> Check {
    Check {
        name: name.into(),
        passed: false,
        detail: format!("error: {e}"),
    }
}

fn random_state(rng: &mut ChaCha8Rng) -> Result<MonomialState> {
    let parity = if rng.gen_bool(0.5) { Parity::Even } else { Parity::Odd };
    MonomialState::new(
        rng.gen_range(0.05..0.95),
        rng.gen_range(-20.0..20.0),
        parity,
        Complex64::new(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0)),
    )
}

fn random_omega(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> Result<Omega> {
    Omega::new(rng.gen_range(lo..hi))
}

fn random_doublet(rng: &mut ChaCha8Rng) -> Result<DoubletState> {
    let sigma = rng.gen_range(0.05..0.95);
    let parity = if rng.gen_bool(0.5) { Parity::Even } else { Parity::Odd };
    let mut side = || {
        MonomialState::new(
            sigma,
            rng.gen_range(-15.0..15.0),
            parity,
            Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)),
        )
    };
    let top = side()?;
    let bottom = side()?;
    DoubletState::new(top, bottom)
}

/// Runs `f` on `n` draws and keeps the largest value.
fn worst_of(n: usize, mut f: impl FnMut() -> Result<f64>) -> Result<f64> {
    (0..n).try_fold(0.0f64, |acc, _| Ok(acc.max(f()?)))
}

/// Coefficient deviation, or infinity when the labels disagree.
fn labels_dev(a: &MonomialState, b: &MonomialState, rel: f64) -> f64 {
    if a.same_labels(b, rel) {
        rel_dev(a.coeff, b.coeff)
    } else {
        f64::INFINITY
    }
}

fn algebra_checks(rng: &mut ChaCha8Rng, series: &SeriesConfig, out: &mut Vec<Check>) {
    const N: usize = 50;

    let w = worst_of(N, || {
        let st = random_state(rng)?;
        let a = apply_o(&apply_o_dagger(&st, series)?, series)?;
        let b = apply_o_dagger(&apply_o(&st, series)?, series)?;
        Ok(labels_dev(&a, &b, 0.0))
    });
    at_most(out, "algebra.o_commutes_with_o_dagger", N, w, 1e-12);

    let w = worst_of(N, || {
        let omega = random_omega(rng, 0.2, 6.0)?;
        let st = random_state(rng)?;
        let h = apply_h_minus(omega, &st, series)?;
        let chain = apply_a_dagger(omega, &apply_a(omega, &st, series)?, series)?;
        Ok(labels_dev(&h, &chain, 1e-12))
    });
    at_most(out, "algebra.h_minus_is_a_dagger_a", N, w, 1e-12);

    let w = worst_of(N, || {
        let omega = random_omega(rng, 0.2, 6.0)?;
        let st = random_state(rng)?;
        let h = apply_h_plus(omega, &st, series)?;
        let chain = apply_a(omega, &apply_a_dagger(omega, &st, series)?, series)?;
        Ok(labels_dev(&h, &chain, 1e-12))
    });
    at_most(out, "algebra.h_plus_is_a_a_dagger", N, w, 1e-12);

    let w = worst_of(N, || {
        let omega = random_omega(rng, 0.2, 6.0)?;
        let st = random_state(rng)?;
        let lo = apply_a(omega, &st, series)?;
        let hi = apply_a_dagger(omega, &st, series)?;
        let exact = lo.rho == st.rho - omega.value()
            && hi.rho == st.rho + omega.value()
            && [lo, hi].iter().all(|s| s.sigma == st.sigma && s.parity == st.parity);
        Ok(if exact { 0.0 } else { 1.0 })
    });
    at_most(out, "algebra.ladder_labels_exact", N, w, 0.0);

    let w = worst_of(N, || {
        let omega = random_omega(rng, 0.2, 6.0)?;
        let st = random_state(rng)?;
        let direct = apply_a(omega, &st, series)?;
        let chain = apply_o(&st.shift(-omega.half()), series)?.shift(-omega.half());
        Ok(labels_dev(&direct, &chain, 1e-12))
    });
    at_most(out, "algebra.lowering_is_conjugated_o", N, w, 1e-12);

    let w = worst_of(2 * N, || {
        let omega = random_omega(rng, 0.2, 6.0)?;
        let rho = rng.gen_range(-25.0..25.0);
        let up = a_dagger_multiplier(0.5, rho, omega, series)?;
        let down = a_multiplier(0.5, rho + omega.value(), omega, series)?;
        Ok(rel_dev(up, down.conj()))
    });
    at_most(out, "algebra.adjoint_multiplier_pairing", 2 * N, w, 1e-10);

    let w = worst_of(N, || {
        let omega = random_omega(rng, 0.2, 6.0)?;
        let rho = rng.gen_range(-25.0..25.0);
        let ev = eigenvalue_h_minus(0.5, rho, omega, series)?;
        Ok(if ev.re < 0.0 {
            f64::INFINITY
        } else {
            ev.im.abs() / ev.norm().max(1.0)
        })
    });
    at_most(out, "algebra.critical_line_spectrum_real", N, w, 1e-12);

    let w = worst_of(N, || {
        let omega = random_omega(rng, 0.2, 6.0)?;
        let sigma = rng.gen_range(0.05..0.95);
        let rho = rng.gen_range(-20.0..20.0);
        let plus = eigenvalue_h_plus(sigma, rho - omega.value(), omega, series)?;
        let minus = eigenvalue_h_minus(sigma, rho, omega, series)?;
        Ok(rel_dev(plus, minus))
    });
    at_most(out, "algebra.isospectral_shift", N, w, 1e-10);

    susy_checks(rng, series, out);
}

fn susy_checks(rng: &mut ChaCha8Rng, series: &SeriesConfig, out: &mut Vec<Check>) {
    const N: usize = 50;
    const N_MAX: usize = 16;

    let zeros = ScanConfig::new(10.0, 30.0).and_then(|c| scan(&c, series));
    let zeros = match zeros {
        Ok(z) => z,
        Err(e) => {
            out.push(errored("susy.zeros_for_vacua", e));
            return;
        }
    };
    out.push(Check {
        name: "susy.zeros_for_vacua".into(),
        passed: zeros.len() == 3,
        detail: format!("found={} expected=3 range=[10,30]", zeros.len()),
    });

    // One model per refined zero, plus one off-zero lambda* where the tower
    // still has to be consistent.
    let mut models = Vec::new();
    for z in &zeros {
        match random_omega(rng, 0.5, 3.0).and_then(|w| ModelConfig::new(w, z.lambda_star, N_MAX, *series)) {
            Ok(m) => models.push(m),
            Err(e) => {
                out.push(errored("susy.model_setup", e));
                return;
            }
        }
    }
    let vacua = models.len();
    match random_omega(rng, 0.5, 3.0).and_then(|w| ModelConfig::new(w, rng.gen_range(2.0..10.0), N_MAX, *series)) {
        Ok(m) => models.push(m),
        Err(e) => {
            out.push(errored("susy.model_setup", e));
            return;
        }
    }

    let w = models[..vacua].iter().try_fold(0.0f64, |acc, m| {
        Ok(acc.max(apply_a(m.omega, &ground_state(m), series)?.coeff.norm()))
    });
    at_most(out, "susy.ground_state_annihilated", vacua, w, 1e-8);

    let w = models.iter().try_fold(0.0f64, |acc, m| {
        let min_e = build_spectrum(m)?
            .iter()
            .map(|l| l.energy)
            .fold(f64::INFINITY, f64::min);
        Ok(acc.max(-min_e))
    });
    at_most(
        out,
        "susy.energies_nonnegative",
        models.len(),
        w.map(|v: f64| v.max(0.0)),
        0.0,
    );

    let w = models
        .iter()
        .try_fold(0.0f64, |acc, m| Ok(acc.max(isospectral_report(m)?.max_deviation)));
    at_most(out, "susy.partner_isospectral", models.len(), w, ISOSPECTRAL_TOL);

    // n-fold raising from psi_0 against the closed-form C_n, measured in
    // units of the per-level tolerance.
    let w = models.iter().try_fold(0.0f64, |acc, m| {
        let levels = build_spectrum(m)?;
        let mut psi = ground_state(m);
        let mut worst = acc;
        for level in levels.iter().skip(1) {
            psi = apply_a_dagger(m.omega, &psi, series)?;
            worst = worst.max(rel_dev(psi.coeff, level.c) / ladder_tolerance(level.n));
        }
        Ok(worst)
    });
    at_most(out, "susy.ladder_reproduces_c_n", models.len(), w, 1.0);

    // Lowering C_n psi_n must give C~_n = E_n C_(n-1).
    let w = models.iter().try_fold(0.0f64, |acc, m| {
        let levels = build_spectrum(m)?;
        let mut worst = acc;
        for pair in levels.windows(2) {
            let (prev, level) = (&pair[0], &pair[1]);
            let psi = MonomialState::new(0.5, level.psi_rho, Parity::Even, level.c)?;
            let lowered = apply_a(m.omega, &psi, series)?;
            worst = worst
                .max(rel_dev(lowered.coeff, level.c_tilde))
                .max(rel_dev(level.c_tilde, prev.c * level.energy));
        }
        Ok(worst)
    });
    at_most(out, "susy.c_tilde_identity", models.len(), w, 1e-12);

    let w = worst_of(N, || {
        let omega = random_omega(rng, 0.3, 4.0)?;
        let d = random_doublet(rng)?;
        let qq = apply_q(omega, &apply_q(omega, &d, series)?, series)?;
        let qdqd = apply_q_dagger(omega, &apply_q_dagger(omega, &d, series)?, series)?;
        Ok(qq.max_coeff().max(qdqd.max_coeff()))
    });
    at_most(out, "susy.supercharge_nilpotent", N, w, 0.0);

    let w = worst_of(N, || {
        let omega = random_omega(rng, 0.3, 4.0)?;
        let d = random_doublet(rng)?;
        let anti = anticommutator_q(omega, &d, series)?;
        let h = apply_h(omega, &d, series)?;
        Ok(labels_dev(&anti.top, &h.top, 1e-12).max(labels_dev(&anti.bottom, &h.bottom, 1e-12)))
    });
    at_most(out, "susy.anticommutator_is_h", N, w, 1e-12);

    let w = worst_of(N, || {
        let omega = random_omega(rng, 0.3, 4.0)?;
        let d = random_doublet(rng)?;
        let scale = apply_h(omega, &d, series)?.max_coeff().max(d.max_coeff()).max(1.0);
        let c1 = commutator_q_h(omega, &d, series)?.max_coeff();
        let c2 = commutator_q_dagger_h(omega, &d, series)?.max_coeff();
        Ok(c1.max(c2) / scale)
    });
    at_most(out, "susy.charges_commute_with_h", N, w, 1e-12);

    let pairs = 20;
    let w = worst_of(pairs, || {
        let mut w = 0.0;
        while w == 0.0 {
            w = rng.gen_range(-10.0..10.0);
        }
        let lambda = rng.gen_range(-60.0..60.0);
        let cfg = ModelConfig::new(Omega::new(w)?, lambda, 1, *series)?;
        let got = b_operator_check(&cfg)?;
        Ok(if got == lambda {
            0.0
        } else {
            (got - lambda).abs().max(f64::MIN_POSITIVE)
        })
    });
    at_most(out, "susy.b_operator_exact", pairs, w, 0.0);
}

fn basis_checks(rng: &mut ChaCha8Rng, out: &mut Vec<Check>) {
    const N_MAX: usize = 16;

    let grids = 3;
    let w = worst_of(grids, || {
        let omega = random_omega(rng, 0.3, 5.0)?;
        let target = 2.0 * std::f64::consts::PI / omega.value();
        let m = orthonormality_matrix(N_MAX, omega, &ContourGrid::for_max_gap(N_MAX))?;
        let mut worst = 0.0f64;
        for (i, row) in m.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                let expect = if i == j { target } else { 0.0 };
                worst = worst.max((v - Complex64::new(expect, 0.0)).norm());
            }
        }
        Ok(worst)
    });
    at_most(out, "basis.discrete_orthonormality", grids, w, 1e-12);

    let coarse = Omega::new(1.0).and_then(|w| Ok(discrete_orthonormality(N_MAX as i64, 0, w, &ContourGrid::new(8)?)));
    out.push(Check {
        name: "basis.coarse_grid_rejected".into(),
        passed: matches!(coarse, Ok(Err(_))),
        detail: "grid=8 gap=16".into(),
    });

    let windows = 5;
    let w = worst_of(windows, || {
        let rho = rng.gen_range(-30.0..30.0);
        let window = SmearWindow::new(rho, rng.gen_range(0.25..1.0))?;
        Ok((smeared_inner_product(rho, &window)? - 1.0).abs())
    });
    at_most(out, "basis.smeared_norm", windows, w, 1e-6);

    let w = worst_of(windows, || {
        let rho = rng.gen_range(-30.0..30.0);
        let width = rng.gen_range(0.25..1.0);
        let window = SmearWindow::new(rho + 5.0 * width, width)?;
        Ok(smeared_inner_product(rho, &window)?.abs())
    });
    at_most(out, "basis.smeared_off_center", windows, w, 1e-6);

    let polys = 11;
    let w = (0..polys).try_fold(0.0f64, |acc, i| {
        let degree = if i == 0 { 32 } else { rng.gen_range(0..=32) };
        let coeffs: Vec<f64> = (0..=degree).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let omega = random_omega(rng, 1.0, 4.0)?;
        let c = rng.gen_range(-5.0..5.0);
        Ok(acc.max(completeness_reconstruction(&coeffs, omega, c, 64)?))
    });
    at_most(out, "basis.polynomial_completeness", polys, w, 1e-12);
}

fn selfadjoint_checks(rng: &mut ChaCha8Rng, series: &SeriesConfig, out: &mut Vec<Check>) {
    const N: usize = 20;

    let w = worst_of(N, || {
        let omega = random_omega(rng, 0.2, 5.0)?;
        let rho = rng.gen_range(-20.0..20.0);
        self_adjointness_defect(0.5, rho, omega, series)
    });
    at_most(out, "selfadjoint.defect_at_sigma_half", N, w, 1e-12);

    // Off the line, keep rho - w/2 away from 0 where every argument is real.
    let mut off_line = || -> Result<(f64, f64, Omega)> {
        let offset = rng.gen_range(0.1..0.45);
        let sigma = if rng.gen_bool(0.5) { 0.5 + offset } else { 0.5 - offset };
        let omega = random_omega(rng, 0.2, 5.0)?;
        let y = rng.gen_range(0.5..20.0) * if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
        Ok((sigma, y + omega.half(), omega))
    };
    let samples: Result<Vec<_>> = (0..N).map(|_| off_line()).collect();
    let best = samples.as_ref().map_err(Clone::clone).and_then(|s| {
        s.iter().try_fold(f64::INFINITY, |acc, &(sigma, rho, omega)| {
            Ok(acc.min(self_adjointness_defect(sigma, rho, omega, series)?))
        })
    });
    above(out, "selfadjoint.defect_off_line", N, best, 1e-10);

    let w = samples.and_then(|s| {
        s.iter().try_fold(0.0f64, |acc, &(sigma, rho, omega)| {
            let ev = eigenvalue_h_minus(sigma, rho, omega, series)?;
            let d = self_adjointness_defect(sigma, rho, omega, series)?;
            Ok(acc.max((d - 2.0 * ev.im.abs()).abs() / ev.norm().max(1.0)))
        })
    });
    at_most(out, "selfadjoint.defect_is_twice_imaginary", N, w, 1e-12);
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_parse() {
        for s in [Suite::Algebra, Suite::Basis, Suite::SelfAdjoint, Suite::All] {
            assert_eq!(s.as_str().parse::<Suite>().unwrap(), s);
        }
        assert!("everything".parse::<Suite>().is_err());
    }

    #[test]
    fn selfadjoint_suite_passes_and_is_deterministic() {
        let a = run_suite(Suite::SelfAdjoint, 42);
        assert!(a.passed(), "{}", a.render());
        assert_eq!(a.render(), run_suite(Suite::SelfAdjoint, 42).render());
        assert!(a.render().contains("PASS selfadjoint.defect_at_sigma_half"));
    }

    #[test]
    fn suite_lines_do_not_depend_on_grouping() {
        let alone = run_suite(Suite::Basis, 9).render();
        let all = run_suite(Suite::All, 9).render();
        for line in alone.lines().filter(|l| l.starts_with("PASS") || l.starts_with("FAIL")) {
            assert!(all.contains(line), "{line}");
        }
    }
}
