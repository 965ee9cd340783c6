use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("pole at s=1")]
    Pole,

    #[error("prefactor 1-2^(1-s) is singular at s = {sigma}{lambda:+}i (|prefactor| = {magnitude:e})")]
    PrefactorSingular { sigma: f64, lambda: f64, magnitude: f64 },

    #[error("series did not reach the requested accuracy within {max_terms} terms (needs {needed})")]
    NonConvergent { max_terms: usize, needed: usize },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("tolerance exceeded at level {level}: deviation {deviation:e} > {tolerance:e}")]
    ToleranceExceeded {
        level: usize,
        deviation: f64,
        tolerance: f64,
    },

    #[error("state labels do not match: {0}")]
    LabelMismatch(String),

    #[error("refinement stalled after {iterations} iterations with bracket [{lo}, {hi}]")]
    RefinementStalled { lo: f64, hi: f64, iterations: usize },

    #[error("no interior minimum of the ground-state energy in [{lo}, {hi}]")]
    NoInteriorMinimum { lo: f64, hi: f64 },

    #[error("integration cutoff too small: boundary integrand {boundary:e} exceeds {limit:e}")]
    CutoffTooSmall { boundary: f64, limit: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
