//! A supersymmetric quantum-mechanical model whose energies are products of
//! Riemann zeta values, and a critical-line zero finder built on its
//! vanishing ground-state energy.
//!
//! Module map:
//!
//! * [`zeta`]: eta/zeta evaluation (alternating series, reflection formula)
//! * [`algebra`]: scale-transformation and ladder operators on monomials
//! * [`model`]: partner Hamiltonians, spectrum tower, supercharges
//! * [`zeros`]: zero finding by minimizing the ground-state energy
//! * [`basis`]: normalization, orthonormality, completeness, self-adjointness
//! * [`cli`]: file formats, manifests, the zero cache and verification suites

// `!(a < b)` is used on purpose so NaN inputs are rejected too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod algebra;
pub mod basis;
pub mod cli;
pub mod error;
pub mod gamma;
pub mod model;
pub mod zeros;
pub mod zeta;

pub use algebra::{MonomialState, Omega, Parity};
pub use error::{Error, Result};
pub use model::{DoubletState, ModelConfig, SpectrumLevel};
pub use zeros::{ScanConfig, ZeroRecord};
pub use zeta::{Acceleration, ComplexPoint, SeriesConfig};
