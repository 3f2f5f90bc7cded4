//! Spectral simulation and verification toolkit for the plate equation with
//! mass, `u_tt + Δ²u + u = f(u)`.
//!
//! Numerical kernels are generic over [`Real`] (`f32`/`f64`); exponent
//! bookkeeping is exact rational arithmetic. The `*64` aliases below are the
//! concrete types used by the experiment drivers and the command line tool.

// `!(x > 0.0)` is the NaN-rejecting form used throughout.
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)]

pub mod cli;
pub mod cutoff;
pub mod decay_lab;
pub mod error;
pub mod jet;
pub mod multiplier_theory;
pub mod nonexistence;
pub mod quadrature;
pub mod radial;
pub mod real;
pub mod semilinear;
pub mod spectral;

pub use error::{Error, Result};
pub use real::Real;

pub type GridGeometry64 = spectral::GridGeometry<f64>;
pub type SpectralField64 = spectral::SpectralField<f64>;
pub type EvolutionState64 = spectral::EvolutionState<f64>;
