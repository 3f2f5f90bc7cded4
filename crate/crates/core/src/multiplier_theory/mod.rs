//! Exact exponent bookkeeping for L^p–L^q decay of the plate equation with mass.
//!
//! Everything here is rational arithmetic; floats only appear in `to_f64` helpers
//! used by the fitting code.

mod critical;
mod exponents;
mod pair;
mod table;

pub use critical::{critical_exponents, CriticalExponents};
pub use exponents::{
    beta, classify, d_pl, gamma, nonsingular_small_time, predict, region, Admissibility, Region,
    TheoryPrediction,
};
pub use pair::{LebesguePair, Rational};
pub use table::{theory_table, TableRow};

/// Lossy conversion used where exponents meet floating-point data.
pub fn to_f64(r: Rational) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

/// `Rational` from numerator and denominator.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(num, den)
}
