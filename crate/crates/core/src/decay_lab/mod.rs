//! Experiment harness: data, linear evolutions, slope fits and verdicts
//! against the predicted exponents.

mod datum;
mod experiment;
mod fit;
mod series;
mod verdict;

pub use datum::{make_datum, measured_band_limit, Datum, DatumKind, DatumSpec, BAND_TOLERANCE};
pub use experiment::{default_tolerance, run_linear_decay, FitRow, LinearDecayConfig, LinearDecayReport, Regime};
pub use fit::{fit_power_law, fit_slope, least_squares, LogFit, SlopeFit, MIN_SAMPLES};
pub use series::{
    check_wrap_around, geometric_times, linear_solution, phase_locked_times, run_decay, DecaySeries,
};
pub use verdict::{classify_exponent, verdict, Verdict};
