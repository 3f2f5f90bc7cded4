//! Exact Fourier-space evolution of the linear plate equation with mass on a
//! periodic box, with norms, energy and frequency localization.

mod fft;
mod field;
mod grid;
mod io;
mod norms;
mod propagator;
mod split;

pub use fft::Transform;
pub use field::SpectralField;
pub use grid::{signed_index, GridGeometry, PADDED_LIMIT, ZOOM};
pub use io::{read_field, write_field};
pub use norms::{lp_norm, lp_norm_raw, sup_norm};
pub use propagator::{cosine_symbol, energy, kernel_symbol, propagate, EvolutionState, RotationTable};
pub use split::{dyadic_piece, dyadic_range, frequency_split, low_high_split};

/// Required half width for waves of frequency at most `xi_dat` up to `t_max`:
/// `1.2 (x_support + 4 xi_dat t_max)`.
pub fn wrap_around_half_width(x_support: f64, xi_dat: f64, t_max: f64) -> f64 {
    1.2 * (x_support + 4.0 * xi_dat * t_max)
}
