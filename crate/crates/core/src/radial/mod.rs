//! Bessel-representation oracle for `K(t,·)∗f` with radial data, plus the
//! stationary-phase and van der Corput machinery behind the optimality probe.

mod bessel;
mod convolution;
mod optimality;
mod profile;
mod stationary;
mod vdc;

pub use bessel::{bessel_j, recip_gamma, SERIES_LIMIT};
pub use convolution::{branch_contributions, radial_convolution, radial_convolution_with, PanelOptions};
pub use optimality::{
    annulus_threshold, choose_annulus, geometric_grid, optimality_sequence, optimality_sequence_with,
    OptimalityOptions, OptimalityPoint,
};
pub use profile::{AnnulusBump, RadialProfile, RadialSpectrum, Tent};
pub use stationary::{
    group_speed, phase_curvature, root_bracket, stationary_phase, stationary_phase_value, stationary_point,
    StationaryData, StationaryPhase,
};
pub use vdc::vdc_bound_check;
