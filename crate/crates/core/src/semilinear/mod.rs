//! Semilinear problem `u_tt + Δ²u + u = |u|^α`: exponential collocation
//! stepper, small-data runs, Picard contraction and the auxiliary time integral.

mod auxiliary;
mod contraction;
mod nonlinearity;
mod run;
mod step;

pub use auxiliary::{auxiliary_integral, auxiliary_integral_exponential, envelope, AuxiliaryValue};
pub use contraction::{contraction_diagnostic, ContractionReport};
pub use nonlinearity::{dealias_mask, nonlinearity, power_difference};
pub use run::{
    find_small_data_threshold, initial_data, linear_weighted_norm, run, weight, weight_exponent, InitialData,
    RunRecord, RunStatus, Sampling, SemilinearConfig, ThresholdSearch,
};
pub use step::{duhamel_step, duhamel_step_with_coupling, QuadratureRule, Stepper};
