//! Test-function method for the nonexistence result: exact exponent windows,
//! the rescaled cutoffs `ψ_τ`, the datum pairing and the weak-form Hölder chain.

mod exponents;
mod test_function;
mod weak;

pub use exponents::{conjugate, exponent_conditions, verdict_table, NonexistenceVerdict, Outcome};
pub use test_function::{
    ball_volume, datum_pairing, datum_pairing_on_grid, datum_scaling, eta_integral, eta_power_constant,
    phi_integral, phi_power_constant, sphere_area, DatumScaling, TestFunctionPair,
};
pub use weak::{holder_bound, holder_check, holder_constant, weak_pairing, HolderCheck, SpaceTimeField, WeakPairing};
