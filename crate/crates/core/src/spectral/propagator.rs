use num_complex::Complex;

use crate::error::{Error, Result};
use crate::real::{bracket, Real};

use super::field::SpectralField;
use super::grid::GridGeometry;

/// `sin(t ω)/ω` with `ω = √(1+|ξ|⁴)`; the multiplier applied to `u₁`.
pub fn kernel_symbol<T: Real>(t: T, xi_sq: T) -> T {
    let w = bracket(xi_sq);
    (t * w).sin() / w
}

/// `cos(t ω)`; the multiplier applied to `u₀`.
pub fn cosine_symbol<T: Real>(t: T, xi_sq: T) -> T {
    (t * bracket(xi_sq)).cos()
}

/// `(u, u_t)` at time `t`.
#[derive(Debug, Clone)]
pub struct EvolutionState<T: Real> {
    pub t: T,
    pub u: SpectralField<T>,
    pub ut: SpectralField<T>,
}

impl<T: Real> EvolutionState<T> {
    pub fn new(t: T, u: SpectralField<T>, ut: SpectralField<T>) -> Result<Self> {
        u.check_same(&ut)?;
        Ok(Self { t, u, ut })
    }

    /// `u₀ = 0`, `u_t = u₁` at `t = 0`.
    pub fn from_velocity(u1: SpectralField<T>) -> Self {
        Self { t: T::zero(), u: SpectralField::zeros(u1.geometry()), ut: u1 }
    }

    pub fn geometry(&self) -> &GridGeometry<T> {
        self.u.geometry()
    }
}

/// Per-mode cosine, `sin/ω` and `ω sin` tables for a fixed step.
#[derive(Debug, Clone)]
pub struct RotationTable<T> {
    pub cos: Vec<T>,
    pub sin_over_omega: Vec<T>,
    pub omega_sin: Vec<T>,
}

impl<T: Real> RotationTable<T> {
    pub fn new(geometry: &GridGeometry<T>, dt: T) -> Self {
        let total = geometry.total();
        let mut cos = Vec::with_capacity(total);
        let mut sin_over_omega = Vec::with_capacity(total);
        let mut omega_sin = Vec::with_capacity(total);
        for &s in geometry.xi_sq() {
            let w = bracket(s);
            let (sn, cs) = (dt * w).sin_cos();
            cos.push(cs);
            sin_over_omega.push(sn / w);
            omega_sin.push(w * sn);
        }
        Self { cos, sin_over_omega, omega_sin }
    }

    /// In-place exact rotation of `(û, û_t)`.
    pub fn rotate(&self, u: &mut [Complex<T>], ut: &mut [Complex<T>]) {
        for i in 0..u.len() {
            let (a, b) = (u[i], ut[i]);
            u[i] = a * self.cos[i] + b * self.sin_over_omega[i];
            ut[i] = b * self.cos[i] - a * self.omega_sin[i];
        }
    }
}

/// Exact evolution by `dt` (negative `dt` runs backwards).
pub fn propagate<T: Real>(state: &EvolutionState<T>, dt: T) -> Result<EvolutionState<T>> {
    state.u.check_same(&state.ut)?;
    if !dt.is_finite() {
        return Err(Error::Precondition(format!("step {dt} is not finite")));
    }
    let g = state.geometry();
    let table = RotationTable::new(g, dt);
    let mut u = state.u.coeffs().to_vec();
    let mut ut = state.ut.coeffs().to_vec();
    table.rotate(&mut u, &mut ut);
    Ok(EvolutionState {
        t: state.t + dt,
        u: SpectralField::from_hermitian_coeffs(g, u),
        ut: SpectralField::from_hermitian_coeffs(g, ut),
    })
}

/// `½∫ |u_t|² + |Δu|² + |u|²` via Plancherel on the grid.
pub fn energy<T: Real>(state: &EvolutionState<T>) -> T {
    let g = state.geometry();
    let total = T::from_usize_lossy(g.total());
    let weight = g.cell_volume() / total;
    let mut acc = T::zero();
    for ((u, ut), &s) in state.u.coeffs().iter().zip(state.ut.coeffs()).zip(g.xi_sq()) {
        acc = acc + ut.norm_sqr() + (T::one() + s * s) * u.norm_sqr();
    }
    T::lit(0.5) * weight * acc
}
