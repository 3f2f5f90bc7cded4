use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::multiplier_theory::{LebesguePair, Rational};
use crate::real::Real;
use crate::spectral::{kernel_symbol, lp_norm, wrap_around_half_width, SpectralField};

use super::datum::Datum;

/// Norms of `u(t)` for `u₀ = 0`, `u₁ = datum`.
#[derive(Debug, Clone, PartialEq)]
pub struct DecaySeries<T> {
    pub times: Vec<T>,
    /// `1/q -> ‖u(t_i)‖_q`.
    pub norms: BTreeMap<Rational, Vec<T>>,
    /// `1/p -> ‖u₁‖_p`.
    pub datum_norms: BTreeMap<Rational, T>,
}

impl<T: Real> DecaySeries<T> {
    pub fn norm_series(&self, q_inv: Rational) -> Option<&[T]> {
        self.norms.get(&q_inv).map(|v| v.as_slice())
    }
}

/// Geometric grid on `[lo, hi]` with every point moved to the nearest time
/// `≡ phase (mod 2π)`. Locking the phase of the mass oscillation keeps it out
/// of log-log slopes.
pub fn phase_locked_times<T: Real>(lo: T, hi: T, count: usize, phase: T) -> Vec<T> {
    let two_pi = T::lit(2.0) * T::PI();
    let mut out: Vec<T> = geometric_times(lo, hi, count)
        .into_iter()
        .map(|t| ((t - phase) / two_pi).round() * two_pi + phase)
        .filter(|&t| t > T::zero())
        .collect();
    out.dedup();
    out
}

/// `count` geometrically spaced times on `[lo, hi]`.
pub fn geometric_times<T: Real>(lo: T, hi: T, count: usize) -> Vec<T> {
    assert!(count >= 2 && lo > T::zero() && hi > lo, "bad time grid");
    let ratio = (hi / lo).ln() / T::from_usize_lossy(count - 1);
    (0..count).map(|i| lo * (ratio * T::from_usize_lossy(i)).exp()).collect()
}

/// Checks the wrap-around rule for a horizon `t_max`.
pub fn check_wrap_around<T: Real>(datum: &Datum<T>, t_max: T) -> Result<()> {
    let need = wrap_around_half_width(datum.x_extent.to_f64_lossy(), datum.band_limit.to_f64_lossy(), t_max.to_f64_lossy());
    let have = datum.field.geometry().half_width().to_f64_lossy();
    if have < need {
        return Err(Error::WrapAround { required: need, actual: have });
    }
    Ok(())
}

/// `u(t) = K(t)∗u₁` evaluated exactly in Fourier space.
pub fn linear_solution<T: Real>(u1: &SpectralField<T>, t: T) -> SpectralField<T> {
    u1.apply_symbol(|s| kernel_symbol(t, s))
}

pub fn run_decay<T: Real>(datum: &Datum<T>, pairs: &[LebesguePair], times: &[T]) -> Result<DecaySeries<T>> {
    if times.is_empty() || times.windows(2).any(|w| w[1] <= w[0]) || !(times[0] > T::zero()) {
        return Err(Error::Precondition("times must be positive and increasing".into()));
    }
    check_wrap_around(datum, times[times.len() - 1])?;
    let mut q_set: Vec<Rational> = pairs.iter().map(|p| p.q_inv()).collect();
    q_set.sort();
    q_set.dedup();
    let mut p_set: Vec<Rational> = pairs.iter().map(|p| p.p_inv()).collect();
    p_set.sort();
    p_set.dedup();
    let rows: Vec<Vec<T>> = times
        .par_iter()
        .map(|&t| {
            let u = linear_solution(&datum.field, t);
            q_set.iter().map(|&q| lp_norm(&u, q)).collect()
        })
        .collect();
    let mut norms = BTreeMap::new();
    for (j, &q) in q_set.iter().enumerate() {
        norms.insert(q, rows.iter().map(|r| r[j]).collect());
    }
    let datum_norms = p_set.iter().map(|&p| (p, lp_norm(&datum.field, p))).collect();
    Ok(DecaySeries { times: times.to_vec(), norms, datum_norms })
}
