use crate::error::{Error, Result};
use crate::quadrature::GaussLegendre;
use crate::real::Real;

const SAMPLES: usize = 257;

/// `|∫_a^b e^{i h}| · λ` for a phase with monotone derivative and `|h'| >= λ`.
/// The product is bounded by an absolute constant (3 suffices).
pub fn vdc_bound_check<T: Real>(
    lambda: T,
    interval: (T, T),
    phase: impl Fn(T) -> T,
    phase_derivative: impl Fn(T) -> T,
) -> Result<T> {
    let (a, b) = interval;
    if !(lambda > T::zero()) {
        return Err(Error::Precondition(format!("lambda = {lambda} must be positive")));
    }
    if !(b > a) {
        return Err(Error::Precondition(format!("empty interval [{a}, {b}]")));
    }
    let step = (b - a) / T::from_usize_lossy(SAMPLES - 1);
    let derivs: Vec<T> = (0..SAMPLES).map(|i| phase_derivative(a + step * T::from_usize_lossy(i))).collect();
    let slack = T::one() - T::tol(64.0);
    if let Some(bad) = derivs.iter().find(|d| d.abs() < lambda * slack) {
        return Err(Error::Precondition(format!("|h'| = {} falls below lambda = {lambda}", bad.abs())));
    }
    let rising = derivs.windows(2).all(|w| w[1] >= w[0]);
    let falling = derivs.windows(2).all(|w| w[1] <= w[0]);
    if !(rising || falling) {
        return Err(Error::Precondition("phase is neither convex nor concave on the interval".into()));
    }
    let rule = GaussLegendre::<T>::new(8);
    let quarter = T::FRAC_PI_4();
    let cap = (b - a) / T::lit(8.0);
    let (mut re, mut im) = (T::zero(), T::zero());
    let mut y = a;
    while y < b {
        let mut w = (quarter / phase_derivative(y).abs()).min(cap);
        let ahead = phase_derivative((y + w).min(b)).abs();
        w = (quarter / ahead.max(phase_derivative(y).abs())).min(cap);
        let end = (y + w).min(b);
        re = re + rule.integrate(y, end, |s| phase(s).cos());
        im = im + rule.integrate(y, end, |s| phase(s).sin());
        y = end;
    }
    Ok((re * re + im * im).sqrt() * lambda)
}
