use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::real::Real;

use super::convolution::{radial_convolution_with, PanelOptions};
use super::profile::RadialSpectrum;
use super::stationary::{stationary_phase, stationary_point, StationaryPhase};

/// Smallest `a` with a nonempty annulus: `a*² = 4/(√2 - 1)`.
pub fn annulus_threshold<T: Real>() -> T {
    (T::lit(4.0) / (T::SQRT_2() - T::one())).sqrt()
}

/// `b = √2 a³/(4 + a²)`; fails unless `a < b`.
pub fn choose_annulus<T: Real>(a: T) -> Result<(T, T)> {
    if !(a > T::zero()) {
        return Err(Error::Infeasible(format!("a = {a} must be positive")));
    }
    let b = T::SQRT_2() * a * a * a / (T::lit(4.0) + a * a);
    if b <= a {
        return Err(Error::Infeasible(format!(
            "b = √2a³/(4+a²) = {b} does not exceed a = {a}; need a > {}",
            annulus_threshold::<T>()
        )));
    }
    Ok((a, b))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OptimalityPoint<T> {
    pub t: T,
    pub x_star: T,
    /// `|K(t)∗f|` at `x_star`.
    pub value: T,
    /// `value · t^{n/2}`.
    pub scaled: T,
    pub sine: T,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OptimalityOptions {
    /// Samples of the stationary-phase envelope across the annulus.
    pub envelope_samples: usize,
    /// Local shifts `t·10^{j/320}` tried when the sine condition fails.
    pub refine_steps: usize,
    pub sine_threshold: f64,
    /// Golden-section iterations on the quadrature value.
    pub golden_steps: usize,
    pub panels: PanelOptions,
}

impl Default for OptimalityOptions {
    fn default() -> Self {
        Self {
            envelope_samples: 256,
            refine_steps: 7,
            sine_threshold: 0.5,
            golden_steps: 16,
            panels: PanelOptions::default(),
        }
    }
}

/// Geometric grid with `per_decade` points per decade covering `[lo, hi]`.
pub fn geometric_grid<T: Real>(lo: T, hi: T, per_decade: usize) -> Vec<T> {
    let decades = (hi / lo).log10();
    let count = (decades * T::from_usize_lossy(per_decade)).round().to_usize().unwrap_or(0);
    (0..=count)
        .map(|i| lo * T::lit(10.0).powf(T::from_usize_lossy(i) / T::from_usize_lossy(per_decade)))
        .collect()
}

pub fn optimality_sequence<T: Real, P: RadialSpectrum<T> + ?Sized>(
    profile: &P,
    a: T,
    b: T,
    t_grid: &[T],
    n: usize,
) -> Result<Vec<OptimalityPoint<T>>> {
    optimality_sequence_with(profile, a, b, t_grid, n, &OptimalityOptions::default())
}

pub fn optimality_sequence_with<T: Real, P: RadialSpectrum<T> + ?Sized>(
    profile: &P,
    a: T,
    b: T,
    t_grid: &[T],
    n: usize,
    opts: &OptimalityOptions,
) -> Result<Vec<OptimalityPoint<T>>> {
    let (lo, hi) = profile.support();
    let (r_a, r_b) = (stationary_point(a).r0, stationary_point(b).r0);
    if r_a <= lo || r_b >= hi {
        return Err(Error::Precondition(format!(
            "stationary radii [{r_a}, {r_b}] for x/t in [{a}, {b}] not inside support [{lo}, {hi}]"
        )));
    }
    let found: Vec<Option<OptimalityPoint<T>>> = t_grid
        .par_iter()
        .map(|&t| select_near(profile, a, b, t, n, opts))
        .collect::<Result<_>>()?;
    let points: Vec<_> = found.into_iter().flatten().collect();
    if points.is_empty() {
        return Err(Error::EmptySelection(format!(
            "no t in the {}-point grid met the sine condition",
            t_grid.len()
        )));
    }
    Ok(points)
}

fn select_near<T: Real, P: RadialSpectrum<T> + ?Sized>(
    profile: &P,
    a: T,
    b: T,
    t0: T,
    n: usize,
    opts: &OptimalityOptions,
) -> Result<Option<OptimalityPoint<T>>> {
    for j in 0..=opts.refine_steps {
        let t = t0 * T::lit(10.0).powf(T::from_usize_lossy(j) / T::lit(320.0));
        let Some((x_sp, sp)) = peak_of_approximation(profile, a, b, t, n, opts.envelope_samples) else {
            return Ok(None);
        };
        if sp.sine < T::lit(opts.sine_threshold) {
            continue;
        }
        let period = T::lit(2.0) * T::PI() / sp.data.r0;
        let (x_lo, x_hi) = ((x_sp - period * T::lit(0.25)).max(a * t), (x_sp + period * T::lit(0.25)).min(b * t));
        let eval = |x: T| radial_convolution_with(profile, t, x, n, &opts.panels).map(|v| v.abs());
        let (x_star, value) = golden_max(x_lo, x_hi, opts.golden_steps, eval)?;
        let sine = stationary_phase(profile, t, x_star, n).map(|s| s.sine).unwrap_or(sp.sine);
        let scaled = value * t.powf(T::from_usize_lossy(n) * T::lit(0.5));
        return Ok(Some(OptimalityPoint { t, x_star, value, scaled, sine }));
    }
    Ok(None)
}

/// Position of the largest stationary-phase value `|envelope · sine|` in the annulus.
fn peak_of_approximation<T: Real, P: RadialSpectrum<T> + ?Sized>(
    profile: &P,
    a: T,
    b: T,
    t: T,
    n: usize,
    samples: usize,
) -> Option<(T, StationaryPhase<T>)> {
    let (x0, x1) = (a * t, b * t);
    let step = (x1 - x0) / T::from_usize_lossy(samples + 1);
    let mut best: Option<(T, StationaryPhase<T>)> = None;
    for i in 1..=samples {
        let x = x0 + step * T::from_usize_lossy(i);
        if let Ok(sp) = stationary_phase(profile, t, x, n) {
            if best.is_none_or(|(_, b)| sp.envelope.abs() > b.envelope.abs()) {
                best = Some((x, sp));
            }
        }
    }
    let (x_env, sp_env) = best?;
    if sp_env.envelope == T::zero() {
        return None;
    }
    // the value oscillates in x with period 2π/r₀; pick the best crest nearby
    let period = T::lit(2.0) * T::PI() / sp_env.data.r0;
    let fine = 128;
    let mut crest = (x_env, sp_env);
    for i in 0..=fine {
        let x = x_env - period + period * T::lit(2.0) * T::from_usize_lossy(i) / T::from_usize_lossy(fine);
        if x <= x0 || x >= x1 {
            continue;
        }
        if let Ok(sp) = stationary_phase(profile, t, x, n) {
            if sp.value().abs() > crest.1.value().abs() {
                crest = (x, sp);
            }
        }
    }
    Some(crest)
}

fn golden_max<T: Real>(mut lo: T, mut hi: T, steps: usize, f: impl Fn(T) -> Result<T>) -> Result<(T, T)> {
    let g = (T::lit(5.0).sqrt() - T::one()) * T::lit(0.5);
    let mut x1 = hi - g * (hi - lo);
    let mut x2 = lo + g * (hi - lo);
    let mut f1 = f(x1)?;
    let mut f2 = f(x2)?;
    for _ in 0..steps {
        if f1 >= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - g * (hi - lo);
            f1 = f(x1)?;
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + g * (hi - lo);
            f2 = f(x2)?;
        }
    }
    Ok(if f1 >= f2 { (x1, f1) } else { (x2, f2) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn annulus_examples() {
        let (a, b) = choose_annulus(4.0_f64).unwrap();
        assert_eq!(a, 4.0);
        assert_relative_eq!(b, 64.0 * 2f64.sqrt() / 20.0, max_relative = 1e-15);
        assert!(matches!(choose_annulus(1.0_f64), Err(Error::Infeasible(_))));
        let star: f64 = annulus_threshold();
        assert_relative_eq!(star, 3.1075, epsilon = 1e-4);
        assert!(choose_annulus(star * (1.0 + 1e-9)).is_ok());
        assert!(choose_annulus(star * (1.0 - 1e-9)).is_err());
    }

    #[test]
    fn grid_density() {
        let g = geometric_grid(100.0_f64, 10_000.0, 40);
        assert_eq!(g.len(), 81);
        assert_relative_eq!(g[80], 10_000.0, max_relative = 1e-12);
    }

    #[test]
    fn golden_finds_parabola_peak() {
        let (x, v) = golden_max(0.0_f64, 2.0, 60, |x| Ok(1.0 - (x - 0.7) * (x - 0.7))).unwrap();
        assert_relative_eq!(x, 0.7, epsilon = 1e-8);
        assert_relative_eq!(v, 1.0, epsilon = 1e-12);
    }
}
