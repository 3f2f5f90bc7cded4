use crate::error::{Error, Result};
use crate::quadrature::GaussLegendre;
use crate::real::{bracket, Real};

use super::bessel::bessel_j;
use super::profile::RadialSpectrum;

/// Controls for the phase-adaptive panel quadrature.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PanelOptions {
    /// Largest phase change per panel.
    pub max_phase: f64,
    pub max_panels: usize,
    /// Accepted discrepancy between the 8- and 6-point rules, relative to `∫|integrand|`.
    pub rel_tol: f64,
}

impl Default for PanelOptions {
    fn default() -> Self {
        Self { max_phase: std::f64::consts::FRAC_PI_4, max_panels: 5_000_000, rel_tol: 1e-10 }
    }
}

/// `(K(t,·) ∗ f)(x)` for radial `f` given by its spectrum, through the Bessel
/// representation in dimension `n`.
pub fn radial_convolution<T: Real, P: RadialSpectrum<T> + ?Sized>(
    profile: &P,
    t: T,
    x_abs: T,
    n: usize,
) -> Result<T> {
    radial_convolution_with(profile, t, x_abs, n, &PanelOptions::default())
}

pub fn radial_convolution_with<T: Real, P: RadialSpectrum<T> + ?Sized>(
    profile: &P,
    t: T,
    x_abs: T,
    n: usize,
    opts: &PanelOptions,
) -> Result<T> {
    if !(t > T::zero()) || !(x_abs > T::zero()) {
        return Err(Error::Precondition(format!("need t > 0 and |x| > 0, got t={t}, |x|={x_abs}")));
    }
    if !(1..=3).contains(&n) {
        return Err(Error::Precondition(format!("radial kernel implemented for n in 1..=3, got {n}")));
    }
    let nu = T::from_usize_lossy(n) * T::lit(0.5) - T::one();
    let half_n = T::from_usize_lossy(n) * T::lit(0.5);
    let integrand = |r: T| -> T {
        let w = bracket(r * r);
        let f = profile.value(r);
        if f == T::zero() {
            return T::zero();
        }
        (t * w).sin() / w * f * bessel_j(nu, x_abs * r) * r.powf(half_n)
    };
    let rate = |r: T| T::lit(2.0) * t * r * r * r / bracket(r * r) + x_abs;
    let (lo, hi) = profile.support();
    let g8 = GaussLegendre::<T>::new(8);
    let g6 = GaussLegendre::<T>::new(6);
    let mut max_phase = T::lit(opts.max_phase);
    for _attempt in 0..4 {
        let mut sum8 = T::zero();
        let mut sum6 = T::zero();
        let mut mass = T::zero();
        let mut r = lo;
        let mut panels = 0usize;
        let cap = (hi - lo) / T::lit(16.0);
        while r < hi {
            let mut w = (max_phase / rate(r)).min(cap);
            for _ in 0..2 {
                w = (max_phase / rate((r + w).min(hi))).min(cap);
            }
            let b = (r + w).min(hi);
            let mut abs_acc = T::zero();
            let v8 = g8.integrate(r, b, |s| {
                let v = integrand(s);
                abs_acc = abs_acc + v.abs();
                v
            });
            sum8 = sum8 + v8;
            sum6 = sum6 + g6.integrate(r, b, &integrand);
            mass = mass + abs_acc * (b - r) / T::lit(8.0);
            r = b;
            panels += 1;
            if panels > opts.max_panels {
                return Err(Error::Quadrature(format!(
                    "panel budget {} exceeded at t={t}, |x|={x_abs}",
                    opts.max_panels
                )));
            }
        }
        if !sum8.is_finite() {
            return Err(Error::Quadrature("non-finite integrand".into()));
        }
        if (sum8 - sum6).abs() <= T::lit(opts.rel_tol) * mass + T::min_positive_value() {
            let norm = (T::lit(2.0) * T::PI()).powf(-half_n) * x_abs.powf(T::one() - half_n);
            return Ok(norm * sum8);
        }
        max_phase = max_phase * T::lit(0.5);
    }
    Err(Error::Quadrature(format!("rules disagree after refinement at t={t}, |x|={x_abs}")))
}

/// The two branches `I±` of the one-dimensional kernel, where
/// `K∗f = I₊ + I₋` and `I± = (1/2π) ∫ f̂(r) sin(t⟨r²⟩ ± x r)/⟨r²⟩ dr`.
pub fn branch_contributions<T: Real, P: RadialSpectrum<T> + ?Sized>(
    profile: &P,
    t: T,
    x_abs: T,
) -> Result<(T, T)> {
    let (lo, hi) = profile.support();
    let g8 = GaussLegendre::<T>::new(8);
    let phase = T::lit(std::f64::consts::FRAC_PI_4);
    let cap = (hi - lo) / T::lit(16.0);
    let branch = |sign: T| -> Result<T> {
        let rate = |r: T| (T::lit(2.0) * t * r * r * r / bracket(r * r) + sign * x_abs).abs() + T::one();
        let mut acc = T::zero();
        let mut r = lo;
        let mut panels = 0usize;
        while r < hi {
            let mut w = (phase / rate(r)).min(cap);
            w = (phase / rate((r + w).min(hi))).min(w * T::lit(2.0)).min(cap);
            let b = (r + w).min(hi);
            acc = acc
                + g8.integrate(r, b, |s| {
                    let br = bracket(s * s);
                    profile.value(s) * (t * br + sign * x_abs * s).sin() / br
                });
            r = b;
            panels += 1;
            if panels > PanelOptions::default().max_panels {
                return Err(Error::Quadrature("panel budget exceeded".into()));
            }
        }
        Ok(acc / (T::lit(2.0) * T::PI()))
    };
    Ok((branch(T::one())?, branch(-T::one())?))
}

#[cfg(test)]
mod tests {
    use super::super::profile::AnnulusBump;
    use super::*;
    use crate::quadrature::integrate_adaptive;
    use approx::assert_relative_eq;

    #[test]
    fn one_dimensional_matches_cosine_transform() {
        let p = AnnulusBump::new(0.5_f64, 2.0, 1.0).unwrap();
        let (t, x) = (3.0, 2.5);
        let direct = integrate_adaptive(0.5, 2.0, 1e-15, 1e-13, 2000, |r: f64| {
            let w = (1.0 + r.powi(4)).sqrt();
            (t * w).sin() / w * p.value(r) * (x * r).cos()
        })
        .unwrap()
            / std::f64::consts::PI;
        let v = radial_convolution(&p, t, x, 1).unwrap();
        assert_relative_eq!(v, direct, max_relative = 1e-10);
        let (ip, im) = branch_contributions(&p, t, x).unwrap();
        assert_relative_eq!(ip + im, direct, max_relative = 1e-9);
    }

    #[test]
    fn zero_profile_and_small_time() {
        let zero = AnnulusBump::new(0.5_f64, 2.0, 0.0).unwrap();
        assert_eq!(radial_convolution(&zero, 5.0, 1.0, 2).unwrap(), 0.0);
        assert!(radial_convolution(&zero, 0.0, 1.0, 2).is_err());
        assert!(radial_convolution(&zero, 1.0, 1.0, 4).is_err());
    }

    #[test]
    fn panel_budget_reported() {
        let p = AnnulusBump::new(0.5_f64, 2.0, 1.0).unwrap();
        let opts = PanelOptions { max_panels: 10, ..PanelOptions::default() };
        assert!(matches!(radial_convolution_with(&p, 1e3, 5.0, 1, &opts), Err(Error::Quadrature(_))));
    }
}
