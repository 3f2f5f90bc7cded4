use num_complex::Complex;

use crate::real::Real;
use crate::spectral::{signed_index, GridGeometry, SpectralField};

/// Modes kept by the 2/3 rule: `|k| <= N/3` on every axis.
pub fn dealias_mask<T: Real>(geometry: &GridGeometry<T>) -> Vec<bool> {
    let m = geometry.points();
    let limit = (m / 3) as i64;
    (0..geometry.total())
        .map(|flat| {
            let idx = geometry.unflatten(flat);
            idx[..geometry.n()].iter().all(|&k| signed_index(k, m).abs() <= limit)
        })
        .collect()
}

/// `coupling·|u|^α` sampled on the grid, transformed and de-aliased.
pub(crate) fn power_coeffs<T: Real>(
    geometry: &GridGeometry<T>,
    values: &[T],
    alpha: T,
    coupling: T,
    mask: &[bool],
) -> Vec<Complex<T>> {
    let whole = alpha.to_f64_lossy();
    let mut buf: Vec<Complex<T>> = if whole.fract() == 0.0 && whole <= 32.0 {
        let k = whole as i32;
        values.iter().map(|&u| Complex::new(coupling * u.abs().powi(k), T::zero())).collect()
    } else {
        values.iter().map(|&u| Complex::new(coupling * u.abs().powf(alpha), T::zero())).collect()
    };
    geometry.transform().forward(&mut buf);
    for (c, &keep) in buf.iter_mut().zip(mask) {
        if !keep {
            *c = Complex::new(T::zero(), T::zero());
        }
    }
    buf
}

/// `|u|^α` with the top third of the spectrum removed.
pub fn nonlinearity<T: Real>(field: &SpectralField<T>, alpha: T) -> SpectralField<T> {
    assert!(alpha > T::one(), "alpha must exceed 1");
    let g = field.geometry();
    let mask = dealias_mask(g);
    let coeffs = power_coeffs(g, field.values(), alpha, T::one(), &mask);
    SpectralField::from_coeffs(g, coeffs).expect("length matches")
}

/// `|a + d|^α - |a|^α` without cancellation: `d ∫₀¹ α|a+θd|^{α-1} sgn(a+θd) dθ`.
pub fn power_difference<T: Real>(a: T, d: T, alpha: T, nodes: &[T], weights: &[T]) -> T {
    if d == T::zero() {
        return T::zero();
    }
    let mut acc = T::zero();
    for (&x, &w) in nodes.iter().zip(weights) {
        let y = a + d * x;
        acc = acc + w * alpha * y.abs().powf(alpha - T::one()) * y.signum();
    }
    d * acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn zero_and_constant() {
        let g = GridGeometry::<f64>::new(1, 32, 4.0).unwrap();
        assert_eq!(nonlinearity(&SpectralField::zeros(&g), 3.0).max_abs(), 0.0);
        let c = SpectralField::from_fn(&g, |_| 1.5);
        let f = nonlinearity(&c, 2.5);
        for v in f.values() {
            assert_relative_eq!(*v, 1.5_f64.powf(2.5), max_relative = 1e-13);
        }
    }

    #[test]
    fn square_of_cosine() {
        let g = GridGeometry::<f64>::new(1, 64, std::f64::consts::PI * 8.0).unwrap();
        let xi0 = g.axis_frequency(4);
        let f = nonlinearity(&SpectralField::from_fn(&g, |x| (xi0 * x[0]).cos()), 2.0);
        let top = f.coeffs().iter().fold(0.0_f64, |m, c| m.max(c.norm()));
        for (k, c) in f.coeffs().iter().enumerate() {
            let expected = matches!(k, 0 | 8 | 56);
            assert_eq!(c.norm() > 1e-12 * top, expected, "mode {k}");
        }
    }

    #[test]
    fn stable_difference() {
        let rule = crate::quadrature::GaussLegendre::<f64>::new(8);
        let nodes: Vec<f64> = rule.nodes.iter().map(|x| 0.5 * (x + 1.0)).collect();
        let weights: Vec<f64> = rule.weights.iter().map(|w| 0.5 * w).collect();
        let (a, d, al) = (0.7_f64, 1e-9, 6.0);
        let exact = al * a.powf(al - 1.0) * d;
        assert_relative_eq!(power_difference(a, d, al, &nodes, &weights), exact, max_relative = 1e-8);
        let v = power_difference(-0.3, 0.9, 2.0, &nodes, &weights);
        assert_relative_eq!(v, 0.36 - 0.09, max_relative = 1e-12);
    }
}
