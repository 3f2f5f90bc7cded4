//! Smooth cutoffs built from the `exp(-1/s)` transition.
//!
//! `chi` is 1 on `[0,1]`, 0 on `[2,∞)`. The low-frequency projector uses
//! `chi(2|ξ|)`, the dyadic bump is `chi(|ξ|) - chi(2|ξ|)` (support `[1/2, 2]`),
//! and the test functions of the nonexistence module use `chi(2t)`, `chi(2|x|)`.

use crate::jet::Jet;
use crate::real::Real;

fn transition_jet<T: Real>(s: Jet<T>) -> Jet<T> {
    if s.value() <= T::zero() {
        Jet::constant(T::zero())
    } else {
        (-s.recip()).exp()
    }
}

/// `exp(-1/s)` for `s > 0`, else 0.
pub fn transition<T: Real>(s: T) -> T {
    if s <= T::zero() {
        T::zero()
    } else {
        (-s.recip()).exp()
    }
}

/// Smooth step: 1 on `(-∞, 1]`, 0 on `[2, ∞)`.
pub fn chi<T: Real>(rho: T) -> T {
    let two = T::lit(2.0);
    if rho <= T::one() {
        return T::one();
    }
    if rho >= two {
        return T::zero();
    }
    let a = transition(two - rho);
    let b = transition(rho - T::one());
    a / (a + b)
}

/// Taylor jet of `chi` at `rho`, derivatives up to order four.
pub fn chi_jet<T: Real>(rho: Jet<T>) -> Jet<T> {
    let two = T::lit(2.0);
    let v = rho.value();
    if v <= T::one() {
        return Jet::constant(T::one());
    }
    if v >= two {
        return Jet::constant(T::zero());
    }
    let a = transition_jet(Jet::constant(two) - rho);
    let b = transition_jet(rho - Jet::constant(T::one()));
    a / (a + b)
}

/// Low-frequency weight `chi(2|ξ|)`: 1 for `|ξ| <= 1/2`, 0 for `|ξ| >= 1`.
pub fn low_pass<T: Real>(xi_abs: T) -> T {
    chi(T::lit(2.0) * xi_abs)
}

/// Dyadic bump `chi(|ξ|) - chi(2|ξ|)`, supported in `[1/2, 2]`.
pub fn dyadic_bump<T: Real>(xi_abs: T) -> T {
    chi(xi_abs) - chi(T::lit(2.0) * xi_abs)
}

/// `f(r) = chi(2r)` with its derivatives in r (jet of order four).
pub fn half_cutoff_jet<T: Real>(r: T) -> Jet<T> {
    chi_jet(Jet::variable(r).scale(T::lit(2.0)))
}

/// Bi-Laplacian of a radial function in `n` dimensions from its jet at `r > 0`.
pub fn radial_bilaplacian<T: Real>(j: &Jet<T>, r: T, n: u32) -> T {
    let m = T::from_u32(n).unwrap() - T::one();
    let d1 = j.derivative(1);
    let d2 = j.derivative(2);
    let d3 = j.derivative(3);
    let d4 = j.derivative(4);
    let k = m * (m - T::lit(2.0));
    d4 + T::lit(2.0) * m / r * d3 + k / (r * r) * d2 - k / (r * r * r) * d1
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn plateaus() {
        assert_eq!(chi(0.3_f64), 1.0);
        assert_eq!(chi(1.0_f64), 1.0);
        assert_eq!(chi(2.0_f64), 0.0);
        assert_relative_eq!(chi(1.5_f64), 0.5, epsilon = 1e-15);
        assert_eq!(dyadic_bump(0.49_f64), 0.0);
        assert_eq!(dyadic_bump(2.01_f64), 0.0);
        assert_eq!(dyadic_bump(1.0_f64), 1.0);
    }

    #[test]
    fn symmetric_about_midpoint() {
        for k in 1..50 {
            let d = k as f64 / 100.0;
            assert_relative_eq!(chi(1.5 + d) + chi(1.5 - d), 1.0, epsilon = 1e-14);
        }
    }

    #[test]
    fn jet_matches_finite_differences() {
        let x = 1.37_f64;
        let j = chi_jet(Jet::variable(x));
        let h = 1e-4;
        let fd1 = (chi(x + h) - chi(x - h)) / (2.0 * h);
        let fd2 = (chi(x + h) - 2.0 * chi(x) + chi(x - h)) / (h * h);
        assert_relative_eq!(j.value(), chi(x), epsilon = 1e-15);
        assert_relative_eq!(j.derivative(1), fd1, max_relative = 1e-6);
        assert_relative_eq!(j.derivative(2), fd2, max_relative = 1e-4);
        let h = 1e-3;
        let d2 = |y: f64| chi_jet(Jet::variable(y)).derivative(2);
        let fd4 = (d2(x + h) - 2.0 * d2(x) + d2(x - h)) / (h * h);
        assert_relative_eq!(j.derivative(4), fd4, max_relative = 1e-4);
    }

    #[test]
    fn bilaplacian_of_quartic_polynomial() {
        // r^4 in n dims: Δ² r^4 = 8 n (n + 2)
        let r = 0.8_f64;
        let mut c = [0.0; 5];
        c[0] = r.powi(4);
        c[1] = 4.0 * r.powi(3);
        c[2] = 6.0 * r * r;
        c[3] = 4.0 * r;
        c[4] = 1.0;
        let j = Jet { c };
        for n in 1..6 {
            let expect = 8.0 * n as f64 * (n as f64 + 2.0);
            assert_relative_eq!(radial_bilaplacian(&j, r, n), expect, max_relative = 1e-12);
        }
    }
}
