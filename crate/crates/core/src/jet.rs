//! Truncated Taylor arithmetic, enough to differentiate the cutoff functions
//! four times without finite differences.

use std::ops::{Add, Div, Mul, Neg, Sub};

use crate::real::Real;

/// Number of stored Taylor coefficients (derivatives up to order 4).
pub const ORDER: usize = 5;

/// `c[k]` is the k-th Taylor coefficient, so the k-th derivative is `k!·c[k]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jet<T> {
    pub c: [T; ORDER],
}

impl<T: Real> Jet<T> {
    pub fn constant(v: T) -> Self {
        let mut c = [T::zero(); ORDER];
        c[0] = v;
        Self { c }
    }

    /// The independent variable at `x`.
    pub fn variable(x: T) -> Self {
        let mut c = [T::zero(); ORDER];
        c[0] = x;
        c[1] = T::one();
        Self { c }
    }

    pub fn value(&self) -> T {
        self.c[0]
    }

    pub fn derivative(&self, k: usize) -> T {
        let mut fact = T::one();
        for j in 2..=k {
            fact = fact * T::from_usize_lossy(j);
        }
        self.c[k] * fact
    }

    pub fn scale(&self, s: T) -> Self {
        let mut c = self.c;
        c.iter_mut().for_each(|x| *x = *x * s);
        Self { c }
    }

    pub fn recip(&self) -> Self {
        let a = &self.c;
        let mut b = [T::zero(); ORDER];
        b[0] = T::one() / a[0];
        for k in 1..ORDER {
            let mut s = T::zero();
            for j in 1..=k {
                s = s + a[j] * b[k - j];
            }
            b[k] = -s / a[0];
        }
        Self { c: b }
    }

    pub fn exp(&self) -> Self {
        // b' = a' b, solved coefficient by coefficient
        let a = &self.c;
        let mut b = [T::zero(); ORDER];
        b[0] = a[0].exp();
        for k in 1..ORDER {
            let mut s = T::zero();
            for j in 1..=k {
                s = s + T::from_usize_lossy(j) * a[j] * b[k - j];
            }
            b[k] = s / T::from_usize_lossy(k);
        }
        Self { c: b }
    }
}

impl<T: Real> Add for Jet<T> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        let mut c = self.c;
        for (x, y) in c.iter_mut().zip(o.c) {
            *x = *x + y;
        }
        Self { c }
    }
}

impl<T: Real> Sub for Jet<T> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        self + (-o)
    }
}

impl<T: Real> Neg for Jet<T> {
    type Output = Self;
    fn neg(self) -> Self {
        self.scale(-T::one())
    }
}

impl<T: Real> Mul for Jet<T> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let mut c = [T::zero(); ORDER];
        for i in 0..ORDER {
            for j in 0..ORDER - i {
                c[i + j] = c[i + j] + self.c[i] * o.c[j];
            }
        }
        Self { c }
    }
}

impl<T: Real> Div for Jet<T> {
    type Output = Self;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, o: Self) -> Self {
        self * o.recip()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn exp_of_square() {
        // d^k/dx^k exp(x^2) at x = 0.7
        let x = Jet::variable(0.7_f64);
        let j = (x * x).exp();
        let e = (0.49_f64).exp();
        assert_relative_eq!(j.derivative(1), 2.0 * 0.7 * e, max_relative = 1e-14);
        assert_relative_eq!(j.derivative(2), (2.0 + 4.0 * 0.49) * e, max_relative = 1e-14);
        let d4 = (12.0 + 48.0 * 0.49 + 16.0 * 0.49 * 0.49) * e;
        assert_relative_eq!(j.derivative(4), d4, max_relative = 1e-13);
    }

    #[test]
    fn reciprocal() {
        let x = Jet::variable(2.0_f64);
        let j = x.recip();
        // (1/x)'''' = 24/x^5
        assert_relative_eq!(j.derivative(4), 24.0 / 32.0, max_relative = 1e-14);
        assert_relative_eq!(j.derivative(3), -6.0 / 16.0, max_relative = 1e-14);
    }
}
