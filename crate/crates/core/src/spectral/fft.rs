use std::sync::Arc;

use num_complex::Complex;
use rustfft::{Fft, FftPlanner};

use crate::real::Real;

/// Unnormalized n-dimensional complex DFT over a cubic row-major grid
/// (last axis fastest). `inverse` does not divide by the point count.
#[derive(Clone)]
pub struct Transform<T: Real> {
    n: usize,
    points: usize,
    forward: Arc<dyn Fft<T>>,
    inverse: Arc<dyn Fft<T>>,
}

impl<T: Real> std::fmt::Debug for Transform<T> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Transform({}^{})", self.points, self.n)
    }
}

impl<T: Real> Transform<T> {
    pub fn new(n: usize, points: usize) -> Self {
        let mut planner = FftPlanner::new();
        Self {
            n,
            points,
            forward: planner.plan_fft_forward(points),
            inverse: planner.plan_fft_inverse(points),
        }
    }

    pub fn len(&self) -> usize {
        self.points.pow(self.n as u32)
    }

    pub fn is_empty(&self) -> bool {
        self.points == 0
    }

    pub fn forward(&self, data: &mut [Complex<T>]) {
        self.apply(&*self.forward, data);
    }

    pub fn inverse(&self, data: &mut [Complex<T>]) {
        self.apply(&*self.inverse, data);
    }

    /// Inverse transform scaled so that `inverse_normalized(forward(x)) == x`.
    pub fn inverse_normalized(&self, data: &mut [Complex<T>]) {
        self.inverse(data);
        let s = T::one() / T::from_usize_lossy(self.len());
        data.iter_mut().for_each(|c| *c = *c * s);
    }

    fn apply(&self, plan: &dyn Fft<T>, data: &mut [Complex<T>]) {
        assert_eq!(data.len(), self.len(), "buffer length does not match transform");
        let m = self.points;
        // last axis is contiguous
        plan.process(data);
        if self.n == 1 {
            return;
        }
        let total = data.len();
        let mut lines = vec![Complex::new(T::zero(), T::zero()); total];
        for axis in 0..self.n - 1 {
            let stride = m.pow((self.n - 1 - axis) as u32);
            let block = stride * m;
            let mut line = 0;
            for outer in (0..total).step_by(block) {
                for inner in 0..stride {
                    let dst = &mut lines[line * m..(line + 1) * m];
                    for (j, d) in dst.iter_mut().enumerate() {
                        *d = data[outer + inner + j * stride];
                    }
                    line += 1;
                }
            }
            plan.process(&mut lines);
            line = 0;
            for outer in (0..total).step_by(block) {
                for inner in 0..stride {
                    let src = &lines[line * m..(line + 1) * m];
                    for (j, s) in src.iter().enumerate() {
                        data[outer + inner + j * stride] = *s;
                    }
                    line += 1;
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_dimensional_matches_direct_sum() {
        let m = 8;
        let t = Transform::<f64>::new(2, m);
        let data: Vec<Complex<f64>> =
            (0..m * m).map(|k| Complex::new((k as f64 * 0.37).sin(), (k as f64 * 0.11).cos())).collect();
        let mut fast = data.clone();
        t.forward(&mut fast);
        for k0 in 0..m {
            for k1 in 0..m {
                let mut s = Complex::new(0.0, 0.0);
                for j0 in 0..m {
                    for j1 in 0..m {
                        let ang = -2.0 * std::f64::consts::PI * ((j0 * k0 + j1 * k1) as f64) / m as f64;
                        s += data[j0 * m + j1] * Complex::from_polar(1.0, ang);
                    }
                }
                assert!((s - fast[k0 * m + k1]).norm() < 1e-12);
            }
        }
        t.inverse_normalized(&mut fast);
        for (a, b) in fast.iter().zip(&data) {
            assert!((a - b).norm() < 1e-14);
        }
    }
}
