use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::real::Real;

use super::fft::Transform;

/// Largest refined grid (total points) built by spectral zero-padding.
pub const PADDED_LIMIT: usize = 1 << 24;

/// Zoom factor of the sup-norm refinement.
pub const ZOOM: usize = 4;

struct Shared<T: Real> {
    transform: Transform<T>,
    /// |ξ|² for every mode in storage order.
    xi_sq: Vec<T>,
    /// Per-axis frequencies in FFT order.
    axis_xi: Vec<T>,
    refined: OnceLock<Transform<T>>,
}

/// Periodic box `[-L, L)^n` with `points` samples per axis. Cheap to clone;
/// transform plans and frequency tables are shared.
#[derive(Clone)]
pub struct GridGeometry<T: Real> {
    n: usize,
    points: usize,
    half_width: T,
    shared: Arc<Shared<T>>,
}

impl<T: Real> std::fmt::Debug for GridGeometry<T> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("GridGeometry")
            .field("n", &self.n)
            .field("points", &self.points)
            .field("half_width", &self.half_width)
            .finish()
    }
}

impl<T: Real> PartialEq for GridGeometry<T> {
    fn eq(&self, o: &Self) -> bool {
        self.n == o.n && self.points == o.points && self.half_width == o.half_width
    }
}

impl<T: Real> GridGeometry<T> {
    pub fn new(n: usize, points: usize, half_width: T) -> Result<Self> {
        if !(1..=3).contains(&n) {
            return Err(Error::InvalidGrid(format!("dimension {n} not in 1..=3")));
        }
        if points < 2 || !points.is_power_of_two() {
            return Err(Error::InvalidGrid(format!("points per axis {points} is not a power of two >= 2")));
        }
        if !(half_width > T::zero()) || !half_width.is_finite() {
            return Err(Error::InvalidGrid(format!("half width {half_width} must be positive")));
        }
        let scale = T::PI() / half_width;
        let axis_xi: Vec<T> = (0..points).map(|k| scale * T::lit(signed_index(k, points) as f64)).collect();
        let total = points.pow(n as u32);
        let mut xi_sq = Vec::with_capacity(total);
        for flat in 0..total {
            let mut s = T::zero();
            let mut rest = flat;
            for _ in 0..n {
                let k = rest % points;
                rest /= points;
                s = s + axis_xi[k] * axis_xi[k];
            }
            xi_sq.push(s);
        }
        Ok(Self {
            n,
            points,
            half_width,
            shared: Arc::new(Shared {
                transform: Transform::new(n, points),
                xi_sq,
                axis_xi,
                refined: OnceLock::new(),
            }),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn points(&self) -> usize {
        self.points
    }

    pub fn half_width(&self) -> T {
        self.half_width
    }

    pub fn total(&self) -> usize {
        self.shared.xi_sq.len()
    }

    pub fn spacing(&self) -> T {
        T::lit(2.0) * self.half_width / T::from_usize_lossy(self.points)
    }

    /// Per-axis Nyquist frequency `π N / (2L)`.
    pub fn nyquist(&self) -> T {
        T::PI() * T::from_usize_lossy(self.points) / (T::lit(2.0) * self.half_width)
    }

    /// `h^n`.
    pub fn cell_volume(&self) -> T {
        self.spacing().powi(self.n as i32)
    }

    /// Coordinate of sample `j` along an axis.
    pub fn coordinate(&self, j: usize) -> T {
        -self.half_width + T::from_usize_lossy(j) * self.spacing()
    }

    /// Frequency of mode `k` (FFT ordering) along an axis.
    pub fn axis_frequency(&self, k: usize) -> T {
        self.shared.axis_xi[k]
    }

    pub fn xi_sq(&self) -> &[T] {
        &self.shared.xi_sq
    }

    /// Multi-index (axis 0 first) of a flat storage index.
    pub fn unflatten(&self, flat: usize) -> [usize; 3] {
        let mut idx = [0usize; 3];
        let mut rest = flat;
        for a in (0..self.n).rev() {
            idx[a] = rest % self.points;
            rest /= self.points;
        }
        idx
    }

    /// Spatial point of a flat index.
    pub fn point(&self, flat: usize) -> [T; 3] {
        let idx = self.unflatten(flat);
        let mut x = [T::zero(); 3];
        for a in 0..self.n {
            x[a] = self.coordinate(idx[a]);
        }
        x
    }

    /// Euclidean norm of the spatial point of a flat index.
    pub fn radius(&self, flat: usize) -> T {
        let x = self.point(flat);
        (x[0] * x[0] + x[1] * x[1] + x[2] * x[2]).sqrt()
    }

    /// `(-1)^{Σ k_a}`: phase of the shift from `[0, 2L)` to `[-L, L)`.
    pub fn shift_sign(&self, flat: usize) -> T {
        let idx = self.unflatten(flat);
        let s: usize = idx[..self.n].iter().sum();
        if s.is_multiple_of(2) {
            T::one()
        } else {
            -T::one()
        }
    }

    /// Flat index of the mode `-k`.
    pub fn negate(&self, flat: usize) -> usize {
        let idx = self.unflatten(flat);
        let mut out = 0;
        for &k in &idx[..self.n] {
            out = out * self.points + (self.points - k) % self.points;
        }
        out
    }

    pub fn transform(&self) -> &Transform<T> {
        &self.shared.transform
    }

    /// Plan for the zero-padded grid, or `None` when it would exceed [`PADDED_LIMIT`].
    pub(crate) fn refined_transform(&self) -> Option<&Transform<T>> {
        let fine = self.points * ZOOM;
        if fine.pow(self.n as u32) > PADDED_LIMIT {
            return None;
        }
        Some(self.shared.refined.get_or_init(|| Transform::new(self.n, fine)))
    }

    /// True when both geometries describe the same grid.
    pub fn same_as(&self, other: &Self) -> bool {
        self == other
    }
}

/// Signed frequency index of FFT slot `k`; the Nyquist slot counts as `-N/2`.
pub fn signed_index(k: usize, points: usize) -> i64 {
    if k < points / 2 {
        k as i64
    } else {
        k as i64 - points as i64
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_input() {
        assert!(GridGeometry::<f64>::new(1, 100, 1.0).is_err());
        assert!(GridGeometry::<f64>::new(4, 8, 1.0).is_err());
        assert!(GridGeometry::<f64>::new(1, 8, 0.0).is_err());
    }

    #[test]
    fn frequencies_and_spacing() {
        let g = GridGeometry::<f64>::new(2, 8, 4.0).unwrap();
        assert_eq!(g.spacing(), 1.0);
        assert!((g.nyquist() - std::f64::consts::PI).abs() < 1e-15);
        assert_eq!(g.axis_frequency(7), -std::f64::consts::PI / 4.0);
        assert_eq!(g.negate(1), 7);
        assert_eq!(g.negate(8 * 3 + 2), 8 * 5 + 6);
        assert_eq!(g.coordinate(0), -4.0);
    }
}
