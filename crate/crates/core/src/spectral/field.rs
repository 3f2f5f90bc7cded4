use num_complex::Complex;

use crate::error::{Error, Result};
use crate::real::Real;

use super::grid::GridGeometry;

/// Real grid function together with its raw DFT coefficients.
///
/// Coefficients follow the unnormalized forward DFT of the samples, so the
/// continuous transform at `ξ_k` is `h^n (-1)^{Σk} c_k`.
#[derive(Debug, Clone)]
pub struct SpectralField<T: Real> {
    geometry: GridGeometry<T>,
    values: Vec<T>,
    coeffs: Vec<Complex<T>>,
}

impl<T: Real> SpectralField<T> {
    pub fn zeros(geometry: &GridGeometry<T>) -> Self {
        let total = geometry.total();
        Self {
            geometry: geometry.clone(),
            values: vec![T::zero(); total],
            coeffs: vec![Complex::new(T::zero(), T::zero()); total],
        }
    }

    pub fn from_values(geometry: &GridGeometry<T>, values: Vec<T>) -> Result<Self> {
        if values.len() != geometry.total() {
            return Err(Error::GeometryMismatch(format!(
                "{} values for a grid of {} points",
                values.len(),
                geometry.total()
            )));
        }
        let mut coeffs: Vec<Complex<T>> = values.iter().map(|&v| Complex::new(v, T::zero())).collect();
        geometry.transform().forward(&mut coeffs);
        Ok(Self { geometry: geometry.clone(), values, coeffs })
    }

    /// Samples `f` at every grid point.
    pub fn from_fn(geometry: &GridGeometry<T>, f: impl Fn(&[T]) -> T) -> Self {
        let n = geometry.n();
        let values = (0..geometry.total()).map(|i| f(&geometry.point(i)[..n])).collect();
        Self::from_values(geometry, values).expect("length matches by construction")
    }

    /// Builds from coefficients; the non-Hermitian part is projected out.
    pub fn from_coeffs(geometry: &GridGeometry<T>, coeffs: Vec<Complex<T>>) -> Result<Self> {
        if coeffs.len() != geometry.total() {
            return Err(Error::GeometryMismatch(format!(
                "{} coefficients for a grid of {} points",
                coeffs.len(),
                geometry.total()
            )));
        }
        let half = T::lit(0.5);
        let sym: Vec<Complex<T>> = (0..coeffs.len())
            .map(|i| (coeffs[i] + coeffs[geometry.negate(i)].conj()) * half)
            .collect();
        Ok(Self::from_hermitian_coeffs(geometry, sym))
    }

    /// Builds from coefficients already known to be Hermitian.
    pub(crate) fn from_hermitian_coeffs(geometry: &GridGeometry<T>, coeffs: Vec<Complex<T>>) -> Self {
        let mut buf = coeffs.clone();
        geometry.transform().inverse_normalized(&mut buf);
        let values = buf.into_iter().map(|c| c.re).collect();
        Self { geometry: geometry.clone(), values, coeffs }
    }

    /// Samples a continuous real, even spectrum `f̂(ξ)` (given `|ξ|`) and maps it
    /// to DFT coefficients.
    pub fn from_radial_spectrum(geometry: &GridGeometry<T>, spectrum: impl Fn(T) -> T) -> Self {
        let inv_cell = T::one() / geometry.cell_volume();
        let coeffs = geometry
            .xi_sq()
            .iter()
            .enumerate()
            .map(|(i, &s)| Complex::new(spectrum(s.sqrt()) * geometry.shift_sign(i) * inv_cell, T::zero()))
            .collect();
        Self::from_hermitian_coeffs(geometry, coeffs)
    }

    pub fn geometry(&self) -> &GridGeometry<T> {
        &self.geometry
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn coeffs(&self) -> &[Complex<T>] {
        &self.coeffs
    }

    pub fn into_parts(self) -> (GridGeometry<T>, Vec<T>, Vec<Complex<T>>) {
        (self.geometry, self.values, self.coeffs)
    }

    /// Continuous-transform estimate `f̂(ξ_k)` at a flat mode index.
    pub fn spectrum_at(&self, flat: usize) -> Complex<T> {
        self.coeffs[flat] * (self.geometry.cell_volume() * self.geometry.shift_sign(flat))
    }

    /// Multiplies every coefficient by a real symbol of `|ξ|²`.
    pub fn apply_symbol(&self, symbol: impl Fn(T) -> T) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .zip(self.geometry.xi_sq())
            .map(|(&c, &s)| c * symbol(s))
            .collect();
        Self::from_hermitian_coeffs(&self.geometry, coeffs)
    }

    pub fn scaled(&self, s: T) -> Self {
        Self {
            geometry: self.geometry.clone(),
            values: self.values.iter().map(|&v| v * s).collect(),
            coeffs: self.coeffs.iter().map(|&c| c * s).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        Ok(Self {
            geometry: self.geometry.clone(),
            values: self.values.iter().zip(&other.values).map(|(&a, &b)| a + b).collect(),
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(&a, &b)| a + b).collect(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scaled(-T::one()))
    }

    pub fn check_same(&self, other: &Self) -> Result<()> {
        if self.geometry != other.geometry {
            return Err(Error::GeometryMismatch(format!("{:?} vs {:?}", self.geometry, other.geometry)));
        }
        Ok(())
    }

    /// Largest Hermitian-symmetry defect relative to the coefficient maximum.
    pub fn hermitian_defect(&self) -> T {
        let scale = self.coeffs.iter().fold(T::zero(), |m, c| m.max(c.norm()));
        if scale == T::zero() {
            return T::zero();
        }
        let worst = (0..self.coeffs.len())
            .map(|i| (self.coeffs[i] - self.coeffs[self.geometry.negate(i)].conj()).norm())
            .fold(T::zero(), T::max);
        worst / scale
    }

    pub fn max_abs(&self) -> T {
        self.values.iter().fold(T::zero(), |m, v| m.max(v.abs()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_and_symmetry() {
        let g = GridGeometry::<f64>::new(2, 16, 3.0).unwrap();
        let f = SpectralField::from_fn(&g, |x| (-(x[0] * x[0] + 0.5 * x[1] * x[1])).exp() + 0.1 * x[0].sin());
        assert!(f.hermitian_defect() < 1e-14);
        let back = SpectralField::from_coeffs(&g, f.coeffs().to_vec()).unwrap();
        for (a, b) in back.values().iter().zip(f.values()) {
            assert!((a - b).abs() < 1e-13);
        }
    }

    #[test]
    fn gaussian_spectrum_matches_continuous_transform() {
        // f = exp(-x²/2) has f̂(ξ) = √(2π) exp(-ξ²/2)
        let g = GridGeometry::<f64>::new(1, 128, 16.0).unwrap();
        let f = SpectralField::from_fn(&g, |x| (-0.5 * x[0] * x[0]).exp());
        for k in 0..20 {
            let xi = g.axis_frequency(k);
            let expect = (2.0 * std::f64::consts::PI).sqrt() * (-0.5 * xi * xi).exp();
            assert!((f.spectrum_at(k).re - expect).abs() < 1e-12);
        }
        let h = SpectralField::from_radial_spectrum(&g, |r| (2.0 * std::f64::consts::PI).sqrt() * (-0.5 * r * r).exp());
        for (a, b) in h.values().iter().zip(f.values()) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn mismatch_rejected() {
        let g = GridGeometry::<f64>::new(1, 8, 1.0).unwrap();
        let h = GridGeometry::<f64>::new(1, 8, 2.0).unwrap();
        assert!(SpectralField::zeros(&g).add(&SpectralField::zeros(&h)).is_err());
        assert!(SpectralField::from_values(&g, vec![0.0; 4]).is_err());
    }
}
