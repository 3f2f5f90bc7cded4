use crate::cutoff::{dyadic_bump, low_pass};
use crate::real::Real;

use super::field::SpectralField;
use super::grid::GridGeometry;

/// Splits by a radial frequency weight `w(|ξ|)`: `low = w f`, `high = f - low`.
pub fn frequency_split<T: Real>(
    field: &SpectralField<T>,
    cutoff: impl Fn(T) -> T,
) -> (SpectralField<T>, SpectralField<T>) {
    let g = field.geometry();
    let mut low = Vec::with_capacity(g.total());
    let mut high = Vec::with_capacity(g.total());
    for (&c, &s) in field.coeffs().iter().zip(g.xi_sq()) {
        let lo = c * cutoff(s.sqrt());
        low.push(lo);
        high.push(c - lo);
    }
    (SpectralField::from_hermitian_coeffs(g, low), SpectralField::from_hermitian_coeffs(g, high))
}

/// The standard split with `chi(2|ξ|)`.
pub fn low_high_split<T: Real>(field: &SpectralField<T>) -> (SpectralField<T>, SpectralField<T>) {
    frequency_split(field, low_pass)
}

/// Localization to `2^{k-1} <= |ξ| <= 2^{k+1}` by `φ(2^{-k}ξ)`.
pub fn dyadic_piece<T: Real>(field: &SpectralField<T>, k: i32) -> SpectralField<T> {
    let scale = T::lit(2.0).powi(-k);
    field.apply_symbol(|s| dyadic_bump(s.sqrt() * scale))
}

/// Indices `(k_min, k_max)` whose pieces sum to one on every nonzero mode of the grid.
pub fn dyadic_range<T: Real>(geometry: &GridGeometry<T>) -> (i32, i32) {
    let lowest = T::PI() / geometry.half_width();
    let highest = geometry.nyquist() * T::from_usize_lossy(geometry.n()).sqrt();
    let k_min = lowest.log2().floor().to_i32().unwrap();
    let k_max = highest.log2().ceil().to_i32().unwrap();
    (k_min, k_max)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mode(g: &GridGeometry<f64>, k: usize) -> SpectralField<f64> {
        let xi = g.axis_frequency(k);
        SpectralField::from_fn(g, |x| (xi * x[0]).cos())
    }

    #[test]
    fn low_band_has_no_high_part() {
        let g = GridGeometry::<f64>::new(1, 128, 64.0).unwrap();
        // ξ = 2πk/128 for k <= 10 stays below 1/2
        let f = mode(&g, 10);
        let (lo, hi) = low_high_split(&f);
        assert!(hi.max_abs() < 1e-14);
        assert!((lo.max_abs() - 1.0).abs() < 1e-12);
        let f = mode(&g, 50);
        let (lo, _) = low_high_split(&f);
        assert!(lo.max_abs() < 1e-14);
    }

    #[test]
    fn single_mode_hits_three_pieces() {
        let g = GridGeometry::<f64>::new(1, 64, std::f64::consts::PI * 8.0).unwrap();
        // axis index j sits at |ξ| = j/8
        for j in [7, 8, 9, 12] {
            let f = mode(&g, j);
            let mut hit = Vec::new();
            for k in -4..5 {
                if dyadic_piece(&f, k).max_abs() > 1e-14 {
                    hit.push(k);
                }
            }
            assert!(!hit.is_empty() && hit.iter().all(|k| (-1..=1).contains(k)), "j = {j}: {hit:?}");
        }
    }
}
