use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::radial::{AnnulusBump, RadialSpectrum};
use crate::real::{bracket, Real};
use crate::spectral::{GridGeometry, SpectralField};

/// Relative level of `|û|/ω` that defines the measured band limit.
pub const BAND_TOLERANCE: f64 = 1e-2;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DatumKind<T> {
    /// `exp(-|x|²/(2w²))`.
    Gaussian { width: T },
    /// `exp(1 - 1/(1 - |x|²/R²))` inside `|x| < R`.
    SmoothBump { radius: T },
    /// `|x|^{-k}` on `|x| <= 1`, capped at one grid spacing.
    SingularPower { k: T },
    /// Spectrum given by a smooth bump on the annulus `lo <= |ξ| <= hi`.
    BandLimitedRadial { lo: T, hi: T },
    /// Spectrum `|ξ|^{k-n} exp(-|ξ|²/s²)` with a zero mean mode; `f ~ |x|^{-k}` at infinity.
    SpectralPowerTail { k: T, scale: T },
    /// Seeded random coefficients on `|ξ| <= cutoff`.
    RandomBandLimited { cutoff: T },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DatumSpec<T> {
    pub kind: DatumKind<T>,
    pub amplitude: T,
    pub seed: u64,
}

impl<T: Real> DatumSpec<T> {
    pub fn new(kind: DatumKind<T>) -> Self {
        Self { kind, amplitude: T::one(), seed: 0 }
    }

    pub fn with_amplitude(mut self, amplitude: T) -> Self {
        self.amplitude = amplitude;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }
}

/// A datum realized on a grid, with the sizes that enter the wrap-around rule.
#[derive(Debug, Clone)]
pub struct Datum<T: Real> {
    pub spec: DatumSpec<T>,
    pub field: SpectralField<T>,
    /// Spatial radius of the datum (0 for spectrally defined data).
    pub x_extent: T,
    /// Largest `|ξ|` where `|û|/ω` exceeds [`BAND_TOLERANCE`] of its maximum.
    pub band_limit: T,
}

fn smooth_bump<T: Real>(rho: T) -> T {
    let d = T::one() - rho * rho;
    if d <= T::zero() {
        T::zero()
    } else {
        (T::one() - d.recip()).exp()
    }
}

fn positive<T: Real>(name: &str, v: T) -> Result<()> {
    if v > T::zero() && v.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidDatum(format!("{name} = {v} must be positive")))
    }
}

pub fn make_datum<T: Real>(spec: &DatumSpec<T>, geometry: &GridGeometry<T>) -> Result<Datum<T>> {
    let n = geometry.n();
    let nf = T::from_usize_lossy(n);
    let l = geometry.half_width();
    let radius = |x: &[T]| x.iter().fold(T::zero(), |s, &v| s + v * v).sqrt();
    let (field, x_extent) = match spec.kind {
        DatumKind::Gaussian { width } => {
            positive("width", width)?;
            let inv = T::one() / (T::lit(2.0) * width * width);
            let f = SpectralField::from_fn(geometry, |x| {
                let r = radius(x);
                (-(r * r) * inv).exp()
            });
            // level 1e-2 of the peak
            (f, width * (T::lit(2.0) * T::lit(100.0).ln()).sqrt())
        }
        DatumKind::SmoothBump { radius: rr } => {
            positive("radius", rr)?;
            (SpectralField::from_fn(geometry, |x| smooth_bump(radius(x) / rr)), rr)
        }
        DatumKind::SingularPower { k } => {
            if !(k >= T::zero()) || k >= nf {
                return Err(Error::InvalidDatum(format!("singular power needs 0 <= k < n = {n}, got k = {k}")));
            }
            let h = geometry.spacing();
            let f = SpectralField::from_fn(geometry, |x| {
                let r = radius(x);
                if r <= T::one() {
                    r.max(h).powf(-k)
                } else {
                    T::zero()
                }
            });
            (f, T::one())
        }
        DatumKind::BandLimitedRadial { lo, hi } => {
            let bump = AnnulusBump::new(lo, hi, T::one())?;
            (SpectralField::from_radial_spectrum(geometry, |r| bump.value(r)), T::zero())
        }
        DatumKind::SpectralPowerTail { k, scale } => {
            positive("scale", scale)?;
            if !(k > T::zero()) || k >= nf {
                return Err(Error::InvalidDatum(format!("power tail needs 0 < k < n = {n}, got k = {k}")));
            }
            let f = SpectralField::from_radial_spectrum(geometry, |r| {
                if r == T::zero() {
                    T::zero()
                } else {
                    r.powf(k - nf) * (-(r * r) / (scale * scale)).exp()
                }
            });
            (f, T::zero())
        }
        DatumKind::RandomBandLimited { cutoff } => {
            positive("cutoff", cutoff)?;
            let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
            let coeffs: Vec<Complex<T>> = geometry
                .xi_sq()
                .iter()
                .map(|&s| {
                    let (re, im): (f64, f64) = (rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
                    if s.sqrt() <= cutoff {
                        Complex::new(T::lit(re), T::lit(im))
                    } else {
                        Complex::new(T::zero(), T::zero())
                    }
                })
                .collect();
            let f = SpectralField::from_coeffs(geometry, coeffs)?;
            let m = f.max_abs();
            let f = if m > T::zero() { f.scaled(m.recip()) } else { f };
            (f, T::zero())
        }
    };
    if x_extent >= l {
        return Err(Error::InvalidDatum(format!("datum extent {x_extent} exceeds the half width {l}")));
    }
    let field = field.scaled(spec.amplitude);
    let band_limit = measured_band_limit(&field);
    Ok(Datum { spec: *spec, field, x_extent, band_limit })
}

/// Largest `|ξ|` where `|ĉ|/ω >= BAND_TOLERANCE · max`.
pub fn measured_band_limit<T: Real>(field: &SpectralField<T>) -> T {
    let xs = field.geometry().xi_sq();
    let weights: Vec<T> = field.coeffs().iter().zip(xs).map(|(c, &s)| c.norm() / bracket(s)).collect();
    let top = weights.iter().fold(T::zero(), |m, &w| m.max(w));
    if top == T::zero() {
        return T::zero();
    }
    let level = top * T::lit(BAND_TOLERANCE);
    weights
        .iter()
        .zip(xs)
        .filter(|(&w, _)| w >= level)
        .fold(T::zero(), |m, (_, &s)| m.max(s.sqrt()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multiplier_theory::Rational;
    use crate::spectral::lp_norm;
    use approx::assert_relative_eq;

    #[test]
    fn gaussian_mass() {
        for n in 1..=2 {
            let g = GridGeometry::<f64>::new(n, 128, 12.0).unwrap();
            let d = make_datum(&DatumSpec::new(DatumKind::Gaussian { width: 1.0 }), &g).unwrap();
            let l1 = lp_norm(&d.field, Rational::new(1, 1));
            assert_relative_eq!(l1, (2.0 * std::f64::consts::PI).powf(n as f64 / 2.0), max_relative = 1e-8);
        }
    }

    #[test]
    fn singular_power_mass_converges() {
        let mut last_err = f64::INFINITY;
        for pts in [128, 256, 512] {
            let g = GridGeometry::<f64>::new(2, pts, 2.0).unwrap();
            let d = make_datum(&DatumSpec::new(DatumKind::SingularPower { k: 1.0 }), &g).unwrap();
            let err = (lp_norm(&d.field, Rational::new(1, 1)) - 2.0 * std::f64::consts::PI).abs();
            assert!(err < last_err);
            last_err = err;
        }
        assert!(last_err < 0.05);
        let g = GridGeometry::<f64>::new(2, 64, 2.0).unwrap();
        assert!(make_datum(&DatumSpec::new(DatumKind::SingularPower { k: 2.0 }), &g).is_err());
    }

    #[test]
    fn band_limited_support() {
        let g = GridGeometry::<f64>::new(2, 64, 20.0).unwrap();
        let d = make_datum(&DatumSpec::new(DatumKind::BandLimitedRadial { lo: 0.5, hi: 1.5 }), &g).unwrap();
        let top = d.field.coeffs().iter().fold(0.0_f64, |m, c| m.max(c.norm()));
        for (c, &s) in d.field.coeffs().iter().zip(g.xi_sq()) {
            let r = s.sqrt();
            if r <= 0.5 || r >= 1.5 {
                assert!(c.norm() <= 1e-12 * top);
            }
        }
        assert!(d.band_limit <= 1.5);
    }

    #[test]
    fn support_exceeding_domain_rejected() {
        let g = GridGeometry::<f64>::new(1, 64, 2.0).unwrap();
        assert!(make_datum(&DatumSpec::new(DatumKind::SmoothBump { radius: 3.0 }), &g).is_err());
    }

    #[test]
    fn random_datum_is_seeded() {
        let g = GridGeometry::<f64>::new(1, 256, 50.0).unwrap();
        let spec = DatumSpec::new(DatumKind::RandomBandLimited { cutoff: 2.0 }).with_seed(7);
        let a = make_datum(&spec, &g).unwrap();
        let b = make_datum(&spec, &g).unwrap();
        assert_eq!(a.field.values(), b.field.values());
        let c = make_datum(&spec.with_seed(8), &g).unwrap();
        assert_ne!(a.field.values(), c.field.values());
        assert!(a.band_limit <= 2.0);
    }
}
