use crate::error::{Error, Result};
use crate::real::{bracket, Real};

use super::profile::RadialSpectrum;

/// Root of `2r³/⟨r²⟩ = |x|/t` and the phase `h(r₀) = ⟨r₀²⟩ - (|x|/t) r₀`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StationaryData<T> {
    pub r0: T,
    pub h_r0: T,
    pub x_over_t: T,
}

/// `2r³/⟨r²⟩`, the derivative of `⟨r²⟩`.
pub fn group_speed<T: Real>(r: T) -> T {
    T::lit(2.0) * r * r * r / bracket(r * r)
}

/// `h''(r) = 2r²(3 + r⁴)/⟨r²⟩³`.
pub fn phase_curvature<T: Real>(r: T) -> T {
    let r2 = r * r;
    let b = bracket(r2);
    T::lit(2.0) * r2 * (T::lit(3.0) + r2 * r2) / (b * b * b)
}

/// Bracket for `r₀`: `max(s/2, (s/2)^{1/3}) <= r₀ <= max(s/√2, (s/√2)^{1/3})`.
pub fn root_bracket<T: Real>(s: T) -> (T, T) {
    let a = s * T::lit(0.5);
    let b = s / T::SQRT_2();
    (a.max(a.cbrt()), b.max(b.cbrt()))
}

pub fn stationary_point<T: Real>(x_over_t: T) -> StationaryData<T> {
    assert!(x_over_t > T::zero(), "x/t must be positive");
    let s = x_over_t;
    let (lo0, hi0) = root_bracket(s);
    let pad = T::one() + T::tol(64.0);
    let (mut lo, mut hi) = (lo0 / pad, hi0 * pad);
    let mut r = (lo + hi) * T::lit(0.5);
    for _ in 0..200 {
        let f = group_speed(r) - s;
        if f == T::zero() {
            break;
        }
        if f < T::zero() {
            lo = r;
        } else {
            hi = r;
        }
        let newton = r - f / phase_curvature(r);
        let next = if newton > lo && newton < hi { newton } else { (lo + hi) * T::lit(0.5) };
        if (next - r).abs() <= T::epsilon() * r {
            r = next;
            break;
        }
        r = next;
    }
    StationaryData { r0: r, h_r0: bracket(r * r) - s * r, x_over_t: s }
}

/// Leading-order stationary-phase evaluation of the `I₋` branch.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StationaryPhase<T> {
    pub data: StationaryData<T>,
    /// Value without the sine factor.
    pub envelope: T,
    /// `sin(t h(r₀) + π/4)` with the dimension phase `(n-1)π/4` folded into `h`.
    pub sine: T,
}

impl<T: Real> StationaryPhase<T> {
    pub fn value(&self) -> T {
        self.envelope * self.sine
    }
}

pub fn stationary_phase<T: Real, P: RadialSpectrum<T> + ?Sized>(
    profile: &P,
    t: T,
    x_abs: T,
    n: usize,
) -> Result<StationaryPhase<T>> {
    if !(t > T::zero()) || !(x_abs > T::zero()) {
        return Err(Error::Precondition(format!("need t > 0 and |x| > 0, got t={t}, |x|={x_abs}")));
    }
    let data = stationary_point(x_abs / t);
    let (lo, hi) = profile.support();
    if data.r0 <= lo || data.r0 >= hi {
        return Err(Error::NoStationaryContribution(format!(
            "r0 = {} outside the profile support [{lo}, {hi}]",
            data.r0
        )));
    }
    let nf = T::from_usize_lossy(n);
    let two_pi = T::lit(2.0) * T::PI();
    let constant = two_pi.powf(-nf * T::lit(0.5)) * (T::lit(2.0) / T::PI()).sqrt() * T::lit(0.5);
    let envelope = constant
        * x_abs.powf((T::one() - nf) * T::lit(0.5))
        * profile.amplitude(data.r0, n)
        * (two_pi / (t * phase_curvature(data.r0))).sqrt();
    let phase = t * data.h_r0 + (nf - T::one()) * T::FRAC_PI_4() + T::FRAC_PI_4();
    Ok(StationaryPhase { data, envelope, sine: phase.sin() })
}

pub fn stationary_phase_value<T: Real, P: RadialSpectrum<T> + ?Sized>(
    profile: &P,
    t: T,
    x_abs: T,
    n: usize,
) -> Result<T> {
    stationary_phase(profile, t, x_abs, n).map(|s| s.value())
}
