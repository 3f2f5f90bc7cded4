use crate::error::{Error, Result};
use crate::quadrature::integrate_adaptive;

const REL_TOL: f64 = 1e-10;
const MAX_PANELS: usize = 4000;

/// A value of the auxiliary time integral next to its predicted envelope.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AuxiliaryValue {
    pub t: f64,
    pub integral: f64,
    pub envelope: f64,
}

impl AuxiliaryValue {
    pub fn ratio(&self) -> f64 {
        self.integral / self.envelope
    }
}

/// `(1+t)^ν`, `(1+t)^ν log(e+t)` or `(1+t)^{1+ν+μ}` for `μ < -1`, `μ = -1`, `μ > -1`.
pub fn envelope(nu: f64, mu: f64, t: f64) -> f64 {
    if mu < -1.0 {
        (1.0 + t).powf(nu)
    } else if mu == -1.0 {
        (1.0 + t).powf(nu) * (std::f64::consts::E + t).ln()
    } else {
        (1.0 + t).powf(1.0 + nu + mu)
    }
}

/// `∫₀ᵗ (t-s)^ν e^{-c(t-s)} (1+s)^μ ds`. Near `s = t` the substitution
/// `t - s = v^{1/(ν+1)}` absorbs the singular factor.
fn kernel_integral(nu: f64, mu: f64, c: f64, t: f64) -> Result<f64> {
    if !(nu > -1.0) || !nu.is_finite() {
        return Err(Error::Precondition(format!("nu = {nu} must exceed -1")));
    }
    if !(t >= 0.0) || !t.is_finite() || !mu.is_finite() {
        return Err(Error::Precondition(format!("bad arguments mu = {mu}, t = {t}")));
    }
    if t == 0.0 {
        return Ok(0.0);
    }
    let k = nu + 1.0;
    let far = |s: f64| (t - s).powf(nu) * (-c * (t - s)).exp() * (1.0 + s).powf(mu);
    let near = |v: f64| {
        let r = v.powf(1.0 / k);
        (-c * r).exp() * (1.0 + t - r).powf(mu) / k
    };
    let scale = (1.0 + t).powf(mu.max(0.0)) * t.max(1.0).powf(nu.max(0.0) + 1.0);
    let abs_tol = 1e-15 * scale;
    let half = 0.5 * t;
    let mut total = integrate_adaptive(0.0, half, abs_tol, REL_TOL, MAX_PANELS, far)?;
    // the exponential factor concentrates the mass within a few 1/c of s = t
    let mut cuts = vec![0.0];
    if c > 0.0 && 40.0 / c < half {
        cuts.push(40.0 / c);
    }
    cuts.push(half);
    for w in cuts.windows(2) {
        total += integrate_adaptive(w[0].powf(k), w[1].powf(k), abs_tol, REL_TOL, MAX_PANELS, near)?;
    }
    Ok(total)
}

/// `∫₀ᵗ (t-s)^ν (1+s)^μ ds` with its envelope.
pub fn auxiliary_integral(nu: f64, mu: f64, t: f64) -> Result<AuxiliaryValue> {
    let integral = kernel_integral(nu, mu, 0.0, t)?;
    Ok(AuxiliaryValue { t, integral, envelope: envelope(nu, mu, t) })
}

/// `∫₀ᵗ (t-s)^ν e^{-c(t-s)} (1+s)^μ ds` against `(1+t)^μ`.
pub fn auxiliary_integral_exponential(nu: f64, mu: f64, c: f64, t: f64) -> Result<AuxiliaryValue> {
    if !(c > 0.0) {
        return Err(Error::Precondition(format!("decay rate c = {c} must be positive")));
    }
    let integral = kernel_integral(nu, mu, c, t)?;
    Ok(AuxiliaryValue { t, integral, envelope: (1.0 + t).powf(mu) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn exact_antiderivatives() {
        for &t in &[0.5, 3.0, 1e3, 1e4] {
            let a = auxiliary_integral(0.0, 0.0, t).unwrap();
            assert_relative_eq!(a.integral, t, max_relative = 1e-10);
            let b = auxiliary_integral(0.0, -2.0, t).unwrap();
            assert_relative_eq!(b.integral, 1.0 - 1.0 / (1.0 + t), max_relative = 1e-9);
            assert!(b.integral <= 1.0);
            let c = auxiliary_integral(0.0, -1.0, t).unwrap();
            assert_relative_eq!(c.integral, (1.0 + t).ln(), max_relative = 1e-9);
        }
    }

    #[test]
    fn singular_kernel() {
        // ∫₀ᵗ (t-s)^{-1/2} ds = 2√t
        let v = auxiliary_integral(-0.5, 0.0, 7.0).unwrap();
        assert_relative_eq!(v.integral, 2.0 * 7f64.sqrt(), max_relative = 1e-9);
        // ∫₀ᵗ (t-s)^{-1/2} e^{-(t-s)} ds = √π erf(√t)
        let e = auxiliary_integral_exponential(-0.5, 0.0, 1.0, 50.0).unwrap();
        assert_relative_eq!(e.integral, std::f64::consts::PI.sqrt(), max_relative = 1e-9);
        assert!(auxiliary_integral(-1.0, 0.0, 1.0).is_err());
        assert_eq!(auxiliary_integral(0.3, -0.4, 0.0).unwrap().integral, 0.0);
    }
}
