use crate::error::{Error, Result};
use crate::semilinear::{initial_data, SemilinearConfig, Stepper};
use crate::spectral::GridGeometry;

use super::test_function::{ball_volume, eta_power_constant, phi_power_constant, TestFunctionPair};

/// Grid values of `u` at uniformly spaced times starting at 0.
#[derive(Debug, Clone)]
pub struct SpaceTimeField {
    pub geometry: GridGeometry<f64>,
    pub times: Vec<f64>,
    pub values: Vec<Vec<f64>>,
}

impl SpaceTimeField {
    pub fn new(geometry: GridGeometry<f64>, times: Vec<f64>, values: Vec<Vec<f64>>) -> Result<Self> {
        if times.len() < 2 || times.len() != values.len() {
            return Err(Error::Precondition("need at least two time levels, one per value slice".into()));
        }
        if times[0] != 0.0 {
            return Err(Error::Precondition("times must start at 0".into()));
        }
        let dt = times[1] - times[0];
        if !(dt > 0.0) || times.windows(2).any(|w| ((w[1] - w[0]) - dt).abs() > 1e-9 * dt) {
            return Err(Error::Precondition("times must be uniformly spaced".into()));
        }
        if values.iter().any(|v| v.len() != geometry.total()) {
            return Err(Error::GeometryMismatch("value slice does not match the grid".into()));
        }
        Ok(Self { geometry, times, values })
    }

    /// Same value everywhere.
    pub fn constant(geometry: GridGeometry<f64>, times: Vec<f64>, c: f64) -> Result<Self> {
        let values = vec![vec![c; geometry.total()]; times.len()];
        Self::new(geometry, times, values)
    }

    /// Records every step of a semilinear run up to `t_end`.
    pub fn from_run(cfg: &SemilinearConfig, t_end: f64) -> Result<Self> {
        let data = initial_data(cfg)?;
        let steps = (t_end / cfg.dt).round() as usize;
        if steps == 0 || ((steps as f64) * cfg.dt - t_end).abs() > 1e-9 * t_end {
            return Err(Error::Precondition(format!("t_end = {t_end} is not a multiple of dt = {}", cfg.dt)));
        }
        let stepper = Stepper::new(&data.geometry, cfg.alpha, cfg.coupling, cfg.quadrature, cfg.dt);
        let mut w = stepper.start(0.0, data.u0.coeffs().to_vec(), data.u1.coeffs().to_vec());
        let mut times = vec![0.0];
        let mut values = vec![w.values.clone()];
        for k in 1..=steps {
            w = stepper.advance(&w)?;
            times.push(k as f64 * cfg.dt);
            values.push(w.values.clone());
        }
        Self::new(data.geometry, times, values)
    }
}

/// Both sides of the weak formulation tested against `ψ_τ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeakPairing {
    /// `∫∫ u (∂²_t + Δ² + 1) ψ_τ`.
    pub lhs: f64,
    /// `∫∫ |u|^α ψ_τ`.
    pub i_tau: f64,
}

pub fn weak_pairing(u: &SpaceTimeField, pair: &TestFunctionPair, alpha: f64) -> Result<WeakPairing> {
    let g = &u.geometry;
    if g.n() as u32 != pair.n {
        return Err(Error::GeometryMismatch(format!("grid dimension {} vs test function {}", g.n(), pair.n)));
    }
    let tau = pair.tau;
    let reach = tau.sqrt();
    if g.half_width() <= reach {
        return Err(Error::Precondition(format!(
            "grid half width {} does not cover the support radius {reach}",
            g.half_width()
        )));
    }
    if *u.times.last().expect("nonempty") < tau {
        return Err(Error::Precondition(format!("time samples end before tau = {tau}")));
    }
    let phi: Vec<f64> = (0..g.total()).map(|i| pair.phi_tau(g.radius(i))).collect();
    let bilap: Vec<f64> = (0..g.total()).map(|i| pair.phi_tau_bilaplacian(g.radius(i))).collect();
    let cell = g.cell_volume();
    let dt = u.times[1] - u.times[0];
    let (mut lhs, mut i_tau) = (0.0, 0.0);
    for (k, (&t, vals)) in u.times.iter().zip(&u.values).enumerate() {
        if t > tau {
            break;
        }
        let w = if k == 0 { 0.5 * dt } else { dt };
        let (mut a, mut b, mut c) = (0.0, 0.0, 0.0);
        for ((&v, &p), &d) in vals.iter().zip(&phi).zip(&bilap) {
            if p == 0.0 && d == 0.0 {
                continue;
            }
            a += v * p;
            b += v * d;
            c += v.abs().powf(alpha) * p;
        }
        let eta = pair.eta_tau(t);
        lhs += w * cell * (pair.eta_tau_dd(t) * a + eta * (b + a));
        i_tau += w * cell * eta * c;
    }
    Ok(WeakPairing { lhs, i_tau })
}

/// `C = (C_η + C_φ + 1)|B₁|^{1/α'}` with the sampled cutoff-power constants.
pub fn holder_constant(n: u32, alpha: f64) -> f64 {
    let conj = alpha / (alpha - 1.0);
    let ce = eta_power_constant(alpha);
    let cp = phi_power_constant(alpha, n);
    // sampled suprema, small allowance for the gaps between samples
    1.01 * (ce + cp + 1.0) * ball_volume(n).powf(1.0 / conj)
}

/// Right side `C τ^{-2 + (1+n/2)/α'} I(τ)^{1/α}` of the Hölder chain.
pub fn holder_bound(n: u32, alpha: f64, tau: f64, i_tau: f64) -> f64 {
    let conj = alpha / (alpha - 1.0);
    let power = -2.0 + (1.0 + n as f64 / 2.0) / conj;
    holder_constant(n, alpha) * tau.powf(power) * i_tau.powf(1.0 / alpha)
}

/// One evaluation of the chain `|lhs| <= bound`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HolderCheck {
    pub tau: f64,
    pub pairing: WeakPairing,
    pub bound: f64,
}

impl HolderCheck {
    pub fn holds(&self) -> bool {
        self.pairing.lhs.abs() <= self.bound
    }

    /// `|lhs| / (τ^{…} I^{1/α})`: the constant this sample needs.
    pub fn needed_constant(&self, n: u32, alpha: f64) -> f64 {
        let c = holder_constant(n, alpha);
        self.pairing.lhs.abs() / self.bound * c
    }
}

pub fn holder_check(u: &SpaceTimeField, tau: f64, alpha: f64) -> Result<HolderCheck> {
    let n = u.geometry.n() as u32;
    let pair = TestFunctionPair::new(n, tau)?;
    let pairing = weak_pairing(u, &pair, alpha)?;
    Ok(HolderCheck { tau, pairing, bound: holder_bound(n, alpha, tau, pairing.i_tau) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nonexistence::test_function::{eta_integral, phi_integral};
    use approx::assert_relative_eq;

    fn times(dt: f64, count: usize) -> Vec<f64> {
        (0..count).map(|k| k as f64 * dt).collect()
    }

    #[test]
    fn zero_and_constant_fields() {
        let g = GridGeometry::new(1, 4096, 2.0).unwrap();
        let pair = TestFunctionPair::new(1, 0.5).unwrap();
        let zero = SpaceTimeField::constant(g.clone(), times(1.0 / 256.0, 200), 0.0).unwrap();
        assert_eq!(weak_pairing(&zero, &pair, 2.0).unwrap(), WeakPairing { lhs: 0.0, i_tau: 0.0 });
        let one = SpaceTimeField::constant(g, times(1.0 / 2048.0, 1040), 1.0).unwrap();
        let w = weak_pairing(&one, &pair, 2.0).unwrap();
        let expected = 0.5_f64.powf(1.5) * eta_integral() * phi_integral(1);
        assert_relative_eq!(w.i_tau, expected, max_relative = 1e-8);
        // ∫∫ ∂²_t ψ and ∫∫ Δ²ψ vanish, leaving ∫∫ψ
        assert_relative_eq!(w.lhs, expected, max_relative = 1e-6);
    }

    #[test]
    fn coverage_is_checked() {
        let g = GridGeometry::new(1, 64, 0.5).unwrap();
        let pair = TestFunctionPair::new(1, 0.5).unwrap();
        let u = SpaceTimeField::constant(g.clone(), times(0.01, 100), 1.0).unwrap();
        assert!(weak_pairing(&u, &pair, 2.0).is_err());
        let g2 = GridGeometry::new(1, 64, 2.0).unwrap();
        let short = SpaceTimeField::constant(g2, times(0.01, 10), 1.0).unwrap();
        assert!(weak_pairing(&short, &pair, 2.0).is_err());
    }
}
