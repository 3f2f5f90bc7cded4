use rayon::prelude::*;

use crate::cutoff::{chi, half_cutoff_jet, radial_bilaplacian};
use crate::decay_lab::{fit_power_law, SlopeFit};
use crate::error::{Error, Result};
use crate::quadrature::integrate_adaptive;
use crate::radial::recip_gamma;

const SAMPLES: usize = 20_000;

/// `|S^{n-1}|`.
pub fn sphere_area(n: u32) -> f64 {
    2.0 * std::f64::consts::PI.powf(n as f64 / 2.0) * recip_gamma(n as f64 / 2.0)
}

/// Volume of the unit ball in `ℝⁿ`.
pub fn ball_volume(n: u32) -> f64 {
    sphere_area(n) / n as f64
}

/// `η(t) = χ(2t)` and `φ(x) = χ(2|x|)`, rescaled as `ψ_τ(t,x) = η(t/τ) φ(x/τ^{1/2})`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TestFunctionPair {
    pub n: u32,
    pub tau: f64,
}

impl TestFunctionPair {
    pub fn new(n: u32, tau: f64) -> Result<Self> {
        if n == 0 {
            return Err(Error::Precondition("dimension must be positive".into()));
        }
        if !(tau > 0.0 && tau <= 1.0) {
            return Err(Error::Precondition(format!("tau = {tau} must lie in (0, 1]")));
        }
        Ok(Self { n, tau })
    }

    pub fn eta(s: f64) -> f64 {
        if s < 0.0 {
            0.0
        } else {
            chi(2.0 * s)
        }
    }

    pub fn eta_dd(s: f64) -> f64 {
        if s < 0.0 {
            0.0
        } else {
            half_cutoff_jet(s).derivative(2)
        }
    }

    pub fn phi(r: f64) -> f64 {
        chi(2.0 * r)
    }

    /// `Δ²φ` at radius `r` (zero on the plateau).
    pub fn phi_bilaplacian(r: f64, n: u32) -> f64 {
        if r <= 0.5 || r >= 1.0 {
            0.0
        } else {
            radial_bilaplacian(&half_cutoff_jet(r), r, n)
        }
    }

    pub fn eta_tau(&self, t: f64) -> f64 {
        Self::eta(t / self.tau)
    }

    pub fn eta_tau_dd(&self, t: f64) -> f64 {
        Self::eta_dd(t / self.tau) / (self.tau * self.tau)
    }

    pub fn phi_tau(&self, r: f64) -> f64 {
        Self::phi(r / self.tau.sqrt())
    }

    pub fn phi_tau_bilaplacian(&self, r: f64) -> f64 {
        Self::phi_bilaplacian(r / self.tau.sqrt(), self.n) / (self.tau * self.tau)
    }

    pub fn psi(&self, t: f64, r: f64) -> f64 {
        self.eta_tau(t) * self.phi_tau(r)
    }
}

/// `∫₀^∞ η`.
pub fn eta_integral() -> f64 {
    0.5 + integrate_adaptive(0.5, 1.0, 1e-15, 1e-13, 200, TestFunctionPair::eta).expect("smooth integrand")
}

/// `∫_{ℝⁿ} φ`.
pub fn phi_integral(n: u32) -> f64 {
    let m = n as f64;
    let inner = 0.5_f64.powf(m) / m;
    let edge = integrate_adaptive(0.5, 1.0, 1e-15, 1e-13, 200, |r| TestFunctionPair::phi(r) * r.powf(m - 1.0))
        .expect("smooth integrand");
    sphere_area(n) * (inner + edge)
}

fn power_ratio_sup(r: f64, f: impl Fn(f64) -> (f64, f64)) -> f64 {
    (0..SAMPLES)
        .map(|i| 0.5 + 0.5 * (i as f64 + 0.5) / SAMPLES as f64)
        .map(|s| {
            let (value, deriv) = f(s);
            if value < 1e-300 {
                0.0
            } else {
                deriv.abs() / value.powf(1.0 / r)
            }
        })
        .fold(0.0, f64::max)
}

/// Sampled `sup |η''| / η^{1/r}`.
pub fn eta_power_constant(r: f64) -> f64 {
    power_ratio_sup(r, |s| (TestFunctionPair::eta(s), TestFunctionPair::eta_dd(s)))
}

/// Sampled `sup |Δ²φ| / φ^{1/r}` in dimension `n`.
pub fn phi_power_constant(r: f64, n: u32) -> f64 {
    power_ratio_sup(r, |s| (TestFunctionPair::phi(s), TestFunctionPair::phi_bilaplacian(s, n)))
}

/// `∫ |x|^{-k} 1_{|x|<=1} φ(x/τ^{1/2}) dx` by radial quadrature with `r = v^{1/(n-k)}`.
pub fn datum_pairing(k: f64, n: u32, tau: f64) -> Result<f64> {
    let m = n as f64;
    if !(k >= 0.0 && k < m) {
        return Err(Error::Precondition(format!("need 0 <= k < n, got k = {k}, n = {n}")));
    }
    TestFunctionPair::new(n, tau)?;
    let a = m - k;
    let root = tau.sqrt();
    // φ(r/√τ) = 1 for v <= (√τ/2)^a
    let plateau = (0.5 * root).powf(a);
    let end = root.powf(a);
    let edge = integrate_adaptive(plateau, end, 1e-300, 1e-13, 400, |v| TestFunctionPair::phi(v.powf(1.0 / a) / root))?;
    Ok(sphere_area(n) / a * (plateau + edge))
}

/// Lattice sum of the same pairing on `[-τ^{1/2}, τ^{1/2}]ⁿ` with `cells` spacings
/// per half width; the singularity is capped at one spacing. Meant for `n <= 3`.
pub fn datum_pairing_on_grid(k: f64, n: u32, tau: f64, cells: usize) -> Result<f64> {
    if !(1..=3).contains(&n) {
        return Err(Error::Precondition(format!("grid pairing supports n <= 3, got {n}")));
    }
    if cells < 32 {
        return Err(Error::Precondition(format!("{cells} cells do not resolve the test function")));
    }
    if !(k >= 0.0 && k < n as f64) {
        return Err(Error::Precondition(format!("need 0 <= k < n, got k = {k}, n = {n}")));
    }
    let pair = TestFunctionPair::new(n, tau)?;
    let h = tau.sqrt() / cells as f64;
    let c = cells as i64;
    let axis: Vec<f64> = (-c..=c).map(|j| j as f64 * h).collect();
    let term = |r2: f64| {
        let r = r2.sqrt();
        r.max(h).powf(-k) * pair.phi_tau(r)
    };
    let sum: f64 = match n {
        1 => axis.iter().map(|x| term(x * x)).sum(),
        2 => axis.par_iter().map(|x| axis.iter().map(|y| term(x * x + y * y)).sum::<f64>()).sum(),
        _ => axis
            .par_iter()
            .map(|x| {
                let mut s = 0.0;
                for y in &axis {
                    for z in &axis {
                        s += term(x * x + y * y + z * z);
                    }
                }
                s
            })
            .sum(),
    };
    Ok(sum * h.powi(n as i32))
}

/// Pairings over a τ sweep and the fitted power of τ.
#[derive(Debug, Clone)]
pub struct DatumScaling {
    pub taus: Vec<f64>,
    pub values: Vec<f64>,
    pub fit: SlopeFit,
}

pub fn datum_scaling(k: f64, n: u32, taus: &[f64]) -> Result<DatumScaling> {
    let values = taus.par_iter().map(|&t| datum_pairing(k, n, t)).collect::<Result<Vec<f64>>>()?;
    let lo = taus.iter().cloned().fold(f64::INFINITY, f64::min);
    let hi = taus.iter().cloned().fold(0.0, f64::max);
    let fit = fit_power_law(taus, &values, (lo, hi), 0.0)?;
    Ok(DatumScaling { taus: taus.to_vec(), values, fit })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn geometry_constants() {
        assert_relative_eq!(sphere_area(1), 2.0, max_relative = 1e-13);
        assert_relative_eq!(sphere_area(3), 4.0 * std::f64::consts::PI, max_relative = 1e-13);
        assert_relative_eq!(ball_volume(2), std::f64::consts::PI, max_relative = 1e-13);
        // η is symmetric about 3/4, so ∫η = 3/4
        assert_relative_eq!(eta_integral(), 0.75, max_relative = 1e-12);
        assert_relative_eq!(phi_integral(1), 1.5, max_relative = 1e-12);
    }

    #[test]
    fn plateaus_and_support() {
        let p = TestFunctionPair::new(2, 0.04).unwrap();
        assert_eq!(p.psi(0.02, 0.1), 1.0);
        assert_eq!(p.psi(0.04, 0.0), 0.0);
        assert_eq!(p.psi(0.0, 0.2), 0.0);
        assert!(p.psi(0.03, 0.15) > 0.0 && p.psi(0.03, 0.15) < 1.0);
        assert!(TestFunctionPair::new(2, 1.5).is_err());
    }

    #[test]
    fn pairing_scaling_is_exact() {
        let base = datum_pairing(1.0, 3, 1.0).unwrap();
        for &tau in &[1e-4, 1e-2, 0.3] {
            assert_relative_eq!(datum_pairing(1.0, 3, tau).unwrap(), base * tau, max_relative = 1e-10);
            assert_relative_eq!(datum_pairing(0.0, 2, tau).unwrap(), tau * phi_integral(2), max_relative = 1e-10);
        }
        assert!(datum_pairing(3.0, 3, 0.5).is_err());
    }

    #[test]
    fn grid_cross_check() {
        for (k, n, cells) in [(0.5, 1, 1 << 14), (1.0, 2, 512), (1.0, 3, 96)] {
            let exact = datum_pairing(k, n, 0.25).unwrap();
            let grid = datum_pairing_on_grid(k, n, 0.25, cells).unwrap();
            assert_relative_eq!(grid, exact, max_relative = 2e-2);
        }
        assert!(datum_pairing_on_grid(1.0, 2, 0.25, 8).is_err());
    }

    #[test]
    fn cutoff_power_constants_are_finite() {
        for r in [2.0, 5.0, 10.0] {
            let ce = eta_power_constant(r);
            assert!(ce.is_finite() && ce > 0.0);
            for n in 1..=5 {
                let cp = phi_power_constant(r, n);
                assert!(cp.is_finite() && cp > 0.0);
            }
        }
    }
}
