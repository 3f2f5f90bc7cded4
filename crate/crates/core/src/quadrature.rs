//! Gauss–Legendre rules and adaptive Gauss–Kronrod integration.

use crate::error::{Error, Result};
use crate::real::Real;

/// Nodes and weights of the `m`-point Gauss–Legendre rule on `[-1, 1]`.
#[derive(Debug, Clone)]
pub struct GaussLegendre<T> {
    pub nodes: Vec<T>,
    pub weights: Vec<T>,
}

impl<T: Real> GaussLegendre<T> {
    pub fn new(m: usize) -> Self {
        assert!(m >= 1, "rule needs at least one node");
        let mut nodes = vec![T::zero(); m];
        let mut weights = vec![T::zero(); m];
        // Newton on P_m, computed in f64 and converted
        for i in 0..m.div_ceil(2) {
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (m as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (p, d) = legendre(m, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let (_, d) = legendre(m, x);
            dp = if d != 0.0 { d } else { dp };
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = T::lit(-x);
            nodes[m - 1 - i] = T::lit(x);
            weights[i] = T::lit(w);
            weights[m - 1 - i] = T::lit(w);
        }
        Self { nodes, weights }
    }

    /// `∫_a^b f` with this rule.
    pub fn integrate(&self, a: T, b: T, mut f: impl FnMut(T) -> T) -> T {
        let half = (b - a) * T::lit(0.5);
        let mid = (a + b) * T::lit(0.5);
        let mut s = T::zero();
        for (&x, &w) in self.nodes.iter().zip(&self.weights) {
            s = s + w * f(mid + half * x);
        }
        s * half
    }
}

fn legendre(m: usize, x: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, x);
    for k in 2..=m {
        let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
        p0 = p1;
        p1 = p2;
    }
    if m == 0 {
        return (1.0, 0.0);
    }
    let d = m as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

const K15_NODES: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const K15_WEIGHTS: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_728,
];
const G7_WEIGHTS: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

/// One G7K15 panel: (Kronrod estimate, |K15 - G7|).
fn kronrod_panel<T: Real>(a: T, b: T, f: &mut impl FnMut(T) -> T) -> (T, T) {
    let half = (b - a) * T::lit(0.5);
    let mid = (a + b) * T::lit(0.5);
    let fc = f(mid);
    let mut k = fc * T::lit(K15_WEIGHTS[7]);
    let mut g = fc * T::lit(G7_WEIGHTS[3]);
    for j in 0..7 {
        let dx = half * T::lit(K15_NODES[j]);
        let s = f(mid - dx) + f(mid + dx);
        k = k + s * T::lit(K15_WEIGHTS[j]);
        if j % 2 == 1 {
            g = g + s * T::lit(G7_WEIGHTS[j / 2]);
        }
    }
    (k * half, ((k - g) * half).abs())
}

/// Adaptive Gauss–Kronrod on `[a, b]` to `max(abs_tol, rel_tol |I|)`.
pub fn integrate_adaptive<T: Real>(
    a: T,
    b: T,
    abs_tol: T,
    rel_tol: T,
    max_panels: usize,
    mut f: impl FnMut(T) -> T,
) -> Result<T> {
    let (v, e) = kronrod_panel(a, b, &mut f);
    let mut panels = vec![(a, b, v, e)];
    loop {
        let total: T = panels.iter().map(|p| p.2).sum();
        let err: T = panels.iter().map(|p| p.3).sum();
        if !total.is_finite() {
            return Err(Error::Quadrature("non-finite integrand".into()));
        }
        if err <= abs_tol.max(rel_tol * total.abs()) {
            return Ok(total);
        }
        if panels.len() >= max_panels {
            return Err(Error::Quadrature(format!(
                "panel budget {max_panels} exhausted, error estimate {err}"
            )));
        }
        let worst = (0..panels.len())
            .max_by(|&i, &j| panels[i].3.partial_cmp(&panels[j].3).unwrap())
            .unwrap();
        let (pa, pb, _, _) = panels.swap_remove(worst);
        let pm = (pa + pb) * T::lit(0.5);
        let (v1, e1) = kronrod_panel(pa, pm, &mut f);
        let (v2, e2) = kronrod_panel(pm, pb, &mut f);
        panels.push((pa, pm, v1, e1));
        panels.push((pm, pb, v2, e2));
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn legendre_rule_exact_for_polynomials() {
        for m in 1..12 {
            let rule = GaussLegendre::<f64>::new(m);
            let deg = 2 * m - 1;
            let v = rule.integrate(0.0, 2.0, |x| x.powi(deg as i32));
            assert_relative_eq!(v, 2f64.powi(deg as i32 + 1) / (deg + 1) as f64, max_relative = 1e-13);
            assert_relative_eq!(rule.weights.iter().sum::<f64>(), 2.0, max_relative = 1e-14);
        }
    }

    #[test]
    fn adaptive_handles_peaks() {
        let v = integrate_adaptive(0.0, 1.0, 1e-14, 1e-12, 500, |x: f64| 1.0 / ((x - 0.3).powi(2) + 1e-4)).unwrap();
        let exact = 100.0 * ((0.7_f64 / 0.01).atan() + (0.3_f64 / 0.01).atan());
        assert_relative_eq!(v, exact, max_relative = 1e-10);
        assert!(integrate_adaptive(0.0, 1.0, 1e-30, 0.0, 4, |x: f64| x.sqrt().sin()).is_err());
    }
}
