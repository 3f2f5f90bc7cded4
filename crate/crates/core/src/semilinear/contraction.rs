use num_complex::Complex;

use crate::error::{Error, Result};
use crate::multiplier_theory::Rational;
use crate::quadrature::GaussLegendre;

use super::nonlinearity::power_difference;
use super::run::{initial_data, weight, SemilinearConfig};
use super::step::{Stepper, Work};

type Coeffs = Vec<Complex<f64>>;

/// Distances between successive Picard iterates and their ratios.
#[derive(Debug, Clone, PartialEq)]
pub struct ContractionReport {
    /// `‖u^{(j+1)} - u^{(j)}‖_X` for `j = 0, 1, ...`.
    pub distances: Vec<f64>,
    /// `distances[j+1] / distances[j]` (0 when both vanish).
    pub ratios: Vec<f64>,
}

/// Collocation Duhamel map with prescribed sources at every node.
/// Returns `û` at the nodes `p·dt/(s-1)`, `p = 0..=steps·(s-1)`.
fn duhamel_map(stepper: &Stepper<f64>, u0: &[Complex<f64>], u1: &[Complex<f64>], sources: &[Coeffs], steps: usize) -> Vec<Coeffs> {
    let s = stepper.rule().half_nodes().len();
    let mut out = Vec::with_capacity(steps * (s - 1) + 1);
    out.push(u0.to_vec());
    let mut w = Work { t: 0.0, u: u0.to_vec(), ut: u1.to_vec(), values: Vec::new(), source: Vec::new(), previous: None };
    for m in 0..steps {
        let base = m * (s - 1);
        let refs: Vec<&[Complex<f64>]> = sources[base..base + s].iter().map(|v| v.as_slice()).collect();
        let mut last = None;
        for i in 1..s {
            let (u, ut) = stepper.stage(&w, i, &refs);
            out.push(u.clone());
            last = Some((u, ut));
        }
        let (u, ut) = last.expect("at least two stages");
        w = Work { t: w.t + stepper.dt(), u, ut, values: Vec::new(), source: Vec::new(), previous: None };
    }
    out
}

/// Picard iterates `u^{(j+1)} = N u^{(j)}` from the linear solution on `[0, T]`.
/// Increments are propagated directly so that tiny differences keep full precision.
pub fn contraction_diagnostic(cfg: &SemilinearConfig, iterations: usize) -> Result<ContractionReport> {
    if cfg.horizon > 1.0 {
        return Err(Error::Precondition(format!("horizon {} exceeds 1", cfg.horizon)));
    }
    if iterations == 0 {
        return Err(Error::Precondition("need at least one iteration".into()));
    }
    let data = initial_data(cfg)?;
    let g = &data.geometry;
    let steps = (cfg.horizon / cfg.dt).round().max(1.0) as usize;
    let dt = cfg.horizon / steps as f64;
    let stepper = Stepper::new(g, cfg.alpha, cfg.coupling, cfg.quadrature, dt);
    let s = cfg.quadrature.half_nodes().len();
    let node_time = |p: usize| p as f64 * dt / (s - 1) as f64;
    let total = g.total();
    let zero: Coeffs = vec![Complex::new(0.0, 0.0); total];
    let count = steps * (s - 1) + 1;
    let none = vec![zero.clone(); count];

    let lin = duhamel_map(&stepper, data.u0.coeffs(), data.u1.coeffs(), &none, steps);
    let mut u: Vec<Vec<f64>> = lin.iter().map(|c| stepper.values_of(c)).collect();
    let sources: Vec<Coeffs> = u.iter().map(|v| stepper.source(v)).collect();
    let mut delta = duhamel_map(&stepper, &zero, &zero, &sources, steps);

    let rule = GaussLegendre::<f64>::new(8);
    let nodes: Vec<f64> = rule.nodes.iter().map(|x| 0.5 * (x + 1.0)).collect();
    let wts: Vec<f64> = rule.weights.iter().map(|w| 0.5 * w).collect();
    let half = Rational::new(1, 2);
    let l2_scale = (g.cell_volume() / total as f64).sqrt();
    let x_norm = |d: &[Coeffs], vals: &[Vec<f64>]| -> f64 {
        let mut best = 0.0_f64;
        for (p, (c, v)) in d.iter().zip(vals).enumerate() {
            let t = node_time(p);
            let l2 = l2_scale * c.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            let sup = v.iter().fold(0.0_f64, |m, x| m.max(x.abs()));
            best = best.max(weight(cfg.n, half, t) * l2).max(weight(cfg.n, Rational::from_integer(0), t) * sup);
        }
        best
    };

    let mut distances = Vec::with_capacity(iterations);
    for j in 0..iterations {
        let dvals: Vec<Vec<f64>> = delta.iter().map(|c| stepper.values_of(c)).collect();
        let d = x_norm(&delta, &dvals);
        if !d.is_finite() {
            return Err(Error::Divergence(format!("non-finite increment at iteration {j}")));
        }
        if j > 0 && distances[0] > 0.0 && d > 1e6 * distances[0] {
            return Err(Error::Divergence(format!("increment grew to {d:e} at iteration {j}")));
        }
        distances.push(d);
        if j + 1 == iterations {
            break;
        }
        let diff: Vec<Coeffs> = u
            .iter()
            .zip(&dvals)
            .map(|(a, da)| {
                let mut buf: Coeffs = a
                    .iter()
                    .zip(da)
                    .map(|(&x, &dx)| Complex::new(cfg.coupling * power_difference(x, dx, cfg.alpha, &nodes, &wts), 0.0))
                    .collect();
                g.transform().forward(&mut buf);
                for (c, &keep) in buf.iter_mut().zip(stepper.mask()) {
                    if !keep {
                        *c = Complex::new(0.0, 0.0);
                    }
                }
                buf
            })
            .collect();
        for (a, da) in u.iter_mut().zip(&dvals) {
            for (x, dx) in a.iter_mut().zip(da) {
                *x += dx;
            }
        }
        delta = duhamel_map(&stepper, &zero, &zero, &diff, steps);
    }
    let ratios = distances
        .windows(2)
        .map(|w| if w[0] == 0.0 { 0.0 } else { w[1] / w[0] })
        .collect();
    Ok(ContractionReport { distances, ratios })
}
