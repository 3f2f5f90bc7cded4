use num_complex::Complex;

use crate::error::{Error, Result};
use crate::real::Real;
use crate::spectral::{EvolutionState, GridGeometry, RotationTable, SpectralField};

use super::nonlinearity::{dealias_mask, power_coeffs};

/// Lobatto collocation rule applied to the variation-of-constants integral.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum QuadratureRule {
    /// Nodes `{0, 1}`, second order.
    Trapezoid,
    /// Nodes `{0, 1/2, 1}`, fourth order.
    Simpson,
}

impl QuadratureRule {
    pub fn order(&self) -> usize {
        match self {
            QuadratureRule::Trapezoid => 2,
            QuadratureRule::Simpson => 4,
        }
    }

    /// Stage nodes in units of half steps.
    pub(crate) fn half_nodes(&self) -> &'static [i32] {
        match self {
            QuadratureRule::Trapezoid => &[0, 2],
            QuadratureRule::Simpson => &[0, 1, 2],
        }
    }

    /// Collocation matrix `A_ij` (row 0 is the initial stage).
    pub(crate) fn matrix(&self) -> Vec<Vec<f64>> {
        match self {
            QuadratureRule::Trapezoid => vec![vec![0.0, 0.0], vec![0.5, 0.5]],
            QuadratureRule::Simpson => vec![
                vec![0.0, 0.0, 0.0],
                vec![5.0 / 24.0, 1.0 / 3.0, -1.0 / 24.0],
                vec![1.0 / 6.0, 2.0 / 3.0, 1.0 / 6.0],
            ],
        }
    }
}

/// Coefficient-level state used inside the time loop.
#[derive(Debug, Clone)]
pub(crate) struct Work<T> {
    pub t: T,
    pub u: Vec<Complex<T>>,
    pub ut: Vec<Complex<T>>,
    pub values: Vec<T>,
    /// De-aliased transform of `coupling·|u|^α` at the current values.
    pub source: Vec<Complex<T>>,
    /// Step length and source at the previous step start, for the stage guess.
    pub previous: Option<(T, Vec<Complex<T>>)>,
}

/// One step size with its rotation tables and the nonlinearity settings.
#[derive(Debug, Clone)]
pub struct Stepper<T: Real> {
    geometry: GridGeometry<T>,
    alpha: T,
    coupling: T,
    rule: QuadratureRule,
    dt: T,
    /// Rotation by `k·dt/2` stored at index `k + 2`.
    tables: Vec<Option<RotationTable<T>>>,
    mask: Vec<bool>,
    pub picard_tol: T,
    pub picard_max: usize,
}

impl<T: Real> Stepper<T> {
    pub fn new(geometry: &GridGeometry<T>, alpha: T, coupling: T, rule: QuadratureRule, dt: T) -> Self {
        Self::with_mask(geometry, alpha, coupling, rule, dt, dealias_mask(geometry))
    }

    pub(crate) fn with_mask(
        geometry: &GridGeometry<T>,
        alpha: T,
        coupling: T,
        rule: QuadratureRule,
        dt: T,
        mask: Vec<bool>,
    ) -> Self {
        let nodes = rule.half_nodes();
        let mut needed = [false; 5];
        for &ci in nodes {
            needed[(ci + 2) as usize] = true;
            for &cj in nodes {
                needed[(ci - cj + 2) as usize] = true;
            }
        }
        let half = dt * T::lit(0.5);
        let tables = (0..5)
            .map(|k| needed[k].then(|| RotationTable::new(geometry, half * T::lit(k as f64 - 2.0))))
            .collect();
        Self {
            geometry: geometry.clone(),
            alpha,
            coupling,
            rule,
            dt,
            tables,
            mask,
            picard_tol: T::tol(64.0).max(T::lit(1e-10)),
            picard_max: 30,
        }
    }

    pub fn dt(&self) -> T {
        self.dt
    }

    pub fn rule(&self) -> QuadratureRule {
        self.rule
    }

    pub(crate) fn mask(&self) -> &[bool] {
        &self.mask
    }

    fn table(&self, half_steps: i32) -> &RotationTable<T> {
        self.tables[(half_steps + 2) as usize].as_ref().expect("table prepared")
    }

    pub(crate) fn source(&self, values: &[T]) -> Vec<Complex<T>> {
        if self.coupling == T::zero() {
            return vec![Complex::new(T::zero(), T::zero()); values.len()];
        }
        power_coeffs(&self.geometry, values, self.alpha, self.coupling, &self.mask)
    }

    pub(crate) fn values_of(&self, coeffs: &[Complex<T>]) -> Vec<T> {
        let mut buf = coeffs.to_vec();
        self.geometry.transform().inverse_normalized(&mut buf);
        buf.into_iter().map(|c| c.re).collect()
    }

    pub(crate) fn start(&self, t: T, u: Vec<Complex<T>>, ut: Vec<Complex<T>>) -> Work<T> {
        let values = self.values_of(&u);
        let source = self.source(&values);
        Work { t, u, ut, values, source, previous: None }
    }

    /// Stage `i` from the step start and the stage sources.
    pub(crate) fn stage(
        &self,
        w: &Work<T>,
        i: usize,
        sources: &[&[Complex<T>]],
    ) -> (Vec<Complex<T>>, Vec<Complex<T>>) {
        let nodes = self.rule.half_nodes();
        let a = self.rule.matrix();
        let mut u = w.u.clone();
        let mut ut = w.ut.clone();
        self.table(nodes[i]).rotate(&mut u, &mut ut);
        for (j, src) in sources.iter().enumerate() {
            let aij = a[i][j];
            if aij == 0.0 {
                continue;
            }
            let tab = self.table(nodes[i] - nodes[j]);
            let wgt = self.dt * T::lit(aij);
            for m in 0..u.len() {
                let f = src[m] * wgt;
                u[m] = u[m] + f * tab.sin_over_omega[m];
                ut[m] = ut[m] + f * tab.cos[m];
            }
        }
        (u, ut)
    }

    pub(crate) fn advance(&self, w: &Work<T>) -> Result<Work<T>> {
        let nodes = self.rule.half_nodes();
        let stages = nodes.len();
        let last = stages - 1;
        // extrapolated guess for the stage sources
        let mut sources: Vec<Vec<Complex<T>>> = match &w.previous {
            Some((h, prev)) if self.coupling != T::zero() => nodes
                .iter()
                .map(|&c| {
                    let r = T::lit(c as f64 * 0.5) * self.dt / *h;
                    w.source.iter().zip(prev).map(|(a, b)| *a + (*a - *b) * r).collect()
                })
                .collect(),
            _ => vec![w.source.clone(); stages],
        };
        sources[0] = w.source.clone();
        let scale = |v: &[Complex<T>]| v.iter().fold(T::zero(), |m, c| m.max(c.l1_norm()));
        let iterations = if self.coupling == T::zero() { 1 } else { self.picard_max };
        for _ in 0..iterations {
            let mut change = T::zero();
            let mut size = scale(&sources[0]);
            let mut next = vec![sources[0].clone()];
            let mut end = None;
            for i in 1..stages {
                let refs: Vec<&[Complex<T>]> = sources.iter().map(|s| s.as_slice()).collect();
                let (u, ut) = self.stage(w, i, &refs);
                let vals = self.values_of(&u);
                if vals.iter().any(|v| !v.is_finite()) {
                    return Err(Error::Quadrature(format!("non-finite stage value at t = {}", w.t)));
                }
                let src = self.source(&vals);
                let diff = src.iter().zip(&sources[i]).fold(T::zero(), |m, (a, b)| m.max((a - b).l1_norm()));
                change = change.max(diff);
                size = size.max(scale(&src));
                next.push(src);
                if i == last {
                    end = Some((u, ut, vals));
                }
            }
            if change <= self.picard_tol * size || self.coupling == T::zero() {
                let (u, ut, values) = end.expect("final stage computed");
                let source = next.pop().expect("final source");
                return Ok(Work {
                    t: w.t + self.dt,
                    u,
                    ut,
                    values,
                    previous: Some((self.dt, w.source.clone())),
                    source,
                });
            }
            sources = next;
        }
        Err(Error::Quadrature(format!("stage iteration did not settle at t = {}", w.t)))
    }
}

/// One exponential-collocation step of `u_tt + Δ²u + u = |u|^α`.
pub fn duhamel_step<T: Real>(
    state: &EvolutionState<T>,
    dt: T,
    alpha: T,
    rule: QuadratureRule,
) -> Result<EvolutionState<T>> {
    duhamel_step_with_coupling(state, dt, alpha, T::one(), rule)
}

/// As [`duhamel_step`] with `coupling·|u|^α`; coupling 0 is the linear diagnostic mode.
pub fn duhamel_step_with_coupling<T: Real>(
    state: &EvolutionState<T>,
    dt: T,
    alpha: T,
    coupling: T,
    rule: QuadratureRule,
) -> Result<EvolutionState<T>> {
    state.u.check_same(&state.ut)?;
    let g = state.geometry();
    let stepper = Stepper::new(g, alpha, coupling, rule, dt);
    let w = stepper.start(state.t, state.u.coeffs().to_vec(), state.ut.coeffs().to_vec());
    let next = stepper.advance(&w)?;
    Ok(EvolutionState {
        t: next.t,
        u: SpectralField::from_hermitian_coeffs(g, next.u),
        ut: SpectralField::from_hermitian_coeffs(g, next.ut),
    })
}
