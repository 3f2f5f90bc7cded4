use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::decay_lab::{
    check_wrap_around, geometric_times, linear_solution, make_datum, phase_locked_times, Datum, DatumSpec,
    DecaySeries,
};
use crate::error::{Error, Result};
use crate::multiplier_theory::{beta, gamma, to_f64, LebesguePair, Rational};
use crate::spectral::{lp_norm, sup_norm, GridGeometry, SpectralField};

use super::step::{QuadratureRule, Stepper, Work};

/// Status of a semilinear run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RunStatus {
    CompletedGlobal,
    BlowupDetected,
    QuadratureFailure,
}

impl RunStatus {
    pub fn as_str(&self) -> &'static str {
        match self {
            RunStatus::CompletedGlobal => "completed_global",
            RunStatus::BlowupDetected => "blowup_detected",
            RunStatus::QuadratureFailure => "quadrature_failure",
        }
    }
}

/// How norm samples are placed on `[t_min, horizon]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Sampling {
    Geometric,
    /// Geometric grid snapped to `t ≡ π/2 (mod 2π)`.
    PhaseLocked,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SemilinearConfig {
    pub n: usize,
    pub points: usize,
    pub half_width: f64,
    pub alpha: f64,
    pub u0: Option<DatumSpec<f64>>,
    pub u1: DatumSpec<f64>,
    /// Size of the data in the smallness norm: `L¹` for `n <= 2`, `L¹ + L²` above.
    pub epsilon: f64,
    pub dt: f64,
    pub horizon: f64,
    pub quadrature: QuadratureRule,
    /// Sup-norm level treated as blow-up; defaults to `1e6 · max(‖u₀‖∞, ‖u₁‖∞)`.
    pub blowup_threshold: Option<f64>,
    pub t_min: f64,
    pub samples: usize,
    pub sampling: Sampling,
    /// `1/q` values whose norms are recorded.
    pub q_inv: Vec<Rational>,
    /// Multiplies `|u|^α`; 0 runs the linear equation through the same stepper.
    pub coupling: f64,
}

impl SemilinearConfig {
    /// One-dimensional defaults with a bump `u₁` of radius 2.
    pub fn new(alpha: f64, epsilon: f64, horizon: f64) -> Self {
        use crate::decay_lab::DatumKind;
        Self {
            n: 1,
            points: 1 << 15,
            half_width: 6144.0,
            alpha,
            u0: None,
            u1: DatumSpec::new(DatumKind::SmoothBump { radius: 2.0 }),
            epsilon,
            dt: 0.1,
            horizon,
            quadrature: QuadratureRule::Trapezoid,
            blowup_threshold: None,
            t_min: 1.0,
            samples: 48,
            sampling: Sampling::PhaseLocked,
            q_inv: vec![Rational::from_integer(0), Rational::new(1, 2)],
            coupling: 1.0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::Precondition(m));
        if !(self.alpha > 1.0) {
            return bad(format!("alpha = {} must exceed 1", self.alpha));
        }
        if !(self.epsilon >= 0.0) || !self.epsilon.is_finite() {
            return bad(format!("epsilon = {} must be non-negative", self.epsilon));
        }
        if !(self.dt > 0.0) || !self.dt.is_finite() {
            return bad(format!("dt = {} must be positive", self.dt));
        }
        if !(self.horizon > 0.0) || !self.horizon.is_finite() {
            return bad(format!("horizon = {} must be positive", self.horizon));
        }
        if !(self.t_min > 0.0 && self.t_min < self.horizon) {
            return bad(format!("t_min = {} must lie in (0, horizon)", self.t_min));
        }
        if self.samples < 2 {
            return bad("need at least two samples".into());
        }
        if self.q_inv.iter().any(|q| *q < Rational::from_integer(0) || *q > Rational::new(1, 2)) {
            return bad("recorded 1/q must lie in [0, 1/2]".into());
        }
        if !self.coupling.is_finite() {
            return bad("coupling must be finite".into());
        }
        Ok(())
    }

    pub fn sample_times(&self) -> Vec<f64> {
        match self.sampling {
            Sampling::Geometric => geometric_times(self.t_min, self.horizon, self.samples),
            Sampling::PhaseLocked => {
                phase_locked_times(self.t_min, self.horizon, self.samples, std::f64::consts::FRAC_PI_2)
                    .into_iter()
                    .filter(|&t| t <= self.horizon)
                    .collect()
            }
        }
    }
}

/// `w(q) = (n/4)(1 - 1/q) - (n/4)β(1, q)`.
pub fn weight_exponent(n: usize, q_inv: Rational) -> Rational {
    let pair = LebesguePair::new(Rational::from_integer(1), q_inv).expect("1/q in range");
    let quarter = Rational::new(n as i64, 4);
    quarter * (Rational::from_integer(1) - q_inv) - quarter * beta(&pair)
}

/// `(1+t)^{w(q)} (log(e+t))^{-γ(1,q)}`.
pub fn weight(n: usize, q_inv: Rational, t: f64) -> f64 {
    let pair = LebesguePair::new(Rational::from_integer(1), q_inv).expect("1/q in range");
    let g = to_f64(gamma(&pair));
    (1.0 + t).powf(to_f64(weight_exponent(n, q_inv))) * (std::f64::consts::E + t).ln().powf(-g)
}

#[derive(Debug, Clone)]
pub struct RunRecord {
    pub series: DecaySeries<f64>,
    pub status: RunStatus,
    /// Running supremum of the weighted norm per `1/q`, aligned with `series.times`.
    pub weighted_history: BTreeMap<Rational, Vec<f64>>,
    /// Supremum over all recorded samples, `t = 0` included.
    pub weighted_norm: BTreeMap<Rational, f64>,
    pub epsilon: f64,
    pub steps: usize,
    pub final_time: f64,
}

/// Realized initial data and the grid they live on.
#[derive(Debug, Clone)]
pub struct InitialData {
    pub geometry: GridGeometry<f64>,
    pub u0: SpectralField<f64>,
    pub u1: SpectralField<f64>,
    /// Smallness norm of the unscaled data.
    pub gauge: f64,
}

fn gauge_norm(field: &SpectralField<f64>, n: usize) -> f64 {
    let l1 = lp_norm(field, Rational::from_integer(1));
    if n <= 2 {
        l1
    } else {
        l1 + lp_norm(field, Rational::new(1, 2))
    }
}

/// Builds `(u₀, u₁)` with `‖u₀‖ + ‖u₁‖ = ε` in the smallness norm.
pub fn initial_data(cfg: &SemilinearConfig) -> Result<InitialData> {
    cfg.validate()?;
    let geometry = GridGeometry::new(cfg.n, cfg.points, cfg.half_width)?;
    let d1 = make_datum(&cfg.u1, &geometry)?;
    let d0 = cfg.u0.as_ref().map(|s| make_datum(s, &geometry)).transpose()?;
    let check = |d: &Datum<f64>| check_wrap_around(d, cfg.horizon);
    check(&d1)?;
    if let Some(d) = &d0 {
        check(d)?;
    }
    let u0 = d0.map(|d| d.field).unwrap_or_else(|| SpectralField::zeros(&geometry));
    let u1 = d1.field;
    let gauge = gauge_norm(&u0, cfg.n) + gauge_norm(&u1, cfg.n);
    if !(gauge > 0.0) {
        return Err(Error::InvalidDatum("data vanish in the smallness norm".into()));
    }
    let s = cfg.epsilon / gauge;
    Ok(InitialData { u0: u0.scaled(s), u1: u1.scaled(s), geometry, gauge })
}

struct Recorder<'a> {
    cfg: &'a SemilinearConfig,
    times: Vec<f64>,
    norms: BTreeMap<Rational, Vec<f64>>,
    history: BTreeMap<Rational, Vec<f64>>,
    best: BTreeMap<Rational, f64>,
}

impl<'a> Recorder<'a> {
    fn new(cfg: &'a SemilinearConfig) -> Self {
        let empty = || cfg.q_inv.iter().map(|&q| (q, Vec::new())).collect();
        Self {
            cfg,
            times: Vec::new(),
            norms: empty(),
            history: empty(),
            best: cfg.q_inv.iter().map(|&q| (q, 0.0)).collect(),
        }
    }

    fn measure(&mut self, t: f64, u: &SpectralField<f64>, keep: bool) {
        for &q in &self.cfg.q_inv {
            let v = if q == Rational::from_integer(0) { sup_norm(u) } else { lp_norm(u, q) };
            let b = self.best.get_mut(&q).expect("q registered");
            *b = b.max(weight(self.cfg.n, q, t) * v);
            if keep {
                self.norms.get_mut(&q).expect("q registered").push(v);
                self.history.get_mut(&q).expect("q registered").push(*b);
            }
        }
        if keep {
            self.times.push(t);
        }
    }

    fn weighted_sup(&self) -> f64 {
        self.best.values().fold(0.0, |m, &v| m.max(v))
    }
}

/// Time-marches to the horizon, recording norms at the sample times.
pub fn run(cfg: &SemilinearConfig) -> Result<RunRecord> {
    run_monitored(cfg, None)
}

/// As [`run`], stopping early once any weighted norm exceeds `abort_above`.
pub(crate) fn run_monitored(cfg: &SemilinearConfig, abort_above: Option<f64>) -> Result<RunRecord> {
    let data = initial_data(cfg)?;
    let g = &data.geometry;
    let reference = data.u0.max_abs().max(data.u1.max_abs());
    let threshold = cfg.blowup_threshold.unwrap_or(1e6 * reference);
    if reference > 0.0 && !(threshold > data.u0.max_abs()) {
        return Err(Error::Precondition(format!("blow-up threshold {threshold} is below the initial sup norm")));
    }
    let stepper = Stepper::new(g, cfg.alpha, cfg.coupling, cfg.quadrature, cfg.dt);
    let samples = cfg.sample_times();
    let mut rec = Recorder::new(cfg);
    rec.measure(0.0, &data.u0, false);

    let mut work = stepper.start(0.0, data.u0.coeffs().to_vec(), data.u1.coeffs().to_vec());
    let mut steps = 0usize;
    let mut next_sample = 0usize;
    let mut status = RunStatus::CompletedGlobal;
    let total_steps = (cfg.horizon / cfg.dt).ceil() as usize;
    let grid_time = |k: usize| k as f64 * cfg.dt;

    'march: loop {
        // samples inside [t_k, t_k + dt)
        while next_sample < samples.len() && samples[next_sample] < grid_time(steps + 1) - 1e-12 * cfg.dt {
            let ts = samples[next_sample];
            let tau = ts - grid_time(steps);
            let u = if tau.abs() <= 1e-12 * cfg.dt {
                work.u.clone()
            } else {
                let side = Stepper::with_mask(g, cfg.alpha, cfg.coupling, cfg.quadrature, tau, stepper.mask().to_vec());
                match side.advance(&work) {
                    Ok(w) => w.u,
                    Err(_) => {
                        status = failure_status(&work, reference);
                        break 'march;
                    }
                }
            };
            rec.measure(ts, &SpectralField::from_coeffs(g, u)?, true);
            next_sample += 1;
            if let Some(limit) = abort_above {
                if rec.weighted_sup() > limit {
                    break 'march;
                }
            }
        }
        if steps >= total_steps {
            break;
        }
        match stepper.advance(&work) {
            Ok(w) => {
                work = w;
                work.t = grid_time(steps + 1);
                steps += 1;
            }
            Err(_) => {
                status = failure_status(&work, reference);
                break;
            }
        }
        let top = work.values.iter().fold(0.0_f64, |m, v| m.max(v.abs()));
        if top > threshold {
            status = RunStatus::BlowupDetected;
            break;
        }
    }

    let final_time = work.t;
    let datum_norms = [Rational::from_integer(1), Rational::new(1, 2)]
        .into_iter()
        .map(|p| (p, lp_norm(&data.u1, p)))
        .collect();
    Ok(RunRecord {
        series: DecaySeries { times: rec.times.clone(), norms: rec.norms.clone(), datum_norms },
        status,
        weighted_norm: rec.best.clone(),
        weighted_history: rec.history,
        epsilon: cfg.epsilon,
        steps,
        final_time,
    })
}

fn failure_status(work: &Work<f64>, reference: f64) -> RunStatus {
    let top = work.values.iter().fold(0.0_f64, |m, v| m.max(v.abs()));
    if reference > 0.0 && top > 1e3 * reference {
        RunStatus::BlowupDetected
    } else {
        RunStatus::QuadratureFailure
    }
}

/// Weighted sup norm of the linear solution at the sample times for `ε = 1`.
pub fn linear_weighted_norm(cfg: &SemilinearConfig, q_inv: Rational) -> Result<f64> {
    let unit = SemilinearConfig { epsilon: 1.0, ..cfg.clone() };
    let data = initial_data(&unit)?;
    let times = unit.sample_times();
    let values: Vec<f64> = times
        .par_iter()
        .map(|&t| {
            let u = linear_solution(&data.u1, t).add(&data.u0.apply_symbol(|s| crate::spectral::cosine_symbol(t, s)));
            let u = u.expect("same grid");
            let v = if q_inv == Rational::from_integer(0) { sup_norm(&u) } else { lp_norm(&u, q_inv) };
            weight(unit.n, q_inv, t) * v
        })
        .collect();
    let start = if q_inv == Rational::from_integer(0) { sup_norm(&data.u0) } else { lp_norm(&data.u0, q_inv) };
    Ok(values.into_iter().fold(start, f64::max))
}

/// Outcome of the search for the small-data constant.
#[derive(Debug, Clone)]
pub struct ThresholdSearch {
    /// Largest amplitude that passed.
    pub epsilon0: f64,
    /// Smallest amplitude that failed (infinite when none did).
    pub failed_at: f64,
    /// Every `(ε, passed)` evaluated, in evaluation order.
    pub trials: Vec<(f64, bool)>,
}

/// Geometric bracketing search for `ε₀`: a run passes when it reaches the
/// horizon and its weighted sup norm for `1/q = q_inv` stays within `factor`
/// times the linear one. Each round tests `per_round` amplitudes in parallel.
pub fn find_small_data_threshold(
    cfg: &SemilinearConfig,
    q_inv: Rational,
    bracket: (f64, f64),
    factor: f64,
    per_round: usize,
    rounds: usize,
) -> Result<ThresholdSearch> {
    let (mut lo, mut hi) = bracket;
    if !(lo > 0.0 && hi > lo) || per_round == 0 || !(factor > 1.0) {
        return Err(Error::Precondition("bad threshold search parameters".into()));
    }
    if !cfg.q_inv.contains(&q_inv) {
        return Err(Error::Precondition(format!("1/q = {q_inv} is not recorded")));
    }
    let unit = linear_weighted_norm(cfg, q_inv)?;
    let passes = |eps: f64| -> Result<bool> {
        let c = SemilinearConfig { epsilon: eps, ..cfg.clone() };
        let limit = factor * unit * eps;
        let rec = run_monitored(&c, Some(limit))?;
        Ok(rec.status == RunStatus::CompletedGlobal
            && rec.final_time >= cfg.horizon - 1e-9
            && rec.weighted_norm[&q_inv] <= limit)
    };
    let mut trials = Vec::new();
    let ends: Vec<Result<bool>> = [lo, hi].par_iter().map(|&e| passes(e)).collect();
    let (lo_ok, hi_ok) = (ends[0].clone()?, ends[1].clone()?);
    trials.push((lo, lo_ok));
    trials.push((hi, hi_ok));
    if !lo_ok {
        return Err(Error::Infeasible(format!("lower end {lo} of the bracket already fails")));
    }
    if hi_ok {
        return Ok(ThresholdSearch { epsilon0: hi, failed_at: f64::INFINITY, trials });
    }
    for _ in 0..rounds {
        let ratio = (hi / lo).powf(1.0 / (per_round + 1) as f64);
        let eps: Vec<f64> = (1..=per_round).map(|i| lo * ratio.powi(i as i32)).collect();
        let outcome: Vec<Result<bool>> = eps.par_iter().map(|&e| passes(e)).collect();
        let mut first_fail = None;
        for (i, (e, r)) in eps.iter().zip(outcome).enumerate() {
            let ok = r?;
            trials.push((*e, ok));
            if !ok && first_fail.is_none() {
                first_fail = Some(i);
            }
        }
        match first_fail {
            Some(0) => hi = eps[0],
            Some(i) => {
                lo = eps[i - 1];
                hi = eps[i];
            }
            None => lo = eps[per_round - 1],
        }
    }
    Ok(ThresholdSearch { epsilon0: lo, failed_at: hi, trials })
}
