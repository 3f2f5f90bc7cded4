use num_traits::Zero;
use rayon::prelude::*;

use crate::decay_lab::{classify_exponent, fit_power_law, linear_solution, run_linear_decay, LinearDecayConfig, Regime, Verdict};
use crate::error::Error;
use crate::multiplier_theory::{predict, theory_table, to_f64, LebesguePair, Rational};
use crate::nonexistence::{datum_scaling, verdict_table};
use crate::radial::{choose_annulus, geometric_grid, optimality_sequence, radial_convolution, AnnulusBump, RadialSpectrum};
use crate::semilinear::{find_small_data_threshold, run, weight, QuadratureRule, RunStatus, Sampling, SemilinearConfig};
use crate::spectral::{GridGeometry, SpectralField};

use super::config::*;
use super::output::{num, opt_ratio, ratio, Table};

/// What a subcommand produced: tables to write, summary lines, overall verdict.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub tables: Vec<Table>,
    pub summary: Vec<String>,
    pub pass: bool,
}

/// Either a configuration problem (exit 2) or a failed computation (exit 1).
#[derive(Debug, Clone, PartialEq)]
pub enum CommandError {
    Config(String),
    Run(String),
}

impl From<ConfigError> for CommandError {
    fn from(e: ConfigError) -> Self {
        CommandError::Config(e.0)
    }
}

impl From<Error> for CommandError {
    fn from(e: Error) -> Self {
        match e {
            Error::GeometryMismatch(_)
            | Error::InvalidGrid(_)
            | Error::InvalidPair(_)
            | Error::InvalidDatum(_)
            | Error::WrapAround { .. }
            | Error::Precondition(_)
            | Error::Infeasible(_) => CommandError::Config(e.to_string()),
            _ => CommandError::Run(e.to_string()),
        }
    }
}

type CmdResult = std::result::Result<Outcome, CommandError>;

fn config_err<T>(msg: String) -> std::result::Result<T, CommandError> {
    Err(CommandError::Config(msg))
}

pub fn theory_table_cmd(section: Option<TheoryTableSection>, n: Option<u32>, grid: Option<f64>) -> CmdResult {
    let n = n.or(section.as_ref().and_then(|s| s.n));
    let grid = grid.or(section.as_ref().and_then(|s| s.grid));
    let (Some(n), Some(grid)) = (n, grid) else {
        return config_err("theory-table needs `n` and `grid` (flags --n/--grid or [theory-table])".into());
    };
    if n == 0 {
        return config_err("[theory-table] key `n` must be positive".into());
    }
    let count = (1.0 / grid).round();
    if !(grid > 0.0 && grid <= 1.0) || (count * grid - 1.0).abs() > 1e-9 {
        return config_err(format!("[theory-table] key `grid`: {grid} must be 1/k for an integer k"));
    }
    let step = Rational::new(1, count as i64);
    let mut t = Table::new(
        "theory_table.csv",
        &["n", "1/p", "1/q", "d_pl", "beta", "gamma", "class", "region", "large_exp", "small_exp"],
    );
    for row in theory_table(n, step) {
        let p = row.prediction;
        t.push(vec![
            n.to_string(),
            ratio(p.pair.p_inv()),
            ratio(p.pair.q_inv()),
            ratio(p.d_pl),
            ratio(p.beta),
            ratio(p.gamma),
            p.admissibility.as_str().into(),
            row.region.as_str().into(),
            ratio(p.large_time_exponent),
            ratio(p.small_time_exponent),
        ]);
    }
    let summary = vec![format!("theory-table n={n} grid={step}: {} rows", t.rows.len())];
    Ok(Outcome { tables: vec![t], summary, pass: true })
}

pub fn linear_decay_cmd(s: LinearDecaySection, seed: Option<u64>) -> CmdResult {
    let regime = match s.regime.as_str() {
        "large" => Regime::Large,
        "small" => Regime::Small,
        other => return config_err(format!("[linear-decay] key `regime`: expected large or small, got `{other}`")),
    };
    if s.pairs.is_empty() {
        return config_err("[linear-decay] key `pairs` is empty".into());
    }
    let pairs = s.pairs.iter().map(|p| parse_pair(p, "[linear-decay] key `pairs`")).collect::<ConfigResult<Vec<_>>>()?;
    let cfg = LinearDecayConfig {
        n: s.n,
        points: s.points,
        half_width: s.half_width,
        datum: s.datum_keys().to_spec("linear-decay", seed)?,
        pairs,
        t_min: s.t_min,
        t_max: s.t_max,
        samples: s.samples,
        regime,
        tolerance: s.tolerance,
    };
    let report = run_linear_decay(&cfg)?;
    let mut series = Table::new("linear_decay_series.csv", &["t", "1/q", "norm"]);
    for (q, values) in &report.series.norms {
        for (t, v) in report.series.times.iter().zip(values) {
            series.push(vec![num(*t), ratio(*q), num(*v)]);
        }
    }
    let mut fits = Table::new(
        "linear_decay_fit.csv",
        &["pair", "1/p", "1/q", "predicted", "fitted", "r_squared", "samples", "gamma", "log_fitted", "verdict"],
    );
    let mut summary = Vec::new();
    let mut pass = true;
    for row in &report.rows {
        let log_fit = row.fit.with_log_factor.map(|l| num(l.exponent)).unwrap_or_default();
        fits.push(vec![
            row.pair.label(),
            ratio(row.pair.p_inv()),
            ratio(row.pair.q_inv()),
            ratio(match regime {
                Regime::Large => row.prediction.large_time_exponent,
                Regime::Small => row.prediction.small_time_exponent,
            }),
            num(row.fit.exponent),
            num(row.fit.r_squared),
            row.fit.samples.to_string(),
            ratio(row.prediction.gamma),
            log_fit,
            row.verdict.as_str().into(),
        ]);
        pass &= row.verdict != Verdict::Violation;
        summary.push(format!(
            "linear-decay {}: fitted {:.4} predicted {:.4} (tol {}) {}",
            row.pair.label(),
            row.fit.exponent,
            row.predicted,
            report.tolerance,
            row.verdict.as_str()
        ));
    }
    Ok(Outcome { tables: vec![series, fits], summary, pass })
}

pub fn optimality_cmd(s: OptimalitySection) -> CmdResult {
    let tol = s.tolerance.unwrap_or(0.05);
    let profile = AnnulusBump::new(s.profile_lo, s.profile_hi, 1.0)?;
    let (a, b) = choose_annulus(s.a)?;
    if !(s.t_min > 0.0 && s.t_max > s.t_min) || s.per_decade == 0 {
        return config_err("[optimality] keys `t_min`, `t_max`, `per_decade` must give a nonempty grid".into());
    }
    let grid = geometric_grid(s.t_min, s.t_max, s.per_decade);
    let points = optimality_sequence(&profile, a, b, &grid, s.n)?;
    let mut t = Table::new("optimality.csv", &["t", "x_star", "value", "scaled", "sine"]);
    for p in &points {
        t.push(vec![num(p.t), num(p.x_star), num(p.value), num(p.scaled), num(p.sine)]);
    }
    let times: Vec<f64> = points.iter().map(|p| p.t).collect();
    let values: Vec<f64> = points.iter().map(|p| p.value).collect();
    let span = (times.iter().cloned().fold(f64::INFINITY, f64::min), times.iter().cloned().fold(0.0, f64::max));
    let fit = fit_power_law(&times, &values, span, 0.0)?;
    let predicted = -(s.n as f64) / 2.0;
    let floor = points.iter().map(|p| p.scaled).fold(f64::INFINITY, f64::min);
    let verdict = classify_exponent(fit.exponent, predicted, tol);
    let pass = verdict == Verdict::Consistent && floor > 0.0;
    let summary = vec![format!(
        "optimality a={} b={b:.4}: {} times, slope {:.4} predicted {predicted} (tol {tol}), min scaled {floor:.4e} {}",
        s.a,
        points.len(),
        fit.exponent,
        if pass { "pass" } else { "fail" }
    )];
    Ok(Outcome { tables: vec![t], summary, pass })
}

fn semilinear_config(s: &SemilinearSection, seed: Option<u64>) -> std::result::Result<SemilinearConfig, CommandError> {
    let quadrature = match s.quadrature.as_deref().unwrap_or("trapezoid") {
        "trapezoid" => QuadratureRule::Trapezoid,
        "simpson" => QuadratureRule::Simpson,
        other => return config_err(format!("[semilinear] key `quadrature`: unknown rule `{other}`")),
    };
    let sampling = match s.sampling.as_deref().unwrap_or("phase_locked") {
        "phase_locked" => Sampling::PhaseLocked,
        "geometric" => Sampling::Geometric,
        other => return config_err(format!("[semilinear] key `sampling`: unknown sampling `{other}`")),
    };
    if s.q.is_empty() {
        return config_err("[semilinear] key `q` is empty".into());
    }
    let mut q_inv = Vec::new();
    for q in &s.q {
        let v = parse_exponent(q, "[semilinear] key `q`")?;
        q_inv.push(v.map_or(Rational::zero(), |r| r.recip()));
    }
    let u1 = s.datum_keys().to_spec("semilinear", seed)?;
    let u0 = s.u0_factor.map(|f| u1.with_amplitude(u1.amplitude * f));
    let cfg = SemilinearConfig {
        n: s.n,
        points: s.points,
        half_width: s.half_width,
        alpha: s.alpha,
        u0,
        u1,
        epsilon: s.epsilon.unwrap_or(0.0),
        dt: s.dt,
        horizon: s.horizon,
        quadrature,
        blowup_threshold: s.blowup_threshold,
        t_min: s.t_min,
        samples: s.samples,
        sampling,
        q_inv,
        coupling: s.coupling.unwrap_or(1.0),
    };
    cfg.validate()?;
    Ok(cfg)
}

pub fn semilinear_cmd(s: SemilinearSection, seed: Option<u64>) -> CmdResult {
    let mut cfg = semilinear_config(&s, seed)?;
    let tol = s.tolerance.unwrap_or(0.07);
    let mut tables = Vec::new();
    let mut summary = Vec::new();
    match (s.search_lo, s.search_hi, s.epsilon) {
        (Some(lo), Some(hi), _) => {
            let fraction = s.search_fraction.unwrap_or(0.5);
            if !(fraction > 0.0 && fraction <= 1.0) {
                return config_err("[semilinear] key `search_fraction` must lie in (0, 1]".into());
            }
            let q = cfg.q_inv[0];
            let found = find_small_data_threshold(
                &cfg,
                q,
                (lo, hi),
                s.search_factor.unwrap_or(2.0),
                s.search_per_round.unwrap_or(2),
                s.search_rounds.unwrap_or(3),
            )?;
            let mut t = Table::new("semilinear_threshold.csv", &["epsilon", "passed"]);
            for (e, ok) in &found.trials {
                t.push(vec![num(*e), ok.to_string()]);
            }
            tables.push(t);
            summary.push(format!(
                "semilinear threshold: eps0 {} (first failure {}) after {} runs",
                found.epsilon0,
                found.failed_at,
                found.trials.len()
            ));
            cfg.epsilon = fraction * found.epsilon0;
        }
        (None, None, Some(_)) => {}
        (None, None, None) => return config_err("[semilinear] missing key `epsilon` (or `search_lo`/`search_hi`)".into()),
        _ => return config_err("[semilinear] keys `search_lo` and `search_hi` go together".into()),
    }
    let rec = run(&cfg)?;
    let mut series = Table::new("semilinear_series.csv", &["t", "1/q", "norm", "weighted", "running_sup"]);
    for (q, values) in &rec.series.norms {
        let hist = &rec.weighted_history[q];
        for ((t, v), h) in rec.series.times.iter().zip(values).zip(hist) {
            series.push(vec![num(*t), ratio(*q), num(*v), num(weight(cfg.n, *q, *t) * v), num(*h)]);
        }
    }
    tables.push(series);
    let completed = rec.status == RunStatus::CompletedGlobal;
    let mut pass = completed;
    let window = (s.fit_start.unwrap_or(cfg.t_min), s.fit_end.unwrap_or(cfg.horizon));
    let mut fits = Table::new(
        "semilinear_fit.csv",
        &["1/q", "predicted", "fitted", "r_squared", "weighted_sup", "verdict"],
    );
    if completed {
        for (q, values) in &rec.series.norms {
            let pair = LebesguePair::new(Rational::from_integer(1), *q)?;
            let predicted = predict(&pair, cfg.n as u32).large_time_exponent;
            let fit = fit_power_law(&rec.series.times, values, window, 0.0)?;
            let verdict = classify_exponent(fit.exponent, to_f64(predicted), tol);
            let sup = rec.weighted_norm[q];
            pass &= verdict != Verdict::Violation && sup.is_finite();
            fits.push(vec![
                ratio(*q),
                ratio(predicted),
                num(fit.exponent),
                num(fit.r_squared),
                num(sup),
                verdict.as_str().into(),
            ]);
            summary.push(format!(
                "semilinear 1/q={q}: slope {:.4} predicted {predicted} (tol {tol}), weighted sup {sup:.4} {}",
                fit.exponent,
                verdict.as_str()
            ));
        }
    }
    tables.push(fits);
    summary.insert(
        0,
        format!(
            "semilinear alpha={} eps={}: {} at t={} after {} steps",
            cfg.alpha,
            cfg.epsilon,
            rec.status.as_str(),
            rec.final_time,
            rec.steps
        ),
    );
    Ok(Outcome { tables, summary, pass })
}

pub fn nonexistence_cmd(s: NonexistenceSection) -> CmdResult {
    let tol = s.tolerance.unwrap_or(0.02);
    let ms = s.m.iter().map(|m| parse_rational(m, "[nonexistence] key `m`")).collect::<ConfigResult<Vec<_>>>()?;
    let alphas =
        s.alpha.iter().map(|a| parse_rational(a, "[nonexistence] key `alpha`")).collect::<ConfigResult<Vec<_>>>()?;
    if !(s.tau_min > 0.0 && s.tau_max > s.tau_min && s.tau_max <= 1.0) || s.taus < 2 {
        return config_err("[nonexistence] keys `tau_min`, `tau_max`, `taus` must give a grid inside (0, 1]".into());
    }
    let mut verdicts = Table::new(
        "nonexistence_verdicts.csv",
        &["n", "m", "alpha", "threshold", "window_lo", "window_hi", "k", "exponent", "verdict"],
    );
    for v in verdict_table(&s.dims, &ms, &alphas) {
        verdicts.push(vec![
            v.n.to_string(),
            ratio(v.m),
            ratio(v.alpha),
            opt_ratio(v.threshold),
            opt_ratio(v.window.map(|w| w.0)),
            opt_ratio(v.window.map(|w| w.1)),
            opt_ratio(v.k),
            opt_ratio(v.exponent),
            v.verdict.as_str().into(),
        ]);
    }
    let ratio_step = (s.tau_max / s.tau_min).powf(1.0 / (s.taus - 1) as f64);
    let taus: Vec<f64> = (0..s.taus).map(|i| s.tau_min * ratio_step.powi(i as i32)).collect();
    let mut values = Table::new("datum_scaling.csv", &["n", "k", "tau", "pairing"]);
    let mut fits = Table::new("datum_scaling_fit.csv", &["n", "k", "predicted", "fitted", "verdict"]);
    let mut summary = vec![format!("nonexistence: {} verdict rows", verdicts.rows.len())];
    let mut pass = true;
    for &(n, k) in &s.scaling {
        let sc = datum_scaling(k, n, &taus)?;
        for (t, v) in sc.taus.iter().zip(&sc.values) {
            values.push(vec![n.to_string(), num(k), num(*t), num(*v)]);
        }
        let predicted = (n as f64 - k) / 2.0;
        let verdict = classify_exponent(sc.fit.exponent, predicted, tol);
        pass &= verdict == Verdict::Consistent;
        fits.push(vec![n.to_string(), num(k), num(predicted), num(sc.fit.exponent), verdict.as_str().into()]);
        summary.push(format!(
            "nonexistence pairing n={n} k={k}: exponent {:.5} predicted {predicted} (tol {tol}) {}",
            sc.fit.exponent,
            verdict.as_str()
        ));
    }
    Ok(Outcome { tables: vec![verdicts, values, fits], summary, pass })
}

/// Grid points where `|u| >= level·max|u|`, thinned to `count` evenly spread ones.
fn pick_samples(values: &[f64], g: &GridGeometry<f64>, level: f64, count: usize) -> Vec<usize> {
    let top = values.iter().fold(0.0_f64, |m, v| m.max(v.abs()));
    let candidates: Vec<usize> =
        (0..values.len()).filter(|&i| values[i].abs() >= level * top && g.radius(i) > 0.0).collect();
    if candidates.len() <= count {
        return candidates;
    }
    (0..count).map(|j| candidates[(j * (candidates.len() - 1)) / (count - 1).max(1)]).collect()
}

pub fn radial_crosscheck_cmd(s: CrosscheckSection) -> CmdResult {
    let tol = s.tolerance.unwrap_or(1e-4);
    let level = s.level.unwrap_or(0.2);
    let profile = AnnulusBump::new(s.profile_lo, s.profile_hi, 1.0)?;
    let g = GridGeometry::new(s.n, s.points, s.half_width)?;
    if g.nyquist() <= s.profile_hi {
        return config_err(format!(
            "[radial-crosscheck] grid Nyquist {} does not resolve profile_hi = {}",
            g.nyquist(),
            s.profile_hi
        ));
    }
    if s.times.is_empty() || s.times.iter().any(|t| !(*t > 0.0)) || s.per_time == 0 {
        return config_err("[radial-crosscheck] keys `times` and `per_time` must be positive".into());
    }
    let t_max = s.times.iter().cloned().fold(0.0, f64::max);
    let required = 1.2 * 4.0 * s.profile_hi * t_max;
    if s.half_width < required {
        return Err(Error::WrapAround { required, actual: s.half_width }.into());
    }
    let datum = SpectralField::from_radial_spectrum(&g, |r| profile.value(r));
    let mut table = Table::new("radial_crosscheck.csv", &["t", "r", "fft", "quadrature", "rel_err"]);
    let mut worst = 0.0_f64;
    for &t in &s.times {
        let u = linear_solution(&datum, t);
        let picks = pick_samples(u.values(), &g, level, s.per_time);
        let rows = picks
            .par_iter()
            .map(|&i| {
                let r = g.radius(i);
                let fft = u.values()[i];
                radial_convolution(&profile, t, r, s.n).map(|quad| (r, fft, quad))
            })
            .collect::<crate::Result<Vec<_>>>()?;
        for (r, fft, quad) in rows {
            let rel = (fft - quad).abs() / quad.abs();
            worst = worst.max(rel);
            table.push(vec![num(t), num(r), num(fft), num(quad), num(rel)]);
        }
    }
    let pass = worst <= tol && !table.rows.is_empty();
    let summary = vec![format!(
        "radial-crosscheck: {} samples, max relative error {worst:.3e} (tol {tol}) {}",
        table.rows.len(),
        if pass { "pass" } else { "fail" }
    )];
    Ok(Outcome { tables: vec![table], summary, pass })
}
