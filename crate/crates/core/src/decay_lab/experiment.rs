use crate::error::Result;
use crate::multiplier_theory::{predict, to_f64, LebesguePair, TheoryPrediction};
use crate::spectral::GridGeometry;

use super::datum::{make_datum, DatumSpec};
use super::fit::{fit_slope, SlopeFit};
use super::series::{geometric_times, phase_locked_times, run_decay, DecaySeries};
use super::verdict::{classify_exponent, Verdict};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    /// `t >= 1`, phase-locked samples, compared with the large-time exponent.
    Large,
    /// `t < 1`, compared with the small-time exponent.
    Small,
}

/// Exponent tolerance used when none is configured.
pub fn default_tolerance(n: usize) -> f64 {
    if n == 1 {
        0.03
    } else {
        0.05
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LinearDecayConfig {
    pub n: usize,
    pub points: usize,
    pub half_width: f64,
    pub datum: DatumSpec<f64>,
    pub pairs: Vec<LebesguePair>,
    pub t_min: f64,
    pub t_max: f64,
    pub samples: usize,
    pub regime: Regime,
    pub tolerance: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FitRow {
    pub pair: LebesguePair,
    pub prediction: TheoryPrediction,
    pub predicted: f64,
    pub fit: SlopeFit,
    pub verdict: Verdict,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LinearDecayReport {
    pub series: DecaySeries<f64>,
    pub rows: Vec<FitRow>,
    pub band_limit: f64,
    pub tolerance: f64,
}

pub fn run_linear_decay(cfg: &LinearDecayConfig) -> Result<LinearDecayReport> {
    let geometry = GridGeometry::new(cfg.n, cfg.points, cfg.half_width)?;
    let datum = make_datum(&cfg.datum, &geometry)?;
    let times = match cfg.regime {
        Regime::Large => phase_locked_times(cfg.t_min, cfg.t_max, cfg.samples, std::f64::consts::FRAC_PI_2),
        Regime::Small => geometric_times(cfg.t_min, cfg.t_max, cfg.samples),
    };
    let series = run_decay(&datum, &cfg.pairs, &times)?;
    let tolerance = cfg.tolerance.unwrap_or_else(|| default_tolerance(cfg.n));
    let window = (times[0], times[times.len() - 1]);
    let mut rows = Vec::new();
    for pair in &cfg.pairs {
        let prediction = predict(pair, cfg.n as u32);
        let fit = fit_slope(&series, pair.q_inv(), window, prediction.gamma)?;
        let predicted = match cfg.regime {
            Regime::Large => to_f64(prediction.large_time_exponent),
            Regime::Small => to_f64(prediction.small_time_exponent),
        };
        let verdict = classify_exponent(fit.exponent, predicted, tolerance);
        rows.push(FitRow { pair: *pair, prediction, predicted, fit, verdict });
    }
    Ok(LinearDecayReport { series, rows, band_limit: datum.band_limit, tolerance })
}
