use crate::error::{Error, Result};
use crate::multiplier_theory::{to_f64, Rational};
use crate::real::Real;

use super::series::DecaySeries;

/// Minimum number of samples inside a fit window.
pub const MIN_SAMPLES: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogFit {
    pub gamma: f64,
    pub exponent: f64,
    pub intercept: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SlopeFit {
    pub exponent: f64,
    pub intercept: f64,
    pub r_squared: f64,
    pub window: (f64, f64),
    pub samples: usize,
    /// Refit of `log‖u‖ - γ log log t` when `γ != 0`.
    pub with_log_factor: Option<LogFit>,
}

/// Ordinary least squares `y = a + b x`; returns `(b, a, r²)`.
pub fn least_squares(x: &[f64], y: &[f64]) -> (f64, f64, f64) {
    let m = x.len() as f64;
    let mx = x.iter().sum::<f64>() / m;
    let my = y.iter().sum::<f64>() / m;
    let sxx: f64 = x.iter().map(|v| (v - mx) * (v - mx)).sum();
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let syy: f64 = y.iter().map(|v| (v - my) * (v - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let r2 = if syy == 0.0 { 1.0 } else { (sxy * sxy / (sxx * syy)).clamp(0.0, 1.0) };
    (slope, intercept, r2)
}

/// Power-law fit of `values` against `times` on `window`, optionally with a `(log t)^γ` factor.
pub fn fit_power_law(times: &[f64], values: &[f64], window: (f64, f64), gamma: f64) -> Result<SlopeFit> {
    let (lo, hi) = window;
    if !(lo > 0.0 && hi > lo) {
        return Err(Error::DegenerateWindow(format!("window [{lo}, {hi}]")));
    }
    let picked: Vec<(f64, f64)> = times
        .iter()
        .zip(values)
        .filter(|(t, _)| **t >= lo && **t <= hi)
        .map(|(&t, &v)| (t, v))
        .collect();
    if picked.len() < MIN_SAMPLES {
        return Err(Error::DegenerateWindow(format!(
            "{} samples in [{lo}, {hi}], need {MIN_SAMPLES}",
            picked.len()
        )));
    }
    if picked.iter().any(|(_, v)| !(*v > 0.0) || !v.is_finite()) {
        return Err(Error::DegenerateWindow("non-positive or non-finite value in window".into()));
    }
    let x: Vec<f64> = picked.iter().map(|p| p.0.ln()).collect();
    let y: Vec<f64> = picked.iter().map(|p| p.1.ln()).collect();
    let (exponent, intercept, r_squared) = least_squares(&x, &y);
    let with_log_factor = if gamma != 0.0 {
        if lo <= 1.0 {
            return Err(Error::DegenerateWindow("log factor needs a window beyond t = 1".into()));
        }
        let y2: Vec<f64> = x.iter().zip(&y).map(|(lx, ly)| ly - gamma * lx.ln()).collect();
        let (b, a, _) = least_squares(&x, &y2);
        Some(LogFit { gamma, exponent: b, intercept: a })
    } else {
        None
    };
    Ok(SlopeFit { exponent, intercept, r_squared, window, samples: picked.len(), with_log_factor })
}

pub fn fit_slope<T: Real>(
    series: &DecaySeries<T>,
    q_inv: Rational,
    window: (f64, f64),
    gamma: Rational,
) -> Result<SlopeFit> {
    let values = series
        .norm_series(q_inv)
        .ok_or_else(|| Error::DegenerateWindow(format!("no series recorded for 1/q = {q_inv}")))?;
    let times: Vec<f64> = series.times.iter().map(|t| t.to_f64_lossy()).collect();
    let values: Vec<f64> = values.iter().map(|v| v.to_f64_lossy()).collect();
    fit_power_law(&times, &values, window, to_f64(gamma))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decay_lab::series::geometric_times;
    use approx::assert_relative_eq;

    #[test]
    fn exact_power_recovered() {
        let t = geometric_times(1.0_f64, 100.0, 20);
        let v: Vec<f64> = t.iter().map(|t| 3.0 * t.powf(-0.25)).collect();
        let f = fit_power_law(&t, &v, (1.0, 100.0), 0.0).unwrap();
        assert_relative_eq!(f.exponent, -0.25, epsilon = 1e-10);
        assert_relative_eq!(f.intercept, 3f64.ln(), epsilon = 1e-10);
        assert!(f.r_squared > 1.0 - 1e-12);
    }

    #[test]
    fn log_factor_bias_and_correction() {
        let t = geometric_times(100.0_f64, 10_000.0, 40);
        let v: Vec<f64> = t.iter().map(|t| t.powf(-0.5) * t.ln().sqrt()).collect();
        let f = fit_power_law(&t, &v, (100.0, 10_000.0), 0.5).unwrap();
        assert!(f.exponent > -0.5 + 0.01);
        let lf = f.with_log_factor.unwrap();
        assert!((lf.exponent + 0.5).abs() < 0.01);
    }

    #[test]
    fn constant_series_and_degenerate_windows() {
        let t = geometric_times(1.0_f64, 10.0, 10);
        let v = vec![2.0; 10];
        let f = fit_power_law(&t, &v, (1.0, 10.0), 0.0).unwrap();
        assert_eq!(f.exponent, 0.0);
        assert!(fit_power_law(&t, &v, (1.0, 2.0), 0.0).is_err());
        assert!(fit_power_law(&t, &v, (5.0, 1.0), 0.0).is_err());
    }
}
