use crate::multiplier_theory::{to_f64, TheoryPrediction};

use super::fit::SlopeFit;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Verdict {
    Consistent,
    /// Faster decay than the bound: allowed, but the datum is not extremal.
    UpperBoundSlack,
    Violation,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::Consistent => "consistent",
            Verdict::UpperBoundSlack => "upper-bound-slack",
            Verdict::Violation => "violation",
        }
    }
}

pub fn classify_exponent(fitted: f64, predicted: f64, tol: f64) -> Verdict {
    if (fitted - predicted).abs() <= tol {
        Verdict::Consistent
    } else if fitted < predicted {
        Verdict::UpperBoundSlack
    } else {
        Verdict::Violation
    }
}

/// Compares a large-time fit with the predicted exponent.
pub fn verdict(fit: &SlopeFit, prediction: &TheoryPrediction, tol: f64) -> Verdict {
    classify_exponent(fit.exponent, to_f64(prediction.large_time_exponent), tol)
}
