use num_traits::{One, Zero};

use crate::multiplier_theory::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Outcome {
    ForcesLambdaZero,
    Inconclusive,
    HypothesisViolated,
}

impl Outcome {
    pub fn as_str(&self) -> &'static str {
        match self {
            Outcome::ForcesLambdaZero => "forces_lambda_zero",
            Outcome::Inconclusive => "inconclusive",
            Outcome::HypothesisViolated => "hypothesis_violated",
        }
    }
}

/// Exponent bookkeeping of the test-function argument for one `(n, m, α)`.
#[derive(Debug, Clone, PartialEq)]
pub struct NonexistenceVerdict {
    pub n: u32,
    pub m: Rational,
    pub alpha: Rational,
    /// `(n + 2m)/(n - 2m)` when `n > 2m`.
    pub threshold: Option<Rational>,
    /// `(2(α+1)/(α-1), n/m)`, present when `α > 1` and `m > 0`.
    pub window: Option<(Rational, Rational)>,
    /// Midpoint of a nonempty window.
    pub k: Option<Rational>,
    /// `-2α' + 1 + k/2` at the chosen `k`.
    pub exponent: Option<Rational>,
    pub verdict: Outcome,
}

/// Hölder conjugate `α/(α-1)`.
pub fn conjugate(alpha: Rational) -> Rational {
    alpha / (alpha - Rational::one())
}

pub fn exponent_conditions(n: u32, m: Rational, alpha: Rational) -> NonexistenceVerdict {
    let one = Rational::one();
    let two = Rational::from_integer(2);
    let nn = Rational::from_integer(n as i64);
    let threshold = (nn > two * m).then(|| (nn + two * m) / (nn - two * m));
    let window = (alpha > one && m > Rational::zero()).then(|| (two * (alpha + one) / (alpha - one), nn / m));
    let mut out = NonexistenceVerdict {
        n,
        m,
        alpha,
        threshold,
        window,
        k: None,
        exponent: None,
        verdict: Outcome::HypothesisViolated,
    };
    if threshold.is_none() || m < one || m > two || alpha <= one {
        return out;
    }
    let (lo, hi) = window.expect("alpha > 1 and m > 0");
    if lo >= hi {
        out.verdict = Outcome::Inconclusive;
        return out;
    }
    let k = (lo + hi) / two;
    let e = -two * conjugate(alpha) + one + k / two;
    out.k = Some(k);
    out.exponent = Some(e);
    out.verdict = if e > Rational::zero() { Outcome::ForcesLambdaZero } else { Outcome::Inconclusive };
    out
}

/// Verdicts over every combination, in row-major order of the inputs.
pub fn verdict_table(ns: &[u32], ms: &[Rational], alphas: &[Rational]) -> Vec<NonexistenceVerdict> {
    let mut out = Vec::with_capacity(ns.len() * ms.len() * alphas.len());
    for &n in ns {
        for &m in ms {
            for &a in alphas {
                out.push(exponent_conditions(n, m, a));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multiplier_theory::rat;

    #[test]
    fn worked_cases() {
        let v = exponent_conditions(5, rat(2, 1), rat(10, 1));
        assert_eq!(v.threshold, Some(rat(9, 1)));
        assert_eq!(v.window, Some((rat(22, 9), rat(5, 2))));
        assert_eq!(v.verdict, Outcome::ForcesLambdaZero);
        assert_eq!(v.k, Some(rat(89, 36)));
        let b = exponent_conditions(5, rat(2, 1), rat(9, 1));
        assert_eq!(b.window, Some((rat(5, 2), rat(5, 2))));
        assert_eq!(b.verdict, Outcome::Inconclusive);
        assert_eq!(exponent_conditions(4, rat(2, 1), rat(10, 1)).verdict, Outcome::HypothesisViolated);
        assert_eq!(exponent_conditions(5, rat(1, 2), rat(10, 1)).verdict, Outcome::HypothesisViolated);
        assert_eq!(exponent_conditions(5, rat(1, 1), rat(1, 1)).verdict, Outcome::HypothesisViolated);
    }
}
