use num_rational::Ratio;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

pub type Rational = Ratio<i64>;

/// A pair `1 ≤ p ≤ q ≤ ∞` stored through its reciprocals. A zero reciprocal is ∞.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct LebesguePair {
    p_inv: Rational,
    q_inv: Rational,
}

impl LebesguePair {
    pub fn new(p_inv: Rational, q_inv: Rational) -> Result<Self> {
        let unit = |r: Rational| r >= Rational::zero() && r <= Rational::one();
        if !unit(p_inv) || !unit(q_inv) {
            return Err(Error::InvalidPair(format!(
                "reciprocals must lie in [0,1], got 1/p={p_inv}, 1/q={q_inv}"
            )));
        }
        if p_inv < q_inv {
            return Err(Error::InvalidPair(format!("need p <= q, got 1/p={p_inv} < 1/q={q_inv}")));
        }
        Ok(Self { p_inv, q_inv })
    }

    /// Builds from `(num, den)` reciprocals, e.g. `from_recip((3, 4), (1, 4))` for (4/3, 4).
    pub fn from_recip(p_inv: (i64, i64), q_inv: (i64, i64)) -> Result<Self> {
        Self::new(Rational::new(p_inv.0, p_inv.1), Rational::new(q_inv.0, q_inv.1))
    }

    /// Builds from exponents where `None` stands for ∞.
    pub fn from_exponents(p: Option<Rational>, q: Option<Rational>) -> Result<Self> {
        let recip = |e: Option<Rational>| -> Result<Rational> {
            match e {
                None => Ok(Rational::zero()),
                Some(e) if e >= Rational::one() => Ok(e.recip()),
                Some(e) => Err(Error::InvalidPair(format!("exponent {e} below 1"))),
            }
        };
        Self::new(recip(p)?, recip(q)?)
    }

    pub fn p_inv(&self) -> Rational {
        self.p_inv
    }

    pub fn q_inv(&self) -> Rational {
        self.q_inv
    }

    /// The pair `(q', p')`.
    pub fn dual(&self) -> Self {
        Self { p_inv: Rational::one() - self.q_inv, q_inv: Rational::one() - self.p_inv }
    }

    pub fn is_log_pair(&self) -> bool {
        let one = Rational::one();
        (self.p_inv == one && self.q_inv == Rational::new(1, 3))
            || (self.p_inv == Rational::new(2, 3) && self.q_inv.is_zero())
    }

    /// Human-readable `(p,q)` with `inf` for ∞.
    pub fn label(&self) -> String {
        let show = |r: Rational| if r.is_zero() { "inf".to_string() } else { r.recip().to_string() };
        format!("({},{})", show(self.p_inv), show(self.q_inv))
    }
}
