use num_traits::One;

use super::pair::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CriticalExponents {
    pub n: u32,
    /// `1 + 4/n`.
    pub alpha_c: Rational,
    /// `2 + 2/n`.
    pub alpha_tilde_c: Rational,
    /// `(n+4)/(n-4)`, `None` for ∞ when `n <= 4`.
    pub sobolev_upper: Option<Rational>,
    /// `(n+2m)/(n-2m)`, `None` when `n <= 2m`.
    pub nonexistence_threshold: Option<Rational>,
}

pub fn critical_exponents(n: u32, m: Rational) -> CriticalExponents {
    assert!(n >= 1, "dimension must be positive");
    assert!(m >= Rational::one() && m <= Rational::from_integer(2), "m must lie in [1,2]");
    let nr = Rational::from_integer(n as i64);
    let four = Rational::from_integer(4);
    let sobolev_upper = if n > 4 { Some((nr + four) / (nr - four)) } else { None };
    let two_m = m * Rational::from_integer(2);
    let nonexistence_threshold =
        if nr > two_m { Some((nr + two_m) / (nr - two_m)) } else { None };
    CriticalExponents {
        n,
        alpha_c: Rational::one() + four / nr,
        alpha_tilde_c: Rational::from_integer(2) + Rational::from_integer(2) / nr,
        sobolev_upper,
        nonexistence_threshold,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(a: i64, b: i64) -> Rational {
        Rational::new(a, b)
    }

    #[test]
    fn examples() {
        let c = critical_exponents(1, r(1, 1));
        assert_eq!((c.alpha_c, c.alpha_tilde_c), (r(5, 1), r(4, 1)));
        let c = critical_exponents(2, r(1, 1));
        assert_eq!(c.alpha_c, c.alpha_tilde_c);
        assert_eq!(c.alpha_c, r(3, 1));
        let c = critical_exponents(5, r(2, 1));
        assert_eq!(c.nonexistence_threshold, Some(r(9, 1)));
        assert_eq!(c.sobolev_upper, Some(r(9, 1)));
        assert_eq!(critical_exponents(4, r(2, 1)).nonexistence_threshold, None);
        assert_eq!(critical_exponents(4, r(1, 1)).sobolev_upper, None);
    }

    #[test]
    fn ordering_holds_from_dimension_two() {
        for n in 1..40 {
            let c = critical_exponents(n, r(1, 1));
            assert_eq!(c.alpha_c <= c.alpha_tilde_c, n >= 2, "n = {n}");
        }
    }
}
