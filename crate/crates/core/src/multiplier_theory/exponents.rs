use num_traits::{One, Zero};

use super::pair::{LebesguePair, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Admissibility {
    StrictInterior,
    BoundaryAdmissible,
    /// `d_pl = 1` at one of the two log pairs; the estimate there is not settled.
    BoundaryLogUnknown,
    Inadmissible,
}

impl Admissibility {
    pub fn as_str(&self) -> &'static str {
        match self {
            Admissibility::StrictInterior => "strict",
            Admissibility::BoundaryAdmissible => "boundary",
            Admissibility::BoundaryLogUnknown => "boundary-log-unknown",
            Admissibility::Inadmissible => "inadmissible",
        }
    }

    pub fn is_admissible(&self) -> bool {
        !matches!(self, Admissibility::Inadmissible)
    }
}

/// The three zones of the `(1/p, 1/q)` square where the large-time exponent
/// has a distinct closed form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Region {
    /// `1/p + 1/q >= 1`, `1/p + 3/q >= 2`: exponent `-n/2 + n/q`.
    QBranch,
    /// `1/p + 1/q <= 1`, `3/p + 1/q <= 2`: exponent `n/2 - n/p`.
    PBranch,
    /// Everything else: exponent `-(n/4)(1/p - 1/q)`.
    Central,
}

impl Region {
    pub fn as_str(&self) -> &'static str {
        match self {
            Region::QBranch => "q-branch",
            Region::PBranch => "p-branch",
            Region::Central => "central",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TheoryPrediction {
    pub pair: LebesguePair,
    pub n: u32,
    pub d_pl: Rational,
    pub beta: Rational,
    pub gamma: Rational,
    pub large_time_exponent: Rational,
    pub small_time_exponent: Rational,
    pub admissibility: Admissibility,
}

fn r(n: i64, d: i64) -> Rational {
    Rational::new(n, d)
}

fn nn(n: u32) -> Rational {
    Rational::from_integer(n as i64)
}

pub fn d_pl(pair: &LebesguePair, n: u32) -> Rational {
    let half = r(1, 2);
    let gap = pair.p_inv() - pair.q_inv();
    let side = (half - pair.p_inv()).max(pair.q_inv() - half);
    nn(n) * half * gap + nn(n) * side
}

pub fn beta(pair: &LebesguePair) -> Rational {
    let (a, b) = (pair.p_inv(), pair.q_inv());
    let two = r(2, 1);
    let zero = Rational::zero();
    if a + b >= Rational::one() {
        (a + r(3, 1) * b - two).max(zero)
    } else {
        (two - r(3, 1) * a - b).max(zero)
    }
}

pub fn gamma(pair: &LebesguePair) -> Rational {
    if pair.is_log_pair() {
        r(1, 2)
    } else {
        Rational::zero()
    }
}

pub fn classify(pair: &LebesguePair, n: u32) -> Admissibility {
    let d = d_pl(pair, n);
    let one = Rational::one();
    if d < one {
        return Admissibility::StrictInterior;
    }
    if d > one {
        return Admissibility::Inadmissible;
    }
    if pair.is_log_pair() {
        return Admissibility::BoundaryLogUnknown;
    }
    let half = r(1, 2);
    let (a, b) = (pair.p_inv(), pair.q_inv());
    if a < one && a >= half && b <= half && !b.is_zero() {
        Admissibility::BoundaryAdmissible
    } else {
        Admissibility::Inadmissible
    }
}

pub fn region(pair: &LebesguePair) -> Region {
    let (a, b) = (pair.p_inv(), pair.q_inv());
    let one = Rational::one();
    let two = r(2, 1);
    let three = r(3, 1);
    if a + b >= one && a + three * b >= two {
        Region::QBranch
    } else if a + b <= one && three * a + b <= two {
        Region::PBranch
    } else {
        Region::Central
    }
}

pub fn predict(pair: &LebesguePair, n: u32) -> TheoryPrediction {
    let gap = pair.p_inv() - pair.q_inv();
    let b = beta(pair);
    let quarter = nn(n) / r(4, 1);
    TheoryPrediction {
        pair: *pair,
        n,
        d_pl: d_pl(pair, n),
        beta: b,
        gamma: gamma(pair),
        large_time_exponent: -quarter * (gap - b),
        small_time_exponent: Rational::one() - nn(n) / r(2, 1) * gap,
        admissibility: classify(pair, n),
    }
}

/// Whether `1 - (n/2)(1 - 1/q) >= 0`, i.e. the L¹–L^q estimate has no singularity at t = 0.
pub fn nonsingular_small_time(q_inv: Rational, n: u32) -> bool {
    Rational::one() - nn(n) / r(2, 1) * (Rational::one() - q_inv) >= Rational::zero()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pq(a: (i64, i64), b: (i64, i64)) -> LebesguePair {
        LebesguePair::from_recip(a, b).unwrap()
    }

    #[test]
    fn d_pl_examples() {
        assert_eq!(d_pl(&pq((1, 2), (1, 2)), 3), r(0, 1));
        for n in 1..8 {
            for q in 1..12 {
                assert_eq!(d_pl(&pq((1, 1), (1, q)), n), r(n as i64, 2 * q));
            }
        }
        assert_eq!(d_pl(&pq((3, 4), (1, 4)), 2), r(0, 1));
    }

    #[test]
    fn beta_examples() {
        assert_eq!(beta(&pq((1, 2), (1, 2))), r(0, 1));
        assert_eq!(beta(&pq((1, 1), (1, 2))), r(1, 2));
        assert_eq!(beta(&pq((1, 1), (1, 4))), r(0, 1));
        // dual of (1,2) is (2,inf)
        assert_eq!(beta(&pq((1, 2), (0, 1))), r(1, 2));
    }

    #[test]
    fn gamma_examples() {
        assert_eq!(gamma(&pq((1, 1), (1, 3))), r(1, 2));
        assert_eq!(gamma(&pq((2, 3), (0, 1))), r(1, 2));
        assert_eq!(gamma(&pq((1, 2), (1, 2))), r(0, 1));
    }

    #[test]
    fn classify_examples() {
        assert_eq!(classify(&pq((1, 1), (0, 1)), 1), Admissibility::StrictInterior);
        // q = 2n/(n-4) = 10 at n = 5
        assert_eq!(classify(&pq((1, 2), (1, 10)), 5), Admissibility::BoundaryAdmissible);
        assert_eq!(classify(&pq((1, 1), (1, 2)), 4), Admissibility::Inadmissible);
        assert_eq!(classify(&pq((1, 1), (1, 3)), 6), Admissibility::BoundaryLogUnknown);
        assert_eq!(classify(&pq((2, 3), (0, 1)), 6), Admissibility::BoundaryLogUnknown);
    }

    #[test]
    fn predict_examples() {
        let p = predict(&pq((1, 1), (1, 4)), 1);
        assert_eq!(p.large_time_exponent, r(-3, 16));
        assert_eq!(p.small_time_exponent, r(5, 8));
        let p = predict(&pq((1, 1), (1, 2)), 1);
        assert_eq!(p.large_time_exponent, r(0, 1));
        for n in 1..7 {
            let p = predict(&pq((1, 2), (1, 2)), n);
            assert_eq!(p.large_time_exponent, r(0, 1));
            assert_eq!(p.small_time_exponent, r(1, 1));
        }
    }

    #[test]
    fn nonsingular_examples() {
        for q in 1..20 {
            assert!(nonsingular_small_time(r(1, q), 2));
        }
        assert!(nonsingular_small_time(r(0, 1), 2));
        assert!(nonsingular_small_time(r(1, 3), 3));
        assert!(!nonsingular_small_time(r(1, 4), 4));
    }
}
