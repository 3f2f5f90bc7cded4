use num_traits::{One, Zero};
use plate_lab::multiplier_theory::{beta, classify, d_pl, predict, rat, region, LebesguePair, Rational, Region};
use plate_lab::nonexistence::{exponent_conditions, Outcome};
use proptest::prelude::*;

/// Valid pairs `1/p >= 1/q` on a lattice with denominator `den`.
fn pairs() -> impl Strategy<Value = LebesguePair> {
    (1i64..=24)
        .prop_flat_map(|den| (Just(den), 0..=den))
        .prop_flat_map(|(den, i)| (Just(den), Just(i), 0..=i))
        .prop_map(|(den, i, j)| LebesguePair::new(rat(i, den), rat(j, den)).unwrap())
}

fn zero() -> Rational {
    Rational::zero()
}

proptest! {
    #[test]
    fn duality(pair in pairs(), n in 1u32..=6) {
        let d = pair.dual();
        prop_assert_eq!(d_pl(&pair, n), d_pl(&d, n));
        prop_assert_eq!(beta(&pair), beta(&d));
        prop_assert_eq!(d.dual(), pair);
    }

    #[test]
    fn branches_meet_on_the_dual_line(num in 0i64..=48, den in 1i64..=48) {
        let a = rat(num.min(den), den);
        let b = Rational::one() - a;
        prop_assume!(a >= b);
        let two = rat(2, 1);
        let three = rat(3, 1);
        let upper = (a + three * b - two).max(zero());
        let lower = (two - three * a - b).max(zero());
        prop_assert_eq!(upper, lower);
        prop_assert_eq!(beta(&LebesguePair::new(a, b).unwrap()), upper);
    }

    #[test]
    fn region_formulas(pair in pairs(), n in 1u32..=6) {
        let p = predict(&pair, n);
        prop_assume!(p.admissibility.is_admissible());
        let nn = Rational::from_integer(n as i64);
        let (a, b) = (pair.p_inv(), pair.q_inv());
        let expected = match region(&pair) {
            Region::QBranch => -nn / 2 + nn * b,
            Region::PBranch => nn / 2 - nn * a,
            Region::Central => -nn / 4 * (a - b),
        };
        prop_assert_eq!(p.large_time_exponent, expected);
    }

    #[test]
    fn ordering(pair in pairs(), n in 1u32..=6) {
        prop_assume!(classify(&pair, n).is_admissible());
        let nn = Rational::from_integer(n as i64);
        let gap = pair.p_inv() - pair.q_inv();
        let left = Rational::one() - nn / 2 * gap + d_pl(&pair, n) - Rational::one();
        let right = -nn / 4 * gap + nn / 4 * beta(&pair);
        prop_assert!(left <= right, "{} > {} at {}", left, right, pair.label());
    }

    #[test]
    fn monotone_in_q(q1 in 4i64..200, dq in 1i64..50, n in 1u32..=6) {
        let e = |q: i64| predict(&LebesguePair::new(Rational::one(), rat(1, q)).unwrap(), n).large_time_exponent;
        let nn = Rational::from_integer(n as i64);
        prop_assert_eq!(e(q1), -nn / 4 * (Rational::one() - rat(1, q1)));
        prop_assert!(e(q1 + dq) < e(q1));
    }

    #[test]
    fn nonexistence_threshold_is_exact(n in 1u32..=12, m2 in 2i64..=4, alpha in 2i64..40) {
        let m = rat(m2, 2);
        let v = exponent_conditions(n, m, Rational::from_integer(alpha));
        let nn = Rational::from_integer(n as i64);
        if nn > m * 2 {
            prop_assert_eq!(v.threshold, Some((nn + m * 2) / (nn - m * 2)));
        } else {
            prop_assert_eq!(v.threshold, None);
            prop_assert_eq!(v.verdict, Outcome::HypothesisViolated);
        }
    }

    #[test]
    fn forcing_persists_as_alpha_grows(n in 3u32..=12, m2 in 2i64..=4, a in 11i64..200, da in 1i64..100) {
        let m = rat(m2, 2);
        let lo = exponent_conditions(n, m, rat(a, 10));
        let hi = exponent_conditions(n, m, rat(a + da, 10));
        if lo.verdict == Outcome::ForcesLambdaZero {
            prop_assert_eq!(hi.verdict, Outcome::ForcesLambdaZero);
        }
    }
}

#[test]
fn boundary_log_pairs_flagged_in_dimension_six() {
    let log_pair = LebesguePair::from_recip((1, 1), (1, 3)).unwrap();
    assert_eq!(d_pl(&log_pair, 6), Rational::one());
    assert_eq!(classify(&log_pair, 6).as_str(), "boundary-log-unknown");
    assert_eq!(predict(&log_pair, 6).gamma, rat(1, 2));
}
