use num_traits::{One, Zero};

use super::exponents::{predict, Region, TheoryPrediction};
use super::pair::{LebesguePair, Rational};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TableRow {
    pub prediction: TheoryPrediction,
    pub region: Region,
}

/// Predictions over the grid `{0, step, 2 step, ..., 1}²` restricted to `1/p >= 1/q`.
/// `step` must divide 1.
pub fn theory_table(n: u32, step: Rational) -> Vec<TableRow> {
    assert!(step > Rational::zero() && step <= Rational::one(), "step must lie in (0,1]");
    let count = (Rational::one() / step).to_integer();
    assert_eq!(step * Rational::from_integer(count), Rational::one(), "step must divide 1");
    let mut rows = Vec::new();
    for i in 0..=count {
        for j in 0..=i {
            let pair = LebesguePair::new(step * i, step * j).expect("grid pair valid");
            rows.push(TableRow { prediction: predict(&pair, n), region: super::region(&pair) });
        }
    }
    rows
}
