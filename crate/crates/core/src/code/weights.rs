use serde::{Deserialize, Serialize};

use crate::budget::Budget;
use crate::code::{Codebook, LinearCode};
use crate::error::Result;

/// Number of codewords of each Hamming weight `0..=n`, with multiplicity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightProfile {
    pub counts: Vec<u64>,
}

impl WeightProfile {
    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    /// Smallest nonzero weight present, if any.
    pub fn min_nonzero_weight(&self) -> Option<usize> {
        self.counts.iter().skip(1).position(|&c| c > 0).map(|p| p + 1)
    }

    /// Codewords of weight at most `w`, the zero word included.
    pub fn at_most(&self, w: usize) -> u64 {
        self.counts.iter().take(w + 1).sum()
    }
}

pub fn weight_profile(code: &LinearCode, budget: &Budget) -> Result<WeightProfile> {
    let book = Codebook::new(code, budget)?;
    Ok(weight_profile_of(&book))
}

pub fn weight_profile_of(book: &Codebook) -> WeightProfile {
    let mut counts = vec![0u64; book.n() + 1];
    for i in 0..book.len() {
        counts[book.weight(i)] += 1;
    }
    WeightProfile { counts }
}

/// Minimum weight over nonzero codewords; `None` when every codeword is zero.
pub fn min_distance(code: &LinearCode, budget: &Budget) -> Result<Option<usize>> {
    Ok(weight_profile(code, budget)?.min_nonzero_weight())
}

/// Codewords of weight at most `w`, counting the zero word.
pub fn low_weight_count(code: &LinearCode, w: usize, budget: &Budget) -> Result<u64> {
    Ok(weight_profile(code, budget)?.at_most(w))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::reed_muller;

    #[test]
    fn rm13_profile() {
        let b = Budget::default();
        let rm = reed_muller(1, 3, &b).unwrap();
        let prof = weight_profile(&rm, &b).unwrap();
        let mut expected = vec![0u64; 9];
        expected[0] = 1;
        expected[4] = 14;
        expected[8] = 1;
        assert_eq!(prof.counts, expected);
        assert_eq!(min_distance(&rm, &b).unwrap(), Some(4));
        assert_eq!(low_weight_count(&rm, 3, &b).unwrap(), 1);
        assert_eq!(low_weight_count(&rm, 4, &b).unwrap(), 15);
    }

    #[test]
    fn rm24_distance() {
        let b = Budget::default();
        let rm = reed_muller(2, 4, &b).unwrap();
        let prof = weight_profile(&rm, &b).unwrap();
        assert_eq!(prof.total(), 2048);
        assert_eq!(prof.min_nonzero_weight(), Some(4));
    }

    #[test]
    fn all_zero_code_has_no_min_distance() {
        let b = Budget::default();
        let code = LinearCode::from_rows(3, &[vec![0, 0]], 2).unwrap();
        assert_eq!(min_distance(&code, &b).unwrap(), None);
        assert_eq!(weight_profile(&code, &b).unwrap().counts, vec![3, 0, 0]);
    }
}
