use num_rational::Ratio;
use num_traits::ToPrimitive;
use serde::Serialize;

use super::{best_subset, ratio_string, CertificateReport, Verdict};
use crate::budget::{checked_binomial, Budget};
use crate::code::{Codebook, LinearCode};
use crate::error::{Error, Result};
use crate::simplex::SparsePattern;

/// Minimum average pairwise relative distance over all L-sets of codewords
/// and the ε it supports.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AvgDistanceCertificate {
    #[serde(rename = "L")]
    pub l: usize,
    #[serde(with = "ratio_string")]
    pub min_avg_distance: Ratio<i128>,
    /// `max(0, 1 - min_avg/(1-1/q))`.
    #[serde(with = "ratio_string")]
    pub eta: Ratio<i128>,
    /// `4(1/L + η(1-1/L))`, exact.
    #[serde(with = "ratio_string")]
    pub epsilon_sq: Ratio<i128>,
    pub epsilon: f64,
    /// ε ≥ 1: the implied radius is not positive.
    pub vacuous: bool,
    pub witness: SparsePattern,
}

impl AvgDistanceCertificate {
    pub fn to_report(&self) -> CertificateReport {
        let verdict = if self.epsilon_sq < Ratio::from_integer(1) {
            Verdict::Holds
        } else if self.epsilon_sq == Ratio::from_integer(1) {
            Verdict::Boundary
        } else {
            Verdict::Fails
        };
        CertificateReport {
            kind: "avgdist".into(),
            l: self.l,
            value: self.epsilon,
            threshold: 1.0,
            verdict,
            witness: self.witness.support().to_vec(),
            mode: "exact".into(),
            tolerance: 0.0,
            details: serde_json::json!({
                "min_avg_distance": self.min_avg_distance.to_string(),
                "eta": self.eta.to_string(),
                "epsilon_sq": self.epsilon_sq.to_string(),
                "vacuous": self.vacuous,
            }),
        }
    }
}

pub fn avg_distance_certificate(code: &LinearCode, l: usize, budget: &Budget) -> Result<AvgDistanceCertificate> {
    if l < 2 {
        return Err(Error::invalid("average distance needs L >= 2"));
    }
    let book = Codebook::new(code, budget)?;
    let n_cols = book.len();
    if l > n_cols {
        return Err(Error::invalid(format!("L = {l} exceeds the {n_cols} codewords")));
    }
    Budget::check("L-subsets", checked_binomial(n_cols as u128, l), budget.subsets)?;
    let pair_sum = |s: &[usize]| -> u64 {
        let mut total = 0u64;
        for (a, &i) in s.iter().enumerate() {
            for &j in &s[a + 1..] {
                total += book.distance(i, j) as u64;
            }
        }
        total
    };
    let (min_sum, support) = best_subset(n_cols, l, pair_sum, |a, b| a < b).expect("l <= n_cols");

    let (q, n, li) = (code.q() as i128, code.n() as i128, l as i128);
    let pairs = li * (li - 1) / 2;
    let min_avg = Ratio::new(min_sum as i128, pairs * n);
    let one = Ratio::from_integer(1);
    let raw_eta = one - min_avg * Ratio::new(q, q - 1);
    let eta = raw_eta.clamp(Ratio::from_integer(0), one);
    let epsilon_sq = Ratio::from_integer(4) * (Ratio::new(1, li) + eta * (one - Ratio::new(1, li)));
    let epsilon = epsilon_sq.to_f64().expect("finite").sqrt();
    Ok(AvgDistanceCertificate {
        l,
        min_avg_distance: min_avg,
        eta,
        epsilon_sq,
        epsilon,
        vacuous: epsilon_sq >= one,
        witness: SparsePattern::new(support, n_cols)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn full_code() {
        let full = LinearCode::from_rows(2, &[vec![1, 0], vec![0, 1]], 2).unwrap();
        let c = avg_distance_certificate(&full, 4, &Budget::default()).unwrap();
        assert_eq!(c.min_avg_distance, Ratio::new(2, 3));
        assert_eq!(c.eta, Ratio::from_integer(0));
        assert_eq!(c.epsilon_sq, Ratio::from_integer(1));
        assert_eq!(c.epsilon, 1.0);
        assert!(c.vacuous);
    }

    #[test]
    fn repetition_code() {
        let rep = LinearCode::from_rows(2, &[vec![1, 1]], 2).unwrap();
        let c = avg_distance_certificate(&rep, 2, &Budget::default()).unwrap();
        assert_eq!(c.min_avg_distance, Ratio::from_integer(1));
        assert_eq!(c.eta, Ratio::from_integer(0));
        assert!((c.epsilon - 2f64.sqrt()).abs() < 1e-15);
        assert!(c.vacuous);
        assert_eq!(c.to_report().verdict, Verdict::Fails);
    }

    #[test]
    fn duplicates_force_eta_one() {
        let dup = LinearCode::from_rows(3, &[vec![1, 2, 0], vec![0, 0, 0]], 3).unwrap();
        let c = avg_distance_certificate(&dup, 2, &Budget::default()).unwrap();
        assert_eq!(c.min_avg_distance, Ratio::from_integer(0));
        assert_eq!(c.eta, Ratio::from_integer(1));
        assert_eq!(c.epsilon, 2.0);
        let json = serde_json::to_value(&c).unwrap();
        assert_eq!(json["eta"], "1");
    }
}
