//! Sufficient conditions for list decodability, evaluated exactly on small
//! codes: the ℓ1 certificate, the restricted isometry constant, the
//! average-distance certificate and the parameter planner.

mod avgdist;
pub mod jacobi;
mod l1;
mod plan;
mod rip;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use avgdist::{avg_distance_certificate, AvgDistanceCertificate};
pub use l1::{l1_certificate, l1_certificate_with, L1Certificate, L1Mode};
pub use plan::{plan_parameters, ParamPlan};
pub use rip::{rip_constant, rip_implied_decodability, RipImplied, RipReport};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Holds,
    Fails,
    /// Within tolerance of the threshold; neither side is claimed.
    Boundary,
    /// A lower bound stayed below the threshold, which proves nothing.
    Inconclusive,
}

impl Verdict {
    /// Strict `value < threshold`, with a band of width `tolerance` around
    /// the threshold reported as [`Verdict::Boundary`].
    pub fn strict_below(value: f64, threshold: f64, tolerance: f64) -> Self {
        if value < threshold - tolerance {
            Verdict::Holds
        } else if value <= threshold + tolerance {
            Verdict::Boundary
        } else {
            Verdict::Fails
        }
    }
}

/// Common JSON shape shared by all certificates.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CertificateReport {
    pub kind: String,
    #[serde(rename = "L")]
    pub l: usize,
    pub value: f64,
    pub threshold: f64,
    pub verdict: Verdict,
    /// Message indices of the extremal column subset.
    pub witness: Vec<usize>,
    pub mode: String,
    pub tolerance: f64,
    #[serde(default)]
    pub details: serde_json::Value,
}

/// The exact rational written by the shortest decimal representation of `x`.
pub fn exact_decimal(x: f64) -> Result<BigRational> {
    if !x.is_finite() {
        return Err(Error::invalid(format!("{x} is not a finite number")));
    }
    // Display for f64 is the shortest round-trip decimal, never exponential
    let text = format!("{x}");
    let (neg, digits) = match text.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, text.as_str()),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    let numer: BigInt = format!("{int_part}{frac_part}")
        .parse()
        .map_err(|_| Error::Parse(format!("cannot read {text} as a decimal")))?;
    let denom = num_traits::pow(BigInt::from(10), frac_part.len());
    let r = BigRational::new(numer, denom);
    Ok(if neg { -r } else { r })
}

/// `⌊(1 - 1/q)(1 - ε)·n⌋` in exact arithmetic, or `None` when the radius is
/// negative (ε > 1).
pub fn decoding_radius(q: u32, n: usize, epsilon: f64) -> Result<Option<usize>> {
    let eps = exact_decimal(epsilon)?;
    let one = BigRational::from_integer(1.into());
    let rho = BigRational::new((q as i64 - 1).into(), (q as i64).into()) * (&one - eps);
    if rho.is_negative() {
        return Ok(None);
    }
    let t = (rho * BigRational::from_integer(n.into())).floor().to_integer();
    Ok(Some(t.to_usize().expect("radius fits in usize").min(n)))
}

/// Calls `f` on every `l`-subset of `0..n` whose least element is `first`,
/// in lexicographic order.
pub(crate) fn for_each_subset_from(n: usize, l: usize, first: usize, f: &mut impl FnMut(&[usize])) {
    if l == 0 || first + l > n {
        return;
    }
    let mut idx: Vec<usize> = (first..first + l).collect();
    loop {
        f(&idx);
        // advance positions 1..l, keeping idx[0] fixed
        let mut i = l;
        loop {
            if i == 1 {
                return;
            }
            i -= 1;
            if idx[i] < n - (l - i) {
                idx[i] += 1;
                for j in i + 1..l {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// The best-scoring `l`-subset of `0..n`. Subsets are scored in parallel
/// by least element; among equal scores the lexicographically least subset
/// wins, independent of scheduling.
pub(crate) fn best_subset<S, F, B>(n: usize, l: usize, score: F, better: B) -> Option<(S, Vec<usize>)>
where
    S: Send + Clone,
    F: Fn(&[usize]) -> S + Sync,
    B: Fn(&S, &S) -> bool + Sync,
{
    if l == 0 || l > n {
        return None;
    }
    let partial: Vec<Option<(S, Vec<usize>)>> = (0..=n - l)
        .into_par_iter()
        .map(|first| {
            let mut best: Option<(S, Vec<usize>)> = None;
            for_each_subset_from(n, l, first, &mut |s| {
                let v = score(s);
                if best.as_ref().is_none_or(|(b, _)| better(&v, b)) {
                    best = Some((v, s.to_vec()));
                }
            });
            best
        })
        .collect();
    partial.into_iter().flatten().fold(None, |acc, cand| match acc {
        Some(a) if !better(&cand.0, &a.0) => Some(a),
        _ => Some(cand),
    })
}

pub(crate) mod ratio_string {
    use num_rational::Ratio;
    use serde::Serializer;

    pub fn serialize<S: Serializer>(r: &Ratio<i128>, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(r)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decimals_are_exact() {
        assert_eq!(exact_decimal(0.1).unwrap(), BigRational::new(1.into(), 10.into()));
        assert_eq!(exact_decimal(-2.5).unwrap(), BigRational::new((-5).into(), 2.into()));
        assert_eq!(exact_decimal(3.0).unwrap(), BigRational::from_integer(3.into()));
        assert!(exact_decimal(f64::NAN).is_err());
    }

    #[test]
    fn radii() {
        assert_eq!(decoding_radius(2, 24, 0.4).unwrap(), Some(7));
        assert_eq!(decoding_radius(2, 24, 0.2).unwrap(), Some(9));
        // 0.5 * 0.3 * 10 = 1.5 exactly; floating point would give 1.4999..
        assert_eq!(decoding_radius(2, 10, 0.7).unwrap(), Some(1));
        assert_eq!(decoding_radius(2, 20, 0.7).unwrap(), Some(3));
        assert_eq!(decoding_radius(3, 9, 1.0).unwrap(), Some(0));
        assert_eq!(decoding_radius(3, 9, 1.5).unwrap(), None);
    }

    #[test]
    fn subsets_in_lex_order() {
        let mut all = Vec::new();
        for first in 0..5 {
            for_each_subset_from(5, 3, first, &mut |s| all.push(s.to_vec()));
        }
        assert_eq!(all.len(), 10);
        assert_eq!(all[0], vec![0, 1, 2]);
        assert_eq!(all[9], vec![2, 3, 4]);
        assert!(all.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn best_subset_breaks_ties_lexicographically() {
        let (v, s) = best_subset(6, 2, |s| (s[0] + s[1]) % 3, |a, b| a > b).unwrap();
        assert_eq!((v, s), (2, vec![0, 2]));
        assert!(best_subset(2, 3, |_| 0, |a: &i32, b| a > b).is_none());
    }

    #[test]
    fn verdict_bands() {
        assert_eq!(Verdict::strict_below(1.0, 1.2, 1e-6), Verdict::Holds);
        assert_eq!(Verdict::strict_below(1.2, 1.2, 1e-6), Verdict::Boundary);
        assert_eq!(Verdict::strict_below(1.3, 1.2, 1e-6), Verdict::Fails);
    }
}
