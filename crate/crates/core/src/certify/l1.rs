use serde::{Deserialize, Serialize};

use super::{best_subset, decoding_radius, CertificateReport, Verdict};
use crate::budget::{checked_binomial, Budget};
use crate::code::{Codebook, LinearCode};
use crate::error::{Error, Result};
use crate::simplex::{PatternNorms, SparsePattern};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum L1Mode {
    #[default]
    Exact,
    GreedyLowerBound,
}

/// `(1/L)·max ‖Φx‖₁` over exactly-L-sparse patterns against `(q-1)nε`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct L1Certificate {
    #[serde(rename = "L")]
    pub l: usize,
    pub epsilon: f64,
    pub value: f64,
    pub threshold: f64,
    pub verdict: Verdict,
    pub mode: L1Mode,
    pub witness: SparsePattern,
    pub tolerance: f64,
    /// `⌊(1-1/q)(1-ε)n⌋`, absent when ε > 1.
    pub radius: Option<usize>,
}

impl L1Certificate {
    /// List size guaranteed at [`Self::radius`] when the verdict holds.
    pub fn list_bound(&self) -> usize {
        self.l - 1
    }

    pub fn to_report(&self) -> CertificateReport {
        CertificateReport {
            kind: "l1".into(),
            l: self.l,
            value: self.value,
            threshold: self.threshold,
            verdict: self.verdict,
            witness: self.witness.support().to_vec(),
            mode: serde_json::to_value(self.mode)
                .ok()
                .and_then(|v| v.as_str().map(String::from))
                .unwrap_or_default(),
            tolerance: self.tolerance,
            details: serde_json::json!({
                "epsilon": self.epsilon,
                "radius": self.radius,
                "list": self.l - 1,
            }),
        }
    }
}

/// Exact ℓ1 certificate; see [`l1_certificate_with`].
pub fn l1_certificate(code: &LinearCode, l: usize, epsilon: f64, budget: &Budget) -> Result<L1Certificate> {
    l1_certificate_with(code, l, epsilon, L1Mode::Exact, budget)
}

/// Exact mode maximizes over every size-L support and fails with
/// `SizeOverBudget` past the subset budget. Greedy mode grows one support
/// by the best single column at each step (ties to the lowest index) and
/// only ever refutes.
pub fn l1_certificate_with(
    code: &LinearCode,
    l: usize,
    epsilon: f64,
    mode: L1Mode,
    budget: &Budget,
) -> Result<L1Certificate> {
    if l == 0 {
        return Err(Error::invalid("sparsity L must be at least 1"));
    }
    if !(epsilon.is_finite() && epsilon > 0.0) {
        return Err(Error::invalid(format!("epsilon must be positive, got {epsilon}")));
    }
    let book = Codebook::new(code, budget)?;
    let n_cols = book.len();
    if l > n_cols {
        return Err(Error::invalid(format!("L = {l} exceeds the {n_cols} codewords")));
    }
    let norms = PatternNorms::new(&book);
    let (max_l1, support) = match mode {
        L1Mode::Exact => {
            Budget::check("L-subsets", checked_binomial(n_cols as u128, l), budget.subsets)?;
            best_subset(n_cols, l, |s| norms.l1(s), |a, b| a > b).expect("l <= n_cols")
        }
        L1Mode::GreedyLowerBound => greedy(&norms, n_cols, l),
    };
    let scale = code.n() as f64 * (code.q() - 1) as f64;
    let threshold = scale * epsilon;
    let tolerance = 1e-6 * scale;
    let value = max_l1 / l as f64;
    let verdict = match (mode, Verdict::strict_below(value, threshold, tolerance)) {
        (L1Mode::GreedyLowerBound, Verdict::Holds) => Verdict::Inconclusive,
        (_, v) => v,
    };
    Ok(L1Certificate {
        l,
        epsilon,
        value,
        threshold,
        verdict,
        mode,
        witness: SparsePattern::from_unsorted(support, n_cols)?,
        tolerance,
        radius: decoding_radius(code.q(), code.n(), epsilon)?,
    })
}

fn greedy(norms: &PatternNorms<'_>, n_cols: usize, l: usize) -> (f64, Vec<usize>) {
    let mut support: Vec<usize> = Vec::with_capacity(l);
    let mut current = 0.0;
    let mut trial = Vec::with_capacity(l);
    for _ in 0..l {
        let mut best: Option<(f64, usize)> = None;
        for j in (0..n_cols).filter(|j| !support.contains(j)) {
            trial.clear();
            trial.extend_from_slice(&support);
            trial.push(j);
            let v = norms.l1(&trial);
            if best.is_none_or(|(b, _)| v > b) {
                best = Some((v, j));
            }
        }
        let (v, j) = best.expect("l <= n_cols");
        support.push(j);
        current = v;
    }
    (current, support)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::random_generator;

    fn full22() -> LinearCode {
        LinearCode::from_rows(2, &[vec![1, 0], vec![0, 1]], 2).unwrap()
    }

    #[test]
    fn full_code_pairs() {
        let c = l1_certificate(&full22(), 2, 0.6, &Budget::default()).unwrap();
        assert_eq!(c.value, 1.0);
        assert_eq!(c.witness.support(), &[0, 1]);
        assert!((c.threshold - 1.2).abs() < 1e-12);
        assert_eq!(c.verdict, Verdict::Holds);
        assert_eq!(c.radius, Some(0));
        assert_eq!(c.list_bound(), 1);
    }

    #[test]
    fn single_column_never_certifies() {
        for seed in 0..5 {
            let code = random_generator(3, 2, 5, seed).unwrap();
            for eps in [0.1, 0.5, 0.99] {
                let c = l1_certificate(&code, 1, eps, &Budget::default()).unwrap();
                assert!((c.value - 10.0).abs() < 1e-9);
                assert_eq!(c.verdict, Verdict::Fails);
            }
        }
    }

    #[test]
    fn greedy_is_a_lower_bound_and_never_holds() {
        for seed in 0..10 {
            let code = random_generator(2, 3, 7, seed).unwrap();
            for l in 1..=4 {
                let b = Budget::default();
                let e = l1_certificate(&code, l, 0.9, &b).unwrap();
                let g = l1_certificate_with(&code, l, 0.9, L1Mode::GreedyLowerBound, &b).unwrap();
                assert!(g.value <= e.value + 1e-9);
                assert_ne!(g.verdict, Verdict::Holds);
            }
        }
    }

    #[test]
    fn exact_mode_respects_subset_budget() {
        let code = random_generator(2, 8, 12, 1).unwrap();
        let b = Budget::default().with_subsets(1000);
        assert!(matches!(
            l1_certificate(&code, 3, 0.5, &b),
            Err(Error::SizeOverBudget { .. })
        ));
        assert!(l1_certificate_with(&code, 3, 0.5, L1Mode::GreedyLowerBound, &b).is_ok());
    }

    #[test]
    fn report_fields() {
        let c = l1_certificate(&full22(), 2, 0.6, &Budget::default()).unwrap();
        let v = serde_json::to_value(c.to_report()).unwrap();
        for key in ["kind", "L", "value", "threshold", "verdict", "witness", "mode", "tolerance"] {
            assert!(v.get(key).is_some(), "missing {key}");
        }
        assert_eq!(v["verdict"], "holds");
        assert_eq!(v["mode"], "exact");
    }
}
