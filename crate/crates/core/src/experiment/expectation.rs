use serde::{Deserialize, Serialize};

use super::{derive_seed, run_trials, ExperimentKind, RunSettings, SweepResult, TrialRecord};
use crate::code::random_generator;
use crate::error::{Error, Result};
use crate::simplex::{inner_product_from_distance, SimplexMatrix, SparsePattern};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExpectationConfig {
    pub q: u32,
    pub n: usize,
    pub k: usize,
    #[serde(rename = "L")]
    pub l: usize,
    /// Message indices of the fixed pattern; defaults to `0..L`.
    #[serde(default)]
    pub pattern: Option<Vec<usize>>,
    #[serde(flatten)]
    pub run: RunSettings,
}

/// Mean of ‖Φx‖₂² against `(q-1)nL` and mean of ‖Φx‖₁ against
/// `n(q-1)√L` over fresh random generators and one fixed pattern.
pub fn run_expectation_check(config: &ExpectationConfig) -> Result<SweepResult> {
    config.run.validate()?;
    let (q, n, k, l) = (config.q, config.n, config.k, config.l);
    let budget = config.run.budget.budget();
    let columns = crate::budget::checked_pow(q as u64, k).unwrap_or(u128::MAX);
    let support = config.pattern.clone().unwrap_or_else(|| (0..l).collect());
    if support.len() != l || l == 0 {
        return Err(Error::invalid(format!("pattern must have exactly L = {l} >= 1 entries")));
    }
    let pattern = SparsePattern::from_unsorted(support, columns.min(usize::MAX as u128) as usize)?;
    let scale = (n * (q as usize - 1)) as f64;
    let l1_bound = scale * (l as f64).sqrt();

    let per_trial = run_trials(&config.run, 0..config.run.trials as u64, |trial| {
        let seed = derive_seed(config.run.master_seed, trial);
        let code = random_generator(q, k, n, seed)?;
        let words: Vec<_> = pattern
            .support()
            .iter()
            .map(|&i| code.codeword(i as u128).symbols)
            .collect();
        let mut l2 = 0i64;
        for a in &words {
            for b in &words {
                let d = a.iter().zip(b).filter(|(x, y)| x != y).count();
                l2 += inner_product_from_distance(q, n, d);
            }
        }
        let l1 = SimplexMatrix::new(&code, budget).apply(&pattern)?.l1_norm();
        let base = TrialRecord {
            kind: ExperimentKind::Expectation,
            trial,
            seed,
            q,
            n,
            k,
            l: Some(l),
            epsilon: None,
            t: None,
            measure_name: "l2_sq".into(),
            measure_value: l2 as f64,
            pass: None,
        };
        let l1_rec = TrialRecord {
            measure_name: "l1".into(),
            measure_value: l1,
            pass: Some(l1 <= l1_bound),
            ..base.clone()
        };
        Ok([base, l1_rec])
    })?;
    let records: Vec<TrialRecord> = per_trial.into_iter().flatten().collect();

    let cells = super::aggregate(&records);
    let find = |m: &str| cells.iter().find(|c| c.params["measure"] == m).expect("measure present");
    let (l2c, l1c) = (find("l2_sq"), find("l1"));
    let expected = scale * l as f64;
    let l2_within = if l2c.stderr == 0.0 {
        l2c.mean == expected
    } else {
        (l2c.mean - expected).abs() <= 3.0 * l2c.stderr
    };
    let summary = serde_json::json!({
        "trials": config.run.trials,
        "pattern": pattern.support(),
        "l2_sq": {
            "mean": l2c.mean,
            "stderr": l2c.stderr,
            "expected": expected,
            "z": if l2c.stderr > 0.0 { (l2c.mean - expected) / l2c.stderr } else { 0.0 },
            "within_3_stderr": l2_within,
        },
        "l1": {
            "mean": l1c.mean,
            "stderr": l1c.stderr,
            "bound": l1_bound,
            "respects_bound_within_3_stderr": l1c.mean <= l1_bound + 3.0 * l1c.stderr,
        },
    });
    SweepResult::new(config, records, Vec::new(), summary)
}
