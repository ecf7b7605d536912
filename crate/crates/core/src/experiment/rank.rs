use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use super::{derive_seed, run_trials, ExperimentKind, RunSettings, SweepResult, TrialRecord};
use crate::code::{full_rank_probability, random_generator};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RankConfig {
    pub q: u32,
    pub k: usize,
    pub n: usize,
    #[serde(flatten)]
    pub run: RunSettings,
}

/// Empirical frequency of `rank(G) = k` against the product formula.
pub fn run_rank_check(config: &RankConfig) -> Result<SweepResult> {
    config.run.validate()?;
    let (q, k, n) = (config.q, config.k, config.n);
    if k > n {
        return Err(Error::invalid(format!("rank check needs k <= n, got k = {k}, n = {n}")));
    }
    let records = run_trials(&config.run, 0..config.run.trials as u64, |trial| {
        let seed = derive_seed(config.run.master_seed, trial);
        let full = random_generator(q, k, n, seed)?.rank() == k;
        Ok(TrialRecord {
            kind: ExperimentKind::Rank,
            trial,
            seed,
            q,
            n,
            k,
            l: None,
            epsilon: None,
            t: None,
            measure_name: "full_rank".into(),
            measure_value: if full { 1.0 } else { 0.0 },
            pass: Some(full),
        })
    })?;
    let exact = full_rank_probability(q, k, n);
    let p = exact.to_f64().unwrap_or(f64::NAN);
    let trials = config.run.trials as f64;
    let empirical = records.iter().filter(|r| r.pass == Some(true)).count() as f64 / trials;
    let sigma = (p * (1.0 - p) / trials).sqrt();
    let within = |target: f64| {
        if sigma == 0.0 {
            empirical == target
        } else {
            (empirical - target).abs() <= 3.0 * sigma
        }
    };
    let summary = serde_json::json!({
        "trials": config.run.trials,
        "empirical": empirical,
        "formula": p,
        "formula_exact": exact.to_string(),
        "sigma": sigma,
        "z": if sigma > 0.0 { (empirical - p) / sigma } else { 0.0 },
        "within_3_sigma": within(p),
        // the product read as P(rank < k) instead
        "complement_within_3_sigma": within(1.0 - p),
    });
    SweepResult::new(config, records, Vec::new(), summary)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn square_binary() {
        let cfg = RankConfig {
            q: 2,
            k: 2,
            n: 2,
            run: RunSettings::new(4000, 11),
        };
        let r = run_rank_check(&cfg).unwrap();
        assert_eq!(r.summary["formula_exact"], "3/8");
        assert_eq!(r.summary["within_3_sigma"], true);
    }

    #[test]
    fn rejects_wide() {
        let cfg = RankConfig {
            q: 2,
            k: 3,
            n: 2,
            run: RunSettings::new(1, 0),
        };
        assert!(run_rank_check(&cfg).is_err());
    }
}
