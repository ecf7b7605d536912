use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use super::{derive_seed, run_trials, CellSummary, ExperimentKind, RunSettings, SoundnessMonitor, SweepResult, TrialRecord};
use crate::budget::checked_pow;
use crate::certify::{decoding_radius, exact_decimal};
use crate::code::random_generator;
use crate::error::{Error, Result};
use crate::oracle::{Oracle, SearchMethod};

/// How the dimension k is chosen in each ε cell.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "rule")]
pub enum KRule {
    Fixed { k: usize },
    /// `k = max(1, ⌊c·ε²·n / ln q⌋)`.
    RateConstant { c: f64 },
    /// `k = max(1, ⌊n·ε²/((2·c0)²·ln q)⌋`, the planner's dimension, at the
    /// cell's ε or at `reference_epsilon` for every cell.
    Plan {
        c0: f64,
        #[serde(default)]
        reference_epsilon: Option<f64>,
    },
}

impl KRule {
    pub fn k(&self, q: u32, n: usize, epsilon: f64) -> Result<usize> {
        let ln_q = (q as f64).ln();
        let k = match *self {
            KRule::Fixed { k } => k,
            KRule::RateConstant { c } => (c * epsilon * epsilon * n as f64 / ln_q).floor() as usize,
            KRule::Plan { c0, reference_epsilon } => {
                if c0.is_nan() || c0 <= 0.0 {
                    return Err(Error::invalid("c0 must be positive"));
                }
                let e = reference_epsilon.unwrap_or(epsilon);
                (n as f64 * e * e / ((2.0 * c0).powi(2) * ln_q)).floor() as usize
            }
        };
        Ok(k.clamp(1, n))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepConfig {
    pub q: u32,
    pub n: usize,
    pub epsilons: Vec<f64>,
    pub k_rule: KRule,
    /// Sparsities at which ℓ1 certificates are issued and re-checked.
    #[serde(default = "default_monitor_sparsities")]
    pub monitor_sparsities: Vec<usize>,
    #[serde(default = "default_monitor_subsets")]
    pub monitor_subset_limit: u64,
    #[serde(flatten)]
    pub run: RunSettings,
}

pub(crate) fn default_monitor_sparsities() -> Vec<usize> {
    vec![2]
}

pub(crate) fn default_monitor_subsets() -> u64 {
    100_000
}

/// `x ≤ 4/ε²` in exact arithmetic.
fn within_list_bound(x: usize, eps: &BigRational) -> bool {
    BigRational::from_integer(x.into()) * eps * eps <= BigRational::from_integer(4.into())
}

/// Worst-case list sizes of random linear codes at `t = ⌊(1-1/q)(1-ε)n⌋`
/// across an ε grid, with the fraction of codes meeting the `4/ε²` bound.
pub fn run_decodability_sweep(config: &SweepConfig) -> Result<SweepResult> {
    config.run.validate()?;
    let (q, n) = (config.q, config.n);
    if config.epsilons.is_empty() {
        return Err(Error::invalid("epsilon grid must be nonempty"));
    }
    let budget = config.run.budget.budget();
    let monitor = SoundnessMonitor::new(config.monitor_sparsities.clone(), config.monitor_subset_limit as u128);
    let trials = config.run.trials as u64;
    let mut records = Vec::new();
    let mut skipped = Vec::new();
    let mut cell_info = Vec::new();

    for (cell, &epsilon) in config.epsilons.iter().enumerate() {
        if !(epsilon > 0.0 && epsilon.is_finite()) {
            return Err(Error::invalid(format!("epsilon must be positive, got {epsilon}")));
        }
        let eps = exact_decimal(epsilon)?;
        let k = config.k_rule.k(q, n, epsilon)?;
        let t = decoding_radius(q, n, epsilon)?.unwrap_or(0);
        let params = serde_json::json!({"q": q, "n": n, "k": k, "epsilon": epsilon, "t": t});
        let cosets = checked_pow(q as u64, n - k);
        let evals = checked_pow(q as u64, n);
        if cosets.is_none_or(|c| c > budget.cosets) || evals.is_none_or(|e| e > budget.distance_evals) {
            skipped.push(CellSummary::skipped(params, "oracle cost exceeds budget".into()));
            continue;
        }
        let list_bound = (BigRational::from_integer(4.into()) / (&eps * &eps))
            .floor()
            .to_integer()
            .to_usize()
            .unwrap_or(usize::MAX);
        let offset = cell as u64 * trials;
        let outcome = run_trials(&config.run, offset..offset + trials, |trial| {
            let seed = derive_seed(config.run.master_seed, trial);
            let code = random_generator(q, k, n, seed)?;
            let oracle = Oracle::new(&code, budget)?;
            let report = match oracle.worst_case(t, SearchMethod::Coset) {
                Ok(r) => r,
                Err(Error::SizeOverBudget { .. }) => return Ok(None),
                Err(e) => return Err(e),
            };
            monitor.check(trial, &oracle, epsilon, &budget)?;
            Ok(Some(TrialRecord {
                kind: ExperimentKind::DecodabilitySweep,
                trial,
                seed,
                q,
                n,
                k,
                l: Some(list_bound),
                epsilon: Some(epsilon),
                t: Some(t),
                measure_name: "max_list".into(),
                measure_value: report.max_list as f64,
                pass: Some(within_list_bound(report.max_list, &eps)),
            }))
        })?;
        if outcome.iter().any(Option::is_none) {
            skipped.push(CellSummary::skipped(params, "a trial exceeded the oracle budget".into()));
            continue;
        }
        let cell_records: Vec<TrialRecord> = outcome.into_iter().flatten().collect();
        let lists: Vec<f64> = cell_records.iter().map(|r| r.measure_value).collect();
        let median = super::Quantiles::of(&lists).median;
        cell_info.push(serde_json::json!({
            "epsilon": epsilon,
            "k": k,
            "t": t,
            "list_bound": list_bound,
            "median_max_list": median,
            "success_prob": cell_records.iter().filter(|r| r.pass == Some(true)).count() as f64 / trials as f64,
        }));
        records.extend(cell_records);
    }

    let ratios: Vec<_> = cell_info
        .windows(2)
        .map(|w| {
            serde_json::json!({
                "from_epsilon": w[0]["epsilon"],
                "to_epsilon": w[1]["epsilon"],
                "median_ratio": w[1]["median_max_list"].as_f64().unwrap() / w[0]["median_max_list"].as_f64().unwrap(),
            })
        })
        .collect();
    let summary = serde_json::json!({
        "cells": cell_info,
        "median_ratios": ratios,
        "soundness": monitor.verify()?,
    });
    SweepResult::new(config, records, skipped, summary)
}
