use num_complex::Complex64;
use rand::seq::index::sample;
use serde::{Deserialize, Serialize};

use super::{auxiliary_seed, derive_seed, run_trials, ExperimentKind, RunSettings, SweepResult, TrialRecord};
use crate::budget::{checked_binomial, checked_pow};
use crate::certify::plan_parameters;
use crate::code::{random_generator, rng_from_seed, Codebook, LinearCode};
use crate::error::{Error, Result};
use crate::simplex::{roots_of_unity, PatternNorms};

/// How the maximum over L-sparse patterns is taken in one cell.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PatternSearch {
    /// Every L-subset of columns.
    Exhaustive,
    /// L = 2 on a linear code: ‖φ(c_i) + φ(c_j)‖₁ depends only on
    /// `c_j - c_i`, so pairs `(0, m)` over nonzero messages cover every value.
    Differences,
    /// Uniformly sampled patterns; a lower estimate of the maximum.
    Sampled,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConcentrationConfig {
    pub q: u32,
    pub n_grid: Vec<usize>,
    /// `k = ⌈ratio·n⌉` per grid point.
    pub k_ratio: f64,
    #[serde(rename = "L")]
    pub l: usize,
    /// Pilot pool size as a multiple of `trials`.
    #[serde(default = "default_pilot_factor")]
    pub pilot_factor: usize,
    /// Patterns drawn per trial when the maximum must be sampled.
    #[serde(default = "default_pattern_samples")]
    pub pattern_samples: usize,
    /// ε used for the planner round trip.
    #[serde(default = "default_plan_epsilon")]
    pub plan_epsilon: f64,
    #[serde(flatten)]
    pub run: RunSettings,
}

fn default_pilot_factor() -> usize {
    10
}

fn default_pattern_samples() -> usize {
    10_000
}

fn default_plan_epsilon() -> f64 {
    0.5
}

/// ‖Σ φ(w)‖₁ for a handful of words.
fn words_l1(q: u32, roots: &[Complex64], words: &[Vec<u8>]) -> f64 {
    let n = words[0].len();
    let mut total = 0.0;
    for i in 0..n {
        if q == 2 {
            let h = words.iter().filter(|w| w[i] == 1).count() as i64;
            total += (words.len() as i64 - 2 * h).abs() as f64;
            continue;
        }
        for alpha in 1..q {
            let z: Complex64 = words
                .iter()
                .map(|w| roots[((w[i] as u32 * alpha) % q) as usize])
                .sum();
            total += z.norm();
        }
    }
    total
}

fn random_pattern_l1(code: &LinearCode, l: usize, columns: usize, rng: &mut impl rand::Rng, roots: &[Complex64]) -> f64 {
    let mut idx = sample(rng, columns, l).into_vec();
    idx.sort_unstable();
    let words: Vec<_> = idx.iter().map(|&i| code.codeword(i as u128).symbols).collect();
    words_l1(code.q(), roots, &words)
}

/// `(1/L)·max |‖Φx‖₁ - mean|` for one code.
#[allow(clippy::too_many_arguments)]
fn max_deviation(
    code: &LinearCode,
    l: usize,
    mean: f64,
    search: PatternSearch,
    samples: usize,
    seed: u64,
    budget: &crate::budget::Budget,
    roots: &[Complex64],
) -> Result<f64> {
    let columns = code.checked_size(budget)?;
    let max = match search {
        PatternSearch::Exhaustive => {
            let book = Codebook::new(code, budget)?;
            let norms = PatternNorms::new(&book);
            let mut best = 0.0f64;
            for first in 0..columns {
                crate::certify::for_each_subset_from(columns, l, first, &mut |s| {
                    best = best.max((norms.l1(s) - mean).abs());
                });
            }
            best
        }
        PatternSearch::Differences => {
            let book = Codebook::new(code, budget)?;
            let norms = PatternNorms::new(&book);
            (1..columns)
                .map(|m| (norms.l1(&[0, m]) - mean).abs())
                .fold(0.0, f64::max)
        }
        PatternSearch::Sampled => {
            let mut rng = rng_from_seed(seed);
            (0..samples)
                .map(|_| (random_pattern_l1(code, l, columns, &mut rng, roots) - mean).abs())
                .fold(0.0, f64::max)
        }
    };
    Ok(max / l as f64)
}

fn slope(xs: &[f64], ys: &[f64]) -> Option<f64> {
    if xs.len() < 2 {
        return None;
    }
    let m = xs.len() as f64;
    let (mx, my) = (xs.iter().sum::<f64>() / m, ys.iter().sum::<f64>() / m);
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    (sxx > 0.0).then(|| sxy / sxx)
}

/// Deviation of ‖Φx‖₁ from its pilot mean, maximized over L-sparse
/// patterns, across a grid of block lengths.
pub fn run_concentration_probe(config: &ConcentrationConfig) -> Result<SweepResult> {
    config.run.validate()?;
    let (q, l) = (config.q, config.l);
    if config.n_grid.is_empty() {
        return Err(Error::invalid("n_grid must be nonempty"));
    }
    if l == 0 {
        return Err(Error::invalid("L must be at least 1"));
    }
    if config.k_ratio.is_nan() || config.k_ratio <= 0.0 {
        return Err(Error::invalid("k_ratio must be positive"));
    }
    let budget = config.run.budget.budget();
    let roots = roots_of_unity(q);
    let trials = config.run.trials as u64;
    let mut records = Vec::new();
    let mut cell_info = Vec::new();

    for (cell, &n) in config.n_grid.iter().enumerate() {
        let k = ((n as f64 * config.k_ratio).ceil() as usize).max(1);
        let columns = checked_pow(q as u64, k).unwrap_or(u128::MAX);
        if (l as u128) > columns {
            return Err(Error::invalid(format!("L = {l} exceeds the q^k = {columns} codewords at n = {n}")));
        }
        let search = match checked_binomial(columns, l) {
            Some(c) if c <= budget.subsets => PatternSearch::Exhaustive,
            _ if l == 2 => PatternSearch::Differences,
            _ => PatternSearch::Sampled,
        };

        let pilot_len = (config.pilot_factor.max(1) as u64) * trials;
        let pilot = run_trials(&config.run, 0..pilot_len, |i| {
            let seed = auxiliary_seed(config.run.master_seed, cell as u64, i);
            let mut rng = rng_from_seed(seed);
            let code = crate::code::random_generator_with(q, k, n, &mut rng)?;
            Ok(random_pattern_l1(&code, l, columns as usize, &mut rng, &roots))
        })?;
        let pilot_mean = pilot.iter().sum::<f64>() / pilot.len() as f64;

        let offset = cell as u64 * trials;
        let cell_records = run_trials(&config.run, offset..offset + trials, |trial| {
            let seed = derive_seed(config.run.master_seed, trial);
            let code = random_generator(q, k, n, seed)?;
            let d = max_deviation(&code, l, pilot_mean, search, config.pattern_samples, seed ^ 1, &budget, &roots)?;
            Ok(TrialRecord {
                kind: ExperimentKind::Concentration,
                trial,
                seed,
                q,
                n,
                k,
                l: Some(l),
                epsilon: None,
                t: None,
                measure_name: "deviation".into(),
                measure_value: d,
                pass: None,
            })
        })?;
        let mean_d = cell_records.iter().map(|r| r.measure_value).sum::<f64>() / trials as f64;
        let ln_n_codes = k as f64 * (q as f64).ln();
        let scale = (n as f64 * ln_n_codes).sqrt();
        cell_info.push(serde_json::json!({
            "n": n,
            "k": k,
            "search": search,
            "sampled": search == PatternSearch::Sampled,
            "pilot_size": pilot_len,
            "pilot_mean_l1": pilot_mean,
            "mean_deviation": mean_d,
            "sqrt_n_ln_N": scale,
            "c0_estimate": mean_d / ((q - 1) as f64 * scale),
        }));
        records.extend(cell_records);
    }

    let xs_n: Vec<f64> = cell_info.iter().map(|c| (c["n"].as_f64().unwrap()).ln()).collect();
    let xs_s: Vec<f64> = cell_info.iter().map(|c| c["sqrt_n_ln_N"].as_f64().unwrap().ln()).collect();
    let ys: Vec<f64> = cell_info.iter().map(|c| c["mean_deviation"].as_f64().unwrap().ln()).collect();
    let c0 = cell_info
        .iter()
        .map(|c| c["c0_estimate"].as_f64().unwrap())
        .fold(0.0, f64::max);
    let last_k = cell_info.last().and_then(|c| c["k"].as_u64()).unwrap_or(1) as usize;
    let plan = if c0 > 0.0 {
        Some(plan_parameters(config.plan_epsilon, q, c0, last_k)?)
    } else {
        None
    };
    let summary = serde_json::json!({
        "cells": cell_info,
        "slope_vs_n": slope(&xs_n, &ys),
        "slope_vs_sqrt_n_ln_N": slope(&xs_s, &ys),
        "c0_estimate": c0,
        "plan_round_trip": plan,
    });
    SweepResult::new(config, records, Vec::new(), summary)
}
