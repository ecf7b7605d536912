use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use super::sweep::{default_monitor_sparsities, default_monitor_subsets};
use super::{derive_seed, run_trials, ExperimentKind, RunSettings, SoundnessMonitor, SweepResult, TrialRecord};
use crate::certify::{decoding_radius, exact_decimal};
use crate::code::{low_weight_count, puncture_at, puncture_with_mode, reed_muller, PunctureMode};
use crate::error::{Error, Result};
use crate::oracle::{Oracle, SearchMethod};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RmPunctureConfig {
    pub r: u32,
    pub m: u32,
    /// Rate `c·ε²`, so the punctured length is `⌈k/(c·ε²)⌉`.
    pub rate_constant: f64,
    pub epsilon: f64,
    /// Keep every coordinate once instead of drawing a random multiset.
    #[serde(default)]
    pub identity: bool,
    #[serde(default)]
    pub puncture_mode: PunctureMode,
    #[serde(default = "default_monitor_sparsities")]
    pub monitor_sparsities: Vec<usize>,
    #[serde(default = "default_monitor_subsets")]
    pub monitor_subset_limit: u64,
    #[serde(flatten)]
    pub run: RunSettings,
}

fn ceil_usize(x: BigRational) -> usize {
    x.ceil().to_integer().to_usize().unwrap_or(usize::MAX)
}

/// Randomly punctured RM(r, m) codes at `t = ⌊n(1-ε)/2⌋`, checked against
/// the list size `⌈A/ε²⌉ - 1` where A counts the mother code's codewords
/// of weight at most `⌊n'(1-ε²)/2⌋`.
pub fn run_rm_puncture_experiment(config: &RmPunctureConfig) -> Result<SweepResult> {
    config.run.validate()?;
    let budget = config.run.budget.budget();
    let eps = exact_decimal(config.epsilon)?;
    let one = BigRational::from_integer(1.into());
    if !(eps > BigRational::from_integer(0.into()) && eps < one) {
        return Err(Error::invalid(format!("epsilon must lie in (0, 1), got {}", config.epsilon)));
    }
    let c = exact_decimal(config.rate_constant)?;
    if c <= BigRational::from_integer(0.into()) {
        return Err(Error::invalid("rate_constant must be positive"));
    }
    let mother = reed_muller(config.r, config.m, &budget)?;
    let (k, n_mother) = (mother.k(), mother.n());
    let eps_sq = &eps * &eps;
    let weight = ((&one - &eps_sq) * BigRational::from_integer(n_mother.into()) / BigRational::from_integer(2.into()))
        .floor()
        .to_integer()
        .to_usize()
        .expect("weight fits");
    let a = low_weight_count(&mother, weight, &budget)?;
    let l = ceil_usize(BigRational::from_integer(a.into()) / &eps_sq);
    let n = if config.identity {
        n_mother
    } else {
        ceil_usize(BigRational::from_integer(k.into()) / (&c * &eps_sq))
    };
    let t = decoding_radius(2, n, config.epsilon)?.expect("epsilon < 1");
    let monitor = SoundnessMonitor::new(config.monitor_sparsities.clone(), config.monitor_subset_limit as u128);

    let records = run_trials(&config.run, 0..config.run.trials as u64, |trial| {
        let seed = derive_seed(config.run.master_seed, trial);
        let code = if config.identity {
            puncture_at(&mother, &(0..n_mother).collect::<Vec<_>>())?
        } else {
            puncture_with_mode(&mother, n, seed, config.puncture_mode)?
        };
        let oracle = Oracle::new(&code, budget)?;
        let trial_t = decoding_radius(2, code.n(), config.epsilon)?.expect("epsilon < 1");
        let report = oracle.worst_case(trial_t, SearchMethod::Coset)?;
        monitor.check(trial, &oracle, config.epsilon, &budget)?;
        Ok(TrialRecord {
            kind: ExperimentKind::RmPuncture,
            trial,
            seed,
            q: 2,
            n: code.n(),
            k,
            l: Some(l),
            epsilon: Some(config.epsilon),
            t: Some(trial_t),
            measure_name: "max_list".into(),
            measure_value: report.max_list as f64,
            pass: Some(report.max_list < l),
        })
    })?;
    let trials = records.len() as f64;
    let p = records.iter().filter(|r| r.pass == Some(true)).count() as f64 / trials;
    let summary = serde_json::json!({
        "mother": {"r": config.r, "m": config.m, "k": k, "n": n_mother},
        "weight_threshold": weight,
        "A": a,
        "L": l,
        "list_bound": l - 1,
        "n": n,
        "t": t,
        "success_fraction": p,
        "success_stderr": (p * (1.0 - p) / trials).sqrt(),
        "trials": records.len(),
        "soundness": monitor.verify()?,
    });
    SweepResult::new(config, records, Vec::new(), summary)
}
