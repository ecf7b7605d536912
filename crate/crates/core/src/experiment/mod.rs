//! Seeded Monte Carlo experiments with CSV and JSON persistence.
//!
//! Every trial draws its randomness from a ChaCha8 generator seeded with
//! [`derive_seed`]`(master_seed, trial)`, and trials are collected in index
//! order, so the output bytes do not depend on the number of worker threads.

mod concentration;
mod expectation;
mod monitor;
mod rank;
mod records;
mod rm;
mod sweep;

use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use crate::budget::Budget;
use crate::error::{Error, Result};

pub use concentration::{run_concentration_probe, ConcentrationConfig, PatternSearch};
pub use expectation::{run_expectation_check, ExpectationConfig};
pub use monitor::{MonitorEntry, SoundnessMonitor};
pub use rank::{run_rank_check, RankConfig};
pub use records::{aggregate, read_csv, write_csv, CellSummary, Quantiles, SweepResult, TrialRecord, CSV_HEADER};
pub use rm::{run_rm_puncture_experiment, RmPunctureConfig};
pub use sweep::{run_decodability_sweep, KRule, SweepConfig};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExperimentKind {
    Expectation,
    Rank,
    Concentration,
    DecodabilitySweep,
    RmPuncture,
}

impl ExperimentKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ExperimentKind::Expectation => "expectation",
            ExperimentKind::Rank => "rank",
            ExperimentKind::Concentration => "concentration",
            ExperimentKind::DecodabilitySweep => "decodability_sweep",
            ExperimentKind::RmPuncture => "rm_puncture",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        Ok(match s {
            "expectation" => ExperimentKind::Expectation,
            "rank" => ExperimentKind::Rank,
            "concentration" => ExperimentKind::Concentration,
            "decodability_sweep" | "sweep" => ExperimentKind::DecodabilitySweep,
            "rm_puncture" | "rm-puncture" => ExperimentKind::RmPuncture,
            other => return Err(Error::Parse(format!("unknown experiment kind {other:?}"))),
        })
    }
}

/// Settings shared by every experiment.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunSettings {
    pub trials: usize,
    #[serde(default)]
    pub master_seed: u64,
    /// Worker threads; results do not depend on it.
    #[serde(default = "default_parallelism")]
    pub parallelism: usize,
    /// CSV destination; the JSON summary goes next to it with a `.json`
    /// extension.
    #[serde(default)]
    pub output: Option<PathBuf>,
    #[serde(default)]
    pub budget: BudgetOverrides,
}

fn default_parallelism() -> usize {
    1
}

impl RunSettings {
    pub fn new(trials: usize, master_seed: u64) -> Self {
        Self {
            trials,
            master_seed,
            parallelism: 1,
            output: None,
            budget: BudgetOverrides::default(),
        }
    }

    pub(crate) fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(Error::invalid("trials must be at least 1"));
        }
        if self.parallelism == 0 {
            return Err(Error::invalid("parallelism must be at least 1"));
        }
        Ok(())
    }

    pub(crate) fn pool(&self) -> Result<rayon::ThreadPool> {
        rayon::ThreadPoolBuilder::new()
            .num_threads(self.parallelism)
            .build()
            .map_err(|e| Error::invalid(format!("cannot build thread pool: {e}")))
    }
}

/// Optional replacements for the default [`Budget`] limits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct BudgetOverrides {
    pub codewords: Option<u64>,
    pub words: Option<u64>,
    pub subsets: Option<u64>,
    pub cosets: Option<u64>,
    pub distance_evals: Option<u64>,
    pub generator_entries: Option<u64>,
}

impl BudgetOverrides {
    pub fn budget(&self) -> Budget {
        let d = Budget::default();
        let pick = |o: Option<u64>, v: u128| o.map_or(v, u128::from);
        Budget {
            codewords: pick(self.codewords, d.codewords),
            words: pick(self.words, d.words),
            subsets: pick(self.subsets, d.subsets),
            cosets: pick(self.cosets, d.cosets),
            distance_evals: pick(self.distance_evals, d.distance_evals),
            generator_entries: pick(self.generator_entries, d.generator_entries),
        }
    }
}

/// Any experiment configuration, tagged by `kind` in JSON.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ExperimentConfig {
    Expectation(ExpectationConfig),
    Rank(RankConfig),
    Concentration(ConcentrationConfig),
    DecodabilitySweep(SweepConfig),
    RmPuncture(RmPunctureConfig),
}

impl ExperimentConfig {
    pub fn kind(&self) -> ExperimentKind {
        match self {
            ExperimentConfig::Expectation(_) => ExperimentKind::Expectation,
            ExperimentConfig::Rank(_) => ExperimentKind::Rank,
            ExperimentConfig::Concentration(_) => ExperimentKind::Concentration,
            ExperimentConfig::DecodabilitySweep(_) => ExperimentKind::DecodabilitySweep,
            ExperimentConfig::RmPuncture(_) => ExperimentKind::RmPuncture,
        }
    }

    pub fn run_settings(&self) -> &RunSettings {
        match self {
            ExperimentConfig::Expectation(c) => &c.run,
            ExperimentConfig::Rank(c) => &c.run,
            ExperimentConfig::Concentration(c) => &c.run,
            ExperimentConfig::DecodabilitySweep(c) => &c.run,
            ExperimentConfig::RmPuncture(c) => &c.run,
        }
    }

    pub fn run_settings_mut(&mut self) -> &mut RunSettings {
        match self {
            ExperimentConfig::Expectation(c) => &mut c.run,
            ExperimentConfig::Rank(c) => &mut c.run,
            ExperimentConfig::Concentration(c) => &mut c.run,
            ExperimentConfig::DecodabilitySweep(c) => &mut c.run,
            ExperimentConfig::RmPuncture(c) => &mut c.run,
        }
    }

    /// Parses a configuration for `kind`; a `kind` field in the JSON, if
    /// present, must agree.
    pub fn from_json(kind: ExperimentKind, text: &str) -> Result<Self> {
        let mut value: serde_json::Value = serde_json::from_str(text)?;
        let obj = value
            .as_object_mut()
            .ok_or_else(|| Error::Parse("experiment config must be a JSON object".into()))?;
        if let Some(given) = obj.get("kind").and_then(|k| k.as_str()) {
            if ExperimentKind::parse(given)? != kind {
                return Err(Error::Parse(format!(
                    "config kind {given:?} does not match requested {}",
                    kind.as_str()
                )));
            }
        }
        obj.insert("kind".into(), kind.as_str().into());
        Ok(serde_json::from_value(value)?)
    }

    pub fn run(&self) -> Result<SweepResult> {
        match self {
            ExperimentConfig::Expectation(c) => run_expectation_check(c),
            ExperimentConfig::Rank(c) => run_rank_check(c),
            ExperimentConfig::Concentration(c) => run_concentration_probe(c),
            ExperimentConfig::DecodabilitySweep(c) => run_decodability_sweep(c),
            ExperimentConfig::RmPuncture(c) => run_rm_puncture_experiment(c),
        }
    }
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed of trial `trial` under `master`: two rounds of SplitMix64.
pub fn derive_seed(master: u64, trial: u64) -> u64 {
    splitmix64(splitmix64(master) ^ trial)
}

/// Seed stream for auxiliary draws (pilot pools) that must not collide
/// with trial seeds.
pub(crate) fn auxiliary_seed(master: u64, stream: u64, index: u64) -> u64 {
    derive_seed(derive_seed(master ^ 0xA5A5_A5A5_A5A5_A5A5, stream), index)
}

/// Runs `f` for every trial index in parallel and returns results in index
/// order.
pub(crate) fn run_trials<T, F>(settings: &RunSettings, range: std::ops::Range<u64>, f: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(u64) -> Result<T> + Sync + Send,
{
    use rayon::prelude::*;
    let pool = settings.pool()?;
    pool.install(|| range.into_par_iter().map(&f).collect())
}
