//! Randomly punctured Reed-Muller codes against their list-size bound.
use ldlab::code::PunctureMode;
use ldlab::experiment::{run_rm_puncture_experiment, RmPunctureConfig, RunSettings};

fn main() -> ldlab::Result<()> {
    let mut run = RunSettings::new(10, 7);
    run.parallelism = 4;
    let config = RmPunctureConfig {
        r: 2,
        m: 4,
        rate_constant: 2.0,
        epsilon: 0.5,
        identity: false,
        puncture_mode: PunctureMode::WithReplacement,
        monitor_sparsities: vec![2],
        monitor_subset_limit: 3_000_000,
        run,
    };
    let result = run_rm_puncture_experiment(&config)?;
    println!("{}", serde_json::to_string_pretty(&result.summary)?);
    Ok(())
}
