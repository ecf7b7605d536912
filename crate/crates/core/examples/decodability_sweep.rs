//! Worst-case list sizes of random codes across an ε grid.
use ldlab::experiment::{run_decodability_sweep, KRule, RunSettings, SweepConfig};

fn main() -> ldlab::Result<()> {
    let mut run = RunSettings::new(20, 3);
    run.parallelism = 4;
    let config = SweepConfig {
        q: 2,
        n: 20,
        epsilons: vec![0.4, 0.2],
        k_rule: KRule::Fixed { k: 7 },
        monitor_sparsities: vec![2],
        monitor_subset_limit: 100_000,
        run,
    };
    let result = run_decodability_sweep(&config)?;
    for cell in &result.cells {
        println!(
            "{}: median {} success {:?}",
            cell.params, cell.quantiles.median, cell.success_prob
        );
    }
    println!("{}", result.summary["median_ratios"]);
    Ok(())
}
