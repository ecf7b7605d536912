//! Seeded experiments persisted as CSV and JSON, then plotted.
use ldlab::experiment::{run_rank_check, ConcentrationConfig, ExperimentConfig, RankConfig, RunSettings};
use ldlab::plot::render_svg;

fn main() -> ldlab::Result<()> {
    let dir = std::env::temp_dir().join("ldlab-example");
    std::fs::create_dir_all(&dir)?;

    let rank = run_rank_check(&RankConfig {
        q: 2,
        k: 3,
        n: 5,
        run: RunSettings::new(20_000, 1),
    })?;
    println!("rank: {}", rank.summary);

    let mut run = RunSettings::new(40, 2);
    run.parallelism = 4;
    run.output = Some(dir.join("concentration.csv"));
    let config = ExperimentConfig::Concentration(ConcentrationConfig {
        q: 2,
        n_grid: vec![16, 32, 64],
        k_ratio: 0.125,
        l: 2,
        pilot_factor: 10,
        pattern_samples: 10_000,
        plan_epsilon: 0.5,
        run,
    });
    let result = config.run()?;
    result.persist(&dir.join("concentration.csv"))?;
    println!("concentration slope vs n: {}", result.summary["slope_vs_n"]);

    let svg = render_svg(&result.records, Some("deviation"))?;
    std::fs::write(dir.join("concentration.svg"), svg)?;
    println!("wrote {}", dir.display());
    Ok(())
}
