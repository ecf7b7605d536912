//! The `ldlab` command line.
//!
//! JSON goes to standard output; `--verbose` adds readable summaries on
//! standard error. Exit codes: 0 success, 1 domain failure (certificate
//! fails, code not decodable, soundness violation), 2 usage or input error,
//! 3 budget exceeded.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::budget::Budget;
use crate::certify::{avg_distance_certificate, l1_certificate_with, plan_parameters, rip_constant, L1Mode, Verdict};
use crate::code::{load_gen, puncture_with_mode, random_generator, reed_muller, store_gen, wozencraft, LinearCode, PunctureMode};
use crate::error::{Error, Result};
use crate::experiment::{read_csv, ExperimentConfig, ExperimentKind};
use crate::oracle::{Oracle, SearchMethod};
use crate::plot::render_svg;

pub const EXIT_OK: i32 = 0;
pub const EXIT_DOMAIN: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "ldlab", version, about = "List decodability of small linear codes")]
pub struct Cli {
    /// Print readable summaries to standard error.
    #[arg(long, global = true)]
    pub verbose: bool,
    /// Worker threads for experiments.
    #[arg(long, global = true, default_value_t = 1)]
    pub jobs: usize,
    /// Override the subset budget of certificate enumeration.
    #[arg(long, global = true)]
    pub max_subsets: Option<u64>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a code and write it as a .gen file.
    Gen {
        #[command(subcommand)]
        kind: GenKind,
    },
    /// Worst-case list size at radius t, compared with list size L.
    CheckLd {
        #[arg(long)]
        code: PathBuf,
        #[arg(long)]
        t: usize,
        #[arg(long = "L")]
        l: usize,
        #[arg(long, value_enum, default_value_t = MethodArg::Coset)]
        method: MethodArg,
    },
    /// Evaluate a sufficient condition for list decodability.
    Cert {
        #[command(subcommand)]
        kind: CertKind,
    },
    /// Plan L and n for a target ε.
    Plan {
        #[arg(long)]
        epsilon: f64,
        #[arg(long)]
        q: u32,
        #[arg(long)]
        c0: f64,
        #[arg(long)]
        k: usize,
    },
    /// Run a seeded experiment described by a JSON config.
    Exp(ExpArgs),
    /// Render an experiment CSV as an SVG chart.
    Plot {
        #[arg(long)]
        csv: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// Measure to plot; defaults to the first one in the file.
        #[arg(long)]
        measure: Option<String>,
    },
}

#[derive(Debug, Subcommand)]
pub enum GenKind {
    /// Uniformly random k x n generator over F_q.
    Random {
        #[arg(long)]
        q: u32,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Reed-Muller code RM(r, m).
    Rm {
        #[arg(long)]
        r: u32,
        #[arg(long)]
        m: u32,
        #[arg(long)]
        out: PathBuf,
    },
    /// Wozencraft code over GF(2^k) with r random multipliers.
    Wozencraft {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Random puncturing of an existing code.
    Puncture {
        #[arg(long)]
        code: PathBuf,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = PunctureArg::WithReplacement)]
        mode: PunctureArg,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Debug, Subcommand)]
pub enum CertKind {
    /// ℓ1 certificate at sparsity L and slack ε.
    L1 {
        #[arg(long)]
        code: PathBuf,
        #[arg(long = "L")]
        l: usize,
        #[arg(long)]
        epsilon: f64,
        #[arg(long, value_enum, default_value_t = L1ModeArg::Exact)]
        mode: L1ModeArg,
    },
    /// Restricted isometry constant at sparsity s.
    Rip {
        #[arg(long)]
        code: PathBuf,
        #[arg(long, visible_alias = "L")]
        s: usize,
    },
    /// Average pairwise distance certificate over L-sets.
    Avgdist {
        #[arg(long)]
        code: PathBuf,
        #[arg(long = "L")]
        l: usize,
    },
}

#[derive(Debug, Args)]
pub struct ExpArgs {
    #[arg(value_enum)]
    pub kind: ExpKindArg,
    #[arg(long)]
    pub config: PathBuf,
    /// Master seed; replaces any seed in the config.
    #[arg(long)]
    pub seed: u64,
    /// CSV output; replaces any output path in the config.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum MethodArg {
    Coset,
    Exhaustive,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum PunctureArg {
    WithReplacement,
    Bernoulli,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum L1ModeArg {
    Exact,
    Greedy,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum ExpKindArg {
    Expectation,
    Rank,
    Concentration,
    Sweep,
    RmPuncture,
}

impl From<ExpKindArg> for ExperimentKind {
    fn from(k: ExpKindArg) -> Self {
        match k {
            ExpKindArg::Expectation => ExperimentKind::Expectation,
            ExpKindArg::Rank => ExperimentKind::Rank,
            ExpKindArg::Concentration => ExperimentKind::Concentration,
            ExpKindArg::Sweep => ExperimentKind::DecodabilitySweep,
            ExpKindArg::RmPuncture => ExperimentKind::RmPuncture,
        }
    }
}

/// Exit code for a library error.
pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::SizeOverBudget { .. } => EXIT_BUDGET,
        Error::SoundnessViolation(_) => EXIT_DOMAIN,
        _ => EXIT_USAGE,
    }
}

/// Parses `args` (program name first) and runs the command, writing to the
/// given streams. Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(err, "{text}");
            } else {
                let _ = write!(out, "{text}");
            }
            return code;
        }
    };
    match execute(&cli, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

fn emit(out: &mut dyn Write, value: &impl Serialize) -> Result<()> {
    let text = serde_json::to_string_pretty(value)?;
    writeln!(out, "{text}")?;
    Ok(())
}

fn budget(cli: &Cli) -> Budget {
    let b = Budget::default();
    match cli.max_subsets {
        Some(s) => b.with_subsets(s as u128),
        None => b,
    }
}

fn write_code(code: &LinearCode, path: &PathBuf, out: &mut dyn Write, err: &mut dyn Write, verbose: bool) -> Result<i32> {
    store_gen(code, path)?;
    if verbose {
        writeln!(err, "wrote q={} k={} n={} to {}", code.q(), code.k(), code.n(), path.display())?;
    }
    emit(
        out,
        &serde_json::json!({"q": code.q(), "k": code.k(), "n": code.n(), "path": path}),
    )?;
    Ok(EXIT_OK)
}

fn verdict_exit(v: Verdict) -> i32 {
    if v == Verdict::Holds {
        EXIT_OK
    } else {
        EXIT_DOMAIN
    }
}

fn execute(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    let b = budget(cli);
    match &cli.command {
        Command::Gen { kind } => {
            let (code, path) = match kind {
                GenKind::Random { q, k, n, seed, out } => (random_generator(*q, *k, *n, *seed)?, out),
                GenKind::Rm { r, m, out } => (reed_muller(*r, *m, &b)?, out),
                GenKind::Wozencraft { k, r, seed, out } => (wozencraft(*k, *r, *seed)?, out),
                GenKind::Puncture { code, n, seed, mode, out } => {
                    let mode = match mode {
                        PunctureArg::WithReplacement => PunctureMode::WithReplacement,
                        PunctureArg::Bernoulli => PunctureMode::Bernoulli,
                    };
                    (puncture_with_mode(&load_gen(code)?, *n, *seed, mode)?, out)
                }
            };
            write_code(&code, path, out, err, cli.verbose)
        }
        Command::CheckLd { code, t, l, method } => {
            let code = load_gen(code)?;
            let method = match method {
                MethodArg::Coset => SearchMethod::Coset,
                MethodArg::Exhaustive => SearchMethod::Exhaustive,
            };
            let report = Oracle::new(&code, b)?.worst_case(*t, method)?;
            let decodable = report.max_list <= *l;
            if cli.verbose {
                writeln!(
                    err,
                    "t = {}  max list = {}  L = {}  decodable = {}  method = {:?}",
                    report.t, report.max_list, l, decodable, report.method
                )?;
            }
            let mut value = serde_json::to_value(&report)?;
            value["L"] = (*l).into();
            value["decodable"] = decodable.into();
            emit(out, &value)?;
            Ok(if decodable { EXIT_OK } else { EXIT_DOMAIN })
        }
        Command::Cert { kind } => match kind {
            CertKind::L1 { code, l, epsilon, mode } => {
                let mode = match mode {
                    L1ModeArg::Exact => L1Mode::Exact,
                    L1ModeArg::Greedy => L1Mode::GreedyLowerBound,
                };
                let cert = l1_certificate_with(&load_gen(code)?, *l, *epsilon, mode, &b)?;
                if cli.verbose {
                    writeln!(
                        err,
                        "value {:.6}  threshold {:.6}  verdict {:?}  radius {:?}",
                        cert.value, cert.threshold, cert.verdict, cert.radius
                    )?;
                }
                emit(out, &cert.to_report())?;
                Ok(verdict_exit(cert.verdict))
            }
            CertKind::Rip { code, s } => {
                let report = rip_constant(&load_gen(code)?, *s, &b)?;
                let json = report.to_report();
                if cli.verbose {
                    writeln!(err, "delta {:.9}  witness {:?}", report.delta, report.witness.support())?;
                }
                emit(out, &json)?;
                Ok(verdict_exit(json.verdict))
            }
            CertKind::Avgdist { code, l } => {
                let cert = avg_distance_certificate(&load_gen(code)?, *l, &b)?;
                let json = cert.to_report();
                if cli.verbose {
                    writeln!(
                        err,
                        "min avg distance {}  eta {}  epsilon {:.6}{}",
                        cert.min_avg_distance,
                        cert.eta,
                        cert.epsilon,
                        if cert.vacuous { " (vacuous)" } else { "" }
                    )?;
                }
                emit(out, &json)?;
                Ok(verdict_exit(json.verdict))
            }
        },
        Command::Plan { epsilon, q, c0, k } => {
            let plan = plan_parameters(*epsilon, *q, *c0, *k)?;
            if cli.verbose {
                writeln!(err, "L = {}  n = {}  t = {}  margin = {:.6}", plan.l, plan.n, plan.t, plan.margin)?;
            }
            emit(out, &plan)?;
            Ok(if plan.satisfied { EXIT_OK } else { EXIT_DOMAIN })
        }
        Command::Exp(args) => {
            let text = std::fs::read_to_string(&args.config)?;
            let mut config = ExperimentConfig::from_json(args.kind.into(), &text)?;
            {
                let run = config.run_settings_mut();
                run.master_seed = args.seed;
                run.parallelism = cli.jobs.max(1);
                if let Some(path) = &args.out {
                    run.output = Some(path.clone());
                }
            }
            if let Some(path) = &config.run_settings().output {
                if path.with_extension("json") == args.config {
                    return Err(Error::invalid("the JSON summary next to --out would overwrite --config"));
                }
            }
            let result = config.run()?;
            if let Some(path) = &config.run_settings().output {
                result.persist(path)?;
            }
            if cli.verbose {
                writeln!(err, "{:<48} {:>8} {:>14} {:>12} {:>10}", "cell", "trials", "mean", "stderr", "success")?;
                for c in &result.cells {
                    writeln!(
                        err,
                        "{:<48} {:>8} {:>14.6} {:>12.6} {:>10}",
                        c.params.to_string(),
                        c.n_trials,
                        c.mean,
                        c.stderr,
                        c.success_prob.map(|p| format!("{p:.4}")).unwrap_or_else(|| "-".into())
                    )?;
                }
            }
            emit(out, &result)?;
            Ok(EXIT_OK)
        }
        Command::Plot { csv, out: svg_path, measure } => {
            let records = read_csv(std::fs::File::open(csv)?)?;
            let svg = render_svg(&records, measure.as_deref())?;
            std::fs::write(svg_path, &svg)?;
            if cli.verbose {
                writeln!(err, "wrote {} records to {}", records.len(), svg_path.display())?;
            }
            emit(out, &serde_json::json!({"records": records.len(), "path": svg_path}))?;
            Ok(EXIT_OK)
        }
    }
}

/// Entry point for the binary.
pub fn main_from_env() -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock())
}
