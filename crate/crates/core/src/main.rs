use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use biasedbv::bounds::{figure1_curves, figure1_curves_log, BoundKind};
use biasedbv::harness::config::{parse_f64_list, EtaValue, MuSpec, MuValue, TargetSpec};
use biasedbv::harness::output::{
    create_output, figure1_svg, parse_axis, parse_usize_axis, write_bounds_table, write_figure1_csv,
    write_sample_histogram, write_summary, write_trials, BoundsGrid,
};
use biasedbv::harness::runner::{trial_seed, workers_from_env};
use biasedbv::harness::{run_experiment, run_trial, Algorithm, Engine, ExperimentConfig};
use biasedbv::{Error, NoiseParams, Result};

#[derive(Parser)]
#[command(name = "biasedbv", version, about = "Learning parities from quantum examples under biased product distributions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Histogram of subroutine outcomes with reference probabilities
    Sample(SampleArgs),
    /// One learner run, reported as key=value lines
    Learn(LearnArgs),
    /// Monte-Carlo experiment from a TOML config
    Experiment(ExperimentArgs),
    /// Table of sample-complexity bounds over a parameter grid
    Bounds(BoundsArgs),
    /// Bias thresholds of the majority-vote and lower-bound regimes
    Figure1(Figure1Args),
}

#[derive(Args)]
struct ProblemArgs {
    #[arg(long)]
    n: usize,
    /// Target string, or `ones`, `zeros`, `random`
    #[arg(long, default_value = "random")]
    a: String,
    /// `zero`, `random`, `boundary` or a comma-separated list
    #[arg(long, default_value = "zero")]
    mu: String,
    #[arg(long)]
    c: Option<f64>,
    /// One rate for every coordinate or a comma-separated list
    #[arg(long)]
    eta: Option<String>,
    #[arg(long, default_value = "analytic")]
    engine: Engine,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

impl ProblemArgs {
    fn eta_value(&self) -> Result<Option<EtaValue>> {
        let Some(s) = &self.eta else { return Ok(None) };
        let list = parse_f64_list(s)?;
        Ok(Some(if list.len() == 1 { EtaValue::Scalar(list[0]) } else { EtaValue::List(list) }))
    }

    fn noise(&self) -> Result<Option<NoiseParams>> {
        match self.eta_value()? {
            None => Ok(None),
            Some(EtaValue::Scalar(e)) => Ok(Some(NoiseParams::uniform(self.n, e)?)),
            Some(EtaValue::List(list)) => {
                if list.len() != self.n {
                    return Err(Error::Dimension { expected: self.n, found: list.len() });
                }
                Ok(Some(NoiseParams::new(list)?))
            }
        }
    }
}

#[derive(Args)]
struct SampleArgs {
    #[command(flatten)]
    problem: ProblemArgs,
    #[arg(long, default_value_t = 1000)]
    shots: u64,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    force: bool,
}

#[derive(Args)]
struct LearnArgs {
    #[command(flatten)]
    problem: ProblemArgs,
    #[arg(long, default_value = "majority")]
    algorithm: Algorithm,
    #[arg(long)]
    m: Option<usize>,
    /// Bound name sizing the run, e.g. `or_aggregate` or `thm53`
    #[arg(long)]
    m_from: Option<String>,
    /// Bias vector the transform is built from
    #[arg(long)]
    mu_tilde: Option<String>,
    #[arg(long, default_value_t = 0.05)]
    delta: f64,
    #[arg(long)]
    force: bool,
}

#[derive(Args)]
struct ExperimentArgs {
    #[arg(long)]
    config: PathBuf,
    #[arg(long)]
    trials: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    force: bool,
}

#[derive(Args)]
struct BoundsArgs {
    /// Comma-separated bound names; all bounds when omitted
    #[arg(long)]
    bound: Option<String>,
    /// Values `a,b,c` or range `start:stop:step`
    #[arg(long, default_value = "8")]
    n: String,
    #[arg(long, default_value = "1")]
    c: String,
    #[arg(long, default_value = "0.05")]
    delta: String,
    #[arg(long)]
    rho: Option<String>,
    #[arg(long)]
    epsilon: Option<String>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    force: bool,
}

#[derive(Args)]
struct Figure1Args {
    #[arg(long, default_value_t = 3)]
    n_min: usize,
    #[arg(long, default_value_t = 200)]
    n_max: usize,
    /// Use this many log-spaced n values instead of every integer
    #[arg(long)]
    log_points: Option<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    svg: Option<PathBuf>,
    #[arg(long)]
    force: bool,
}

fn sink(out: &Option<PathBuf>, force: bool) -> Result<Box<dyn Write>> {
    Ok(match out {
        Some(path) => Box::new(create_output(path, force)?),
        None => Box::new(io::stdout().lock()),
    })
}

fn cmd_sample(args: SampleArgs) -> Result<()> {
    let p = &args.problem;
    let mut setup = ChaCha8Rng::seed_from_u64(trial_seed(p.seed, 0));
    let a = TargetSpec::parse(&p.a)?.resolve(p.n, &mut setup);
    a.check_len(p.n)?;
    let mu = MuSpec::parse(&p.mu)?.draw(p.n, p.c, &mut setup)?;
    let eta = p.noise()?;
    let out = sink(&args.out, args.force)?;
    write_sample_histogram(out, &a, &mu, eta.as_ref(), args.shots, p.engine, p.seed)
}

fn cmd_learn(args: LearnArgs) -> Result<()> {
    let p = &args.problem;
    let mut cfg = ExperimentConfig::new(p.n, args.algorithm);
    cfg.target = p.a.clone();
    cfg.mu = MuValue::Named(p.mu.clone());
    cfg.c = p.c;
    cfg.engine = p.engine;
    cfg.m = args.m;
    cfg.m_from = args.m_from.clone();
    cfg.eta = p.eta_value()?;
    cfg.mu_tilde = args.mu_tilde.as_deref().map(parse_f64_list).transpose()?;
    cfg.trials = 1;
    cfg.delta = args.delta;
    cfg.seed = p.seed;
    cfg.force = args.force;
    let plan = cfg.resolve()?;
    let outcome = run_trial(&plan, 0)?;
    let mut w = io::stdout().lock();
    writeln!(w, "target={}", outcome.target)?;
    writeln!(w, "result={}", outcome.result.as_ref().map_or("none".to_string(), |r| r.to_string()))?;
    writeln!(w, "success={}", outcome.record.success)?;
    writeln!(w, "copies_used={}", outcome.record.m_used)?;
    writeln!(w, "subroutine_successes={}", outcome.record.subroutine_successes)?;
    if let Some(e) = &outcome.estimation {
        writeln!(w, "estimation_copies={}", e.estimation_copies)?;
        writeln!(w, "l1_error={}", e.l1_error)?;
        writeln!(w, "epsilon={}", e.epsilon)?;
        writeln!(w, "gate_bound={}", e.gate_bound)?;
    }
    for warning in plan.warnings.iter().chain(&outcome.warnings) {
        writeln!(w, "warning={warning}")?;
    }
    Ok(())
}

fn cmd_experiment(args: ExperimentArgs) -> Result<()> {
    let mut cfg = ExperimentConfig::load(&args.config)?;
    if let Some(t) = args.trials {
        cfg.trials = t;
    }
    if let Some(s) = args.seed {
        cfg.seed = s;
    }
    if args.out.is_some() {
        cfg.out = args.out.clone();
    }
    cfg.force |= args.force;
    let workers = workers_from_env()?;
    match cfg.out.clone() {
        Some(path) => {
            let summary = biasedbv::harness::run_experiment_to_file(&cfg, &path, workers)?;
            write_summary(io::stderr().lock(), &summary)
        }
        None => {
            let (records, summary) = run_experiment(&cfg, workers)?;
            write_trials(io::stdout().lock(), &records)?;
            write_summary(io::stderr().lock(), &summary)
        }
    }
}

fn cmd_bounds(args: BoundsArgs) -> Result<()> {
    let bounds = match &args.bound {
        None => BoundKind::ALL.to_vec(),
        Some(s) => s.split(',').filter(|t| !t.trim().is_empty()).map(str::parse).collect::<Result<_>>()?,
    };
    let grid = BoundsGrid {
        bounds,
        n: parse_usize_axis(&args.n)?,
        c: parse_axis(&args.c)?,
        delta: parse_axis(&args.delta)?,
        rho: args.rho.as_deref().map(parse_axis).transpose()?.unwrap_or_default(),
        epsilon: args.epsilon.as_deref().map(parse_axis).transpose()?.unwrap_or_default(),
    };
    write_bounds_table(sink(&args.out, args.force)?, &grid)
}

fn cmd_figure1(args: Figure1Args) -> Result<()> {
    let rows = match args.log_points {
        Some(k) => figure1_curves_log(args.n_min, args.n_max, k)?,
        None => figure1_curves(args.n_min, args.n_max)?,
    };
    if let Some(svg) = &args.svg {
        if svg.exists() && !args.force {
            return Err(Error::Config(format!("{} already exists; pass force to overwrite", svg.display())));
        }
        fs::write(svg, figure1_svg(&rows))?;
    }
    write_figure1_csv(sink(&args.out, args.force)?, &rows)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Sample(a) => cmd_sample(a),
        Command::Learn(a) => cmd_learn(a),
        Command::Experiment(a) => cmd_experiment(a),
        Command::Bounds(a) => cmd_bounds(a),
        Command::Figure1(a) => cmd_figure1(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
