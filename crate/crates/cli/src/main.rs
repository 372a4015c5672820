//! `racah`: exact verification harness for the Racah algebra kernel.
//!
//! Exit codes: 0 when every check passes, 1 on a failing or inconclusive
//! check, 2 on a usage error, 3 when the report cannot be written.

mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use racah_core::oracle::{self, OracleOptions, RadialPoint};
use racah_core::relations::{self, IndexMode, SweepOptions};
use racah_core::{Frame, Model};

use report::{Format, Outcome, RunConfig};

#[derive(Parser)]
#[command(name = "racah", version, about = "Exact checks of the Racah algebra R(n) and its superintegrable extensions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Reduce every catalogued relation to exact zero
    Verify(Common),
    /// Compare quantum generators and relations with their classical forms as hbar -> 0
    Limit(Common),
    /// Jacobian ranks of the integral sets at sampled radial points
    Independence(Common),
    /// Cross-check the catalog with point evaluation and operator application
    Oracle {
        #[command(flatten)]
        common: Common,
        /// Also delete one summand from this many classical instances and count detections
        #[arg(long, default_value_t = 0)]
        mutations: usize,
        /// Test functions applied per quantum instance
        #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u64).range(1..))]
        test_functions: u64,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModelArg {
    Generic,
    Sw,
    Kc,
}

impl From<ModelArg> for Model {
    fn from(m: ModelArg) -> Model {
        match m {
            ModelArg::Generic => Model::Generic,
            ModelArg::Sw => Model::Sw,
            ModelArg::Kc => Model::Kc,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FrameArg {
    Classical,
    Quantum,
    /// Classical, quantum and (for `verify`) the limit sweep
    Both,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Exhaustive,
    Sampled,
}

/// Inclusive range of dimensions, written `4` or `3..5`.
#[derive(Clone, Copy, Debug)]
struct Dims {
    lo: usize,
    hi: usize,
}

fn parse_dims(s: &str) -> Result<Dims, String> {
    let num = |t: &str| t.trim().parse::<usize>().map_err(|_| format!("not a dimension: {t:?}"));
    let (lo, hi) = match s.split_once("..") {
        Some((a, b)) => (num(a)?, num(b.trim_start_matches('='))?),
        None => {
            let v = num(s)?;
            (v, v)
        }
    };
    if lo < 2 {
        return Err(format!("n must be at least 2, got {lo}"));
    }
    if hi < lo {
        return Err(format!("empty range {lo}..{hi}"));
    }
    Ok(Dims { lo, hi })
}

#[derive(Args)]
struct Common {
    #[arg(long, value_enum, default_value = "generic")]
    model: ModelArg,
    /// Defaults to `both` for verify and oracle
    #[arg(long, value_enum)]
    frame: Option<FrameArg>,
    /// Dimension, or an inclusive range such as 3..5
    #[arg(long, default_value = "3", value_parser = parse_dims)]
    n: Dims,
    /// Exhaustive for n <= 4 and sampled above, unless given
    #[arg(long, value_enum)]
    mode: Option<ModeArg>,
    /// Tuples per relation in sampled mode
    #[arg(long, default_value_t = 20, value_parser = clap::value_parser!(u64).range(1..))]
    samples: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Radial points for oracle and rank checks
    #[arg(long, default_value_t = 25, value_parser = clap::value_parser!(u64).range(1..))]
    points: u64,
    /// Worker threads; 1 runs sequentially
    #[arg(long, env = "RACAH_JOBS", value_parser = clap::value_parser!(u64).range(1..))]
    jobs: Option<u64>,
    /// Depth of the radial-potential tower for the generic model
    #[arg(long)]
    tower: Option<usize>,
    /// Write the report here instead of standard output
    #[arg(long)]
    report: Option<PathBuf>,
    /// Report format; JSON when writing a file, Markdown on standard output
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Record per-relation wall time (makes reports non-reproducible)
    #[arg(long)]
    timings: bool,
    /// Sample every point with zero momenta, a degenerate configuration
    #[arg(long)]
    zero_momenta: bool,
}

impl Common {
    fn sweep(&self) -> SweepOptions {
        SweepOptions {
            mode: self.mode.map(|m| match m {
                ModeArg::Exhaustive => IndexMode::Exhaustive,
                ModeArg::Sampled => IndexMode::Sampled,
            }),
            samples: self.samples as usize,
            seed: self.seed,
            parallel: self.jobs != Some(1),
            timings: self.timings,
            tower: self.tower,
        }
    }

    fn frames(&self) -> Vec<Frame> {
        match self.frame.unwrap_or(FrameArg::Both) {
            FrameArg::Classical => vec![Frame::Classical],
            FrameArg::Quantum => vec![Frame::Quantum],
            FrameArg::Both => vec![Frame::Classical, Frame::Quantum],
        }
    }

    fn dims(&self) -> impl Iterator<Item = usize> {
        self.n.lo..=self.n.hi
    }

    fn config(&self, command: &str) -> RunConfig {
        RunConfig {
            command: command.into(),
            model: Model::from(self.model).as_str().into(),
            frame: match (command, self.frame.unwrap_or(FrameArg::Both)) {
                ("limit" | "independence", _) => None,
                (_, FrameArg::Classical) => Some("classical".into()),
                (_, FrameArg::Quantum) => Some("quantum".into()),
                (_, FrameArg::Both) => Some("both".into()),
            },
            n: (self.n.lo, self.n.hi),
            mode: match self.mode {
                None => "auto",
                Some(ModeArg::Exhaustive) => "exhaustive",
                Some(ModeArg::Sampled) => "sampled",
            }
            .into(),
            samples: self.samples as usize,
            seed: self.seed,
            points: self.points as usize,
            tower: self.tower,
            zero_momenta: self.zero_momenta,
            mutations: None,
            test_functions: None,
        }
    }

    fn radial_points(&self, n: usize) -> anyhow::Result<Vec<RadialPoint>> {
        let pts = oracle::sample_radial_points(n, self.points as usize, self.seed, oracle::POINT_BOUND)?;
        Ok(if self.zero_momenta { pts.iter().map(RadialPoint::at_rest).collect() } else { pts })
    }
}

fn cmd_verify(c: &Common) -> anyhow::Result<Outcome> {
    let opts = c.sweep();
    let mut results = Vec::new();
    for n in c.dims() {
        for frame in c.frames() {
            results.extend(relations::verify_all(frame, c.model.into(), n, &opts)?);
        }
        if c.frame.unwrap_or(FrameArg::Both) == FrameArg::Both {
            results.extend(relations::limit_sweep(c.model.into(), n, &opts)?);
        }
    }
    Ok(Outcome::sweep(c.config("verify"), results))
}

fn cmd_limit(c: &Common) -> anyhow::Result<Outcome> {
    let opts = c.sweep();
    let mut results = Vec::new();
    for n in c.dims() {
        results.extend(relations::limit_sweep(c.model.into(), n, &opts)?);
    }
    Ok(Outcome::sweep(c.config("limit"), results))
}

fn cmd_independence(c: &Common) -> anyhow::Result<Outcome> {
    let mut results = Vec::new();
    for n in c.dims() {
        results.push(oracle::independence(c.model.into(), n, &c.radial_points(n)?)?);
    }
    Ok(Outcome::Independence { config: c.config("independence"), results })
}

fn cmd_oracle(c: &Common, mutations: usize, test_functions: usize) -> anyhow::Result<Outcome> {
    if c.zero_momenta {
        bail!(racah_core::Error::Config("--zero-momenta only applies to independence".into()));
    }
    let opts = OracleOptions { points: c.points as usize, test_functions, seed: c.seed, sweep: c.sweep() };
    let mut results = Vec::new();
    let mut controls = Vec::new();
    for n in c.dims() {
        for frame in c.frames() {
            results.extend(oracle::oracle_sweep(frame, c.model.into(), n, &opts)?);
        }
        if mutations > 0 {
            controls.push(oracle::mutation_control(n, mutations, opts.points, c.seed, opts.sweep.parallel)?);
        }
    }
    let mut config = c.config("oracle");
    config.mutations = Some(mutations);
    config.test_functions = Some(test_functions);
    Ok(Outcome::Oracle { config, results, mutations: controls })
}

fn run(cli: &Cli) -> anyhow::Result<bool> {
    let common = match &cli.command {
        Command::Verify(c) | Command::Limit(c) | Command::Independence(c) => c,
        Command::Oracle { common, .. } => common,
    };
    let work = || match &cli.command {
        Command::Verify(c) => cmd_verify(c),
        Command::Limit(c) => cmd_limit(c),
        Command::Independence(c) => cmd_independence(c),
        Command::Oracle { common, mutations, test_functions } => cmd_oracle(common, *mutations, *test_functions as usize),
    };
    let outcome = with_pool(common.jobs, work)?;
    let format = common.format.unwrap_or(if common.report.is_some() { Format::Json } else { Format::Md });
    let text = outcome.render(format)?;
    match &common.report {
        Some(path) => {
            std::fs::write(path, text).with_context(|| format!("writing report to {}", path.display()))?;
            eprintln!("{}", outcome.summary());
            eprintln!("report written to {}", path.display());
        }
        None => {
            print!("{text}");
            if format == Format::Json {
                eprintln!("{}", outcome.summary());
            }
        }
    }
    Ok(outcome.ok())
}

#[cfg(feature = "parallel")]
fn with_pool<T: Send>(jobs: Option<u64>, work: impl FnOnce() -> anyhow::Result<T> + Send) -> anyhow::Result<T> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(j) = jobs {
        builder = builder.num_threads(j as usize);
    }
    builder.build().context("starting worker pool")?.install(work)
}

#[cfg(not(feature = "parallel"))]
fn with_pool<T: Send>(_jobs: Option<u64>, work: impl FnOnce() -> anyhow::Result<T> + Send) -> anyhow::Result<T> {
    work()
}

/// Usage errors come from the kernel's validation, I/O errors from the report.
fn exit_code(err: &anyhow::Error) -> u8 {
    if err.chain().any(|e| e.is::<std::io::Error>()) {
        3
    } else if err.chain().any(|e| e.is::<racah_core::Error>()) {
        2
    } else {
        1
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(exit_code(&err))
        }
    }
}
