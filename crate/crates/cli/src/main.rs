//! Command-line front end: config loading, flag overrides, and exit-code
//! mapping. Exit codes: 0 success, 1 config/usage error, 2 board
//! exhausted, 3 validation envelope breach.

mod commands;
mod config;
mod output;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use gocover::analytics::AnalyticsError;
use gocover::field::{FieldError, Metric};
use gocover::heuristics::HeuristicsError;
use gocover::montecarlo::McError;
use gocover::placement::PlacementError;

use config::{RunConfig, StoppingKind};
use output::outln;

#[derive(Debug)]
pub enum CmdError {
    /// Bad configuration, usage, or I/O. Exit 1.
    Config(String),
    /// The board ran out of intersections (or the literal loop stalled)
    /// before the stopping rule was met. Exit 2.
    Exhausted(String),
    /// A Monte Carlo check fell outside its envelope. Exit 3.
    Envelope(String),
}

impl CmdError {
    pub fn config(msg: impl Into<String>) -> Self {
        CmdError::Config(msg.into())
    }

    pub fn envelope(msg: impl Into<String>) -> Self {
        CmdError::Envelope(msg.into())
    }

    fn code(&self) -> i32 {
        match self {
            CmdError::Config(_) => 1,
            CmdError::Exhausted(_) => 2,
            CmdError::Envelope(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            CmdError::Config(m) | CmdError::Exhausted(m) | CmdError::Envelope(m) => m,
        }
    }
}

impl From<FieldError> for CmdError {
    fn from(e: FieldError) -> Self {
        CmdError::Config(e.to_string())
    }
}

impl From<AnalyticsError> for CmdError {
    fn from(e: AnalyticsError) -> Self {
        CmdError::Config(e.to_string())
    }
}

impl From<HeuristicsError> for CmdError {
    fn from(e: HeuristicsError) -> Self {
        CmdError::Config(e.to_string())
    }
}

impl From<PlacementError> for CmdError {
    fn from(e: PlacementError) -> Self {
        match e {
            PlacementError::BoardExhausted | PlacementError::IterationCapExceeded { .. } => {
                CmdError::Exhausted(e.to_string())
            }
            PlacementError::InvalidConfig(_) => CmdError::Config(e.to_string()),
        }
    }
}

impl From<McError> for CmdError {
    fn from(e: McError) -> Self {
        match e {
            McError::InvalidConfig(m) => CmdError::Config(m),
            McError::Placement(p) => p.into(),
        }
    }
}

impl From<std::io::Error> for CmdError {
    fn from(e: std::io::Error) -> Self {
        CmdError::Config(format!("io error: {e}"))
    }
}

impl From<serde_json::Error> for CmdError {
    fn from(e: serde_json::Error) -> Self {
        CmdError::Config(format!("json error: {e}"))
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum MetricArg {
    Planar,
    Toroidal,
}

impl From<MetricArg> for Metric {
    fn from(m: MetricArg) -> Self {
        match m {
            MetricArg::Planar => Metric::Planar,
            MetricArg::Toroidal => Metric::Toroidal,
        }
    }
}

/// Flags that override fields of the run-config JSON.
#[derive(Debug, Args)]
struct Overrides {
    /// Run-config JSON file; every flag below overrides its field
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,
    /// Seed for placement and all derived Monte Carlo streams
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Lattice pitch in meters (default: half the node range)
    #[arg(long, global = true, value_name = "M")]
    pitch: Option<f64>,
    /// How the stopping threshold is read
    #[arg(long, global = true, value_enum)]
    stopping: Option<StoppingKind>,
    /// Stopping threshold / tolerable error, in (0, 1)
    #[arg(long, global = true)]
    threshold: Option<f64>,
    /// Distance convention for placement output and compare statistics
    #[arg(long, global = true, value_enum)]
    metric: Option<MetricArg>,
    /// Draw over all intersections and skip occupied ones
    #[arg(long, global = true)]
    fig2_literal: bool,
    /// Primary output path (JSON or CSV, depending on the subcommand)
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,
    /// Where `place` writes its per-iteration trace CSV
    #[arg(long, global = true, value_name = "PATH")]
    trace: Option<PathBuf>,
    /// Echo the fully resolved config as JSON and exit
    #[arg(long, global = true)]
    print_config: bool,
    /// Negative-control hook: corrupt the analytic reference so the
    /// validation envelopes must breach
    #[arg(long, global = true, hide = true)]
    corrupt_reference: bool,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Grow a deployment on the board until the stopping rule is met
    Place,
    /// Emit the closed-form density/connectivity/shaping table as CSV
    Analyze {
        /// First node count in the table
        #[arg(long, default_value_t = 1)]
        n_min: u64,
        /// Last node count in the table
        #[arg(long, default_value_t = 1000)]
        n_max: u64,
        /// Node count for the coverage-distribution CSV
        #[arg(long, default_value_t = 500)]
        dist_n: u64,
        /// Write the per-count coverage distribution (binomial and
        /// Poisson columns) to this path
        #[arg(long, value_name = "PATH")]
        dist_out: Option<PathBuf>,
    },
    /// Check the closed forms against seeded Monte Carlo estimates
    Validate,
    /// Compare heuristic placement against the uniform-random baseline
    Compare {
        /// Paired trials per strategy
        #[arg(long, default_value_t = 200)]
        trials: u64,
    },
}

#[derive(Debug, Parser)]
#[command(
    name = "gocover",
    version,
    about = "Heuristic grid placement and coverage analytics for dense wireless sensor networks"
)]
struct Cli {
    #[command(flatten)]
    overrides: Overrides,
    #[command(subcommand)]
    command: Command,
}

fn apply_overrides(cfg: &mut RunConfig, flags: &Overrides) {
    if let Some(seed) = flags.seed {
        cfg.seed = seed;
        cfg.mc.master_seed = seed;
    }
    if let Some(pitch) = flags.pitch {
        cfg.pitch_m = Some(pitch);
    }
    if let Some(stopping) = flags.stopping {
        cfg.stopping = stopping;
    }
    if let Some(threshold) = flags.threshold {
        cfg.threshold = threshold;
    }
    if let Some(metric) = flags.metric {
        cfg.metric = metric.into();
    }
    if flags.fig2_literal {
        cfg.fig2_literal = true;
    }
    if let Some(out) = &flags.out {
        cfg.out = Some(out.clone());
    }
    if let Some(trace) = &flags.trace {
        cfg.trace = Some(trace.clone());
    }
}

fn dispatch(cli: Cli) -> Result<(), CmdError> {
    let mut cfg = match &cli.overrides.config {
        Some(path) => RunConfig::load(path)?,
        None => RunConfig::default(),
    };
    apply_overrides(&mut cfg, &cli.overrides);

    if cli.overrides.print_config {
        let mut resolved = cfg.clone();
        resolved.pitch_m = Some(cfg.resolved_pitch());
        outln!("{}", serde_json::to_string_pretty(&resolved)?);
        return Ok(());
    }

    match cli.command {
        Command::Place => commands::cmd_place(&cfg),
        Command::Analyze {
            n_min,
            n_max,
            dist_n,
            dist_out,
        } => commands::cmd_analyze(&cfg, n_min, n_max, dist_n, dist_out.as_ref()),
        Command::Validate => commands::cmd_validate(&cfg, cli.overrides.corrupt_reference),
        Command::Compare { trials } => commands::cmd_compare(&cfg, trials),
    }
}

fn main() {
    std::process::exit(run());
}

fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                outln!("{}", e.to_string().trim_end());
                return 0;
            }
            let text = e.to_string();
            let first = text.lines().next().unwrap_or("invalid usage");
            eprintln!("error: {}", first.strip_prefix("error: ").unwrap_or(first));
            return 1;
        }
    };
    match dispatch(cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {}", e.message());
            e.code()
        }
    }
}
