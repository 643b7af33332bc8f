//! `gclm`: Gaussian-centred moment summaries, screening, enrichment and
//! robustness studies from the command line.

mod commands;
mod config;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

/// Failure classes, mapped onto the exit status.
#[derive(Debug)]
pub enum CliError {
    /// Bad flags, config keys or values: exit 2.
    Usage(String),
    /// Anything that went wrong while running: exit 1.
    Runtime(anyhow::Error),
}

impl From<anyhow::Error> for CliError {
    fn from(e: anyhow::Error) -> Self {
        CliError::Runtime(e)
    }
}

impl From<gclm_core::Error> for CliError {
    fn from(e: gclm_core::Error) -> Self {
        match e {
            gclm_core::Error::UnknownStatistic { .. } => CliError::Usage(e.to_string()),
            other => CliError::Runtime(other.into()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Runtime(e.into())
    }
}

#[derive(Debug, Parser)]
#[command(name = "gclm", version, about = "Robust Gaussian-centred summary statistics for high-dimensional data")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Every summary statistic for every variable of a matrix.
    Stats(StatsArgs),
    /// Rank variables by one statistic and export the extreme ones.
    Screen(ScreenArgs),
    /// Gene set enrichment of a ranking, or a comparison of several.
    Gsea(GseaArgs),
    /// Growth order of influence functions over Tukey g-and-h bases.
    Robustness(RobustnessArgs),
    /// Write a synthetic matrix with a planted skewed set and its GMT.
    Simulate(SimulateArgs),
}

#[derive(Debug, Clone, Args)]
pub struct CommonArgs {
    /// TOML file with default values; flags win.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Worker threads (results never depend on this).
    #[arg(long)]
    pub threads: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub out_dir: Option<PathBuf>,
    /// Field separator of matrix and label files: tab, comma or one character.
    #[arg(long)]
    pub delimiter: Option<String>,
    /// sample, bh or plugin.
    #[arg(long)]
    pub hl_estimator: Option<String>,
    /// Gaussian replicates behind the HL calibration.
    #[arg(long)]
    pub bias_replicates: Option<usize>,
    #[arg(long)]
    pub bias_seed: Option<u64>,
}

#[derive(Debug, Args)]
pub struct StatsArgs {
    #[arg(long)]
    pub input: Option<PathBuf>,
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Debug, Args)]
pub struct ScreenArgs {
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// Statistic to rank by.
    #[arg(long)]
    pub stat: Option<String>,
    /// Number of variables selected.
    #[arg(long)]
    pub k: Option<usize>,
    /// ascending (bottom k) or descending (top k).
    #[arg(long)]
    pub direction: Option<String>,
    /// Sample class labels: `sample_id<delim>label` per line.
    #[arg(long)]
    pub labels: Option<PathBuf>,
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Debug, Args)]
pub struct GseaArgs {
    /// Data matrix; ranked by `--stat`.
    #[arg(long, conflicts_with = "ranked")]
    pub input: Option<PathBuf>,
    /// Precomputed ranked list instead of a matrix.
    #[arg(long)]
    pub ranked: Option<PathBuf>,
    #[arg(long)]
    pub gmt: Option<PathBuf>,
    #[arg(long, conflicts_with = "stats")]
    pub stat: Option<String>,
    /// Two or more statistics: compare them on the same permutations.
    #[arg(long, value_delimiter = ',')]
    pub stats: Option<Vec<String>>,
    #[arg(long)]
    pub permutations: Option<usize>,
    #[arg(long, value_delimiter = ',')]
    pub fdr_levels: Option<Vec<f64>>,
    /// Exponent on hit weights; 0 is the classic statistic.
    #[arg(long)]
    pub weight_p: Option<f64>,
    #[arg(long)]
    pub min_size: Option<usize>,
    #[arg(long)]
    pub max_size: Option<usize>,
    /// Running-score profiles exported for this many top sets.
    #[arg(long)]
    pub top_profiles: Option<usize>,
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Debug, Args)]
pub struct RobustnessArgs {
    #[arg(long, value_delimiter = ',')]
    pub stats: Option<Vec<String>>,
    /// Tail parameters of the symmetric bases T(0, h).
    #[arg(long, value_delimiter = ',', num_args = 0..)]
    pub h: Option<Vec<f64>>,
    #[arg(long)]
    pub x_min: Option<f64>,
    #[arg(long)]
    pub x_max: Option<f64>,
    #[arg(long)]
    pub x_points: Option<usize>,
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    #[command(flatten)]
    pub common: CommonArgs,
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match commands::run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Runtime(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
