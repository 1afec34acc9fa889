//! Command-line arguments.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

/// Conditional work statistics: exact reports, simulated interferometry and
/// repeated estimation campaigns.
#[derive(Debug, Parser)]
#[command(name = "otm", version)]
pub struct Cli {
    /// What to compute.
    #[command(subcommand)]
    pub command: Command,
    /// Options shared by every command.
    #[command(flatten)]
    pub common: CommonArgs,
}

/// Options shared by every command.
#[derive(Debug, Args, Default, Clone)]
pub struct CommonArgs {
    /// Built-in system (`paper-2qubit`).
    #[arg(long, global = true)]
    pub preset: Option<String>,
    /// JSON configuration file.
    #[arg(long, global = true, value_name = "PATH")]
    pub config: Option<PathBuf>,
    /// Characteristic-function argument.
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub u: Option<f64>,
    /// Shots per circuit and observable.
    #[arg(long, global = true)]
    pub shots: Option<u64>,
    /// Number of trials.
    #[arg(long, global = true)]
    pub trials: Option<u64>,
    /// Noise model: a JSON file, `ibm-like` or `none`.
    #[arg(long, global = true, value_name = "PATH|ibm-like|none")]
    pub noise: Option<String>,
    /// Campaign seed.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Output file (standard output if absent).
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,
    /// Dotted-key override applied after the file and flags; repeatable, last one wins.
    #[arg(long = "set", global = true, value_name = "KEY=VAL")]
    pub overrides: Vec<String>,
    /// Worker threads for campaigns (0 = one per core).
    #[arg(long, global = true, default_value_t = 0)]
    pub threads: usize,
}

/// Subcommands.
#[derive(Debug, Subcommand)]
pub enum Command {
    /// Thermodynamic report and the exact forward/backward ratio.
    Exact {
        /// Print the resolved configuration instead of the report.
        #[arg(long)]
        dump_config: bool,
    },
    /// One shot-sampled trial.
    Estimate,
    /// Repeated trials: per-trial CSV and a JSON summary.
    Campaign {
        /// Where to write the summary JSON (default: standard output when
        /// `--out` is given, standard error otherwise).
        #[arg(long, value_name = "PATH")]
        summary: Option<PathBuf>,
    },
    /// Exact ratio over a grid of `u`.
    SweepU {
        /// First grid point.
        #[arg(long, default_value_t = -3.0, allow_negative_numbers = true)]
        u_min: f64,
        /// Last grid point.
        #[arg(long, default_value_t = 3.0, allow_negative_numbers = true)]
        u_max: f64,
        /// Number of grid points.
        #[arg(long, default_value_t = 61)]
        points: usize,
    },
    /// Pauli coefficients of `exp(-beta G_0)` or `exp(beta G_tau)`.
    Decompose {
        /// Which operator.
        #[arg(long, value_enum)]
        which: Which,
    },
}

/// Operator selected by `decompose`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Which {
    /// `exp(-beta G_0)` (`exp(-beta H0)` in the energy basis).
    H0,
    /// `exp(beta G_tau)`.
    Gtau,
}
