//! Command-line front end for `otm-core`: JSON configuration documents,
//! reproducible CSV/JSON reports and a thread-parallel campaign runner.
//!
//! Exit codes: 2 for configuration errors, 3 for numerical failures and 4 for
//! I/O failures.

pub mod cli;
pub mod commands;
pub mod config;
pub mod error;
pub mod format;
pub mod parallel;

use std::io::Write;
use std::path::Path;

pub use cli::{Cli, Command, CommonArgs, Which};
pub use error::CliError;

fn write_to(path: Option<&Path>, text: &str) -> Result<(), CliError> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| CliError::Io(format!("{}: {e}", p.display()))),
        None => std::io::stdout()
            .lock()
            .write_all(text.as_bytes())
            .map_err(|e| CliError::Io(format!("stdout: {e}"))),
    }
}

/// Runs a parsed command line.
pub fn run(cli: &Cli) -> Result<(), CliError> {
    let args = &cli.common;
    let resolved = commands::load(args)?;
    let out = args.out.as_deref();
    match &cli.command {
        Command::Exact { dump_config: true } => write_to(out, &commands::dump_config(&resolved)),
        Command::Exact { dump_config: false } => write_to(out, &commands::exact(&resolved)?),
        Command::Estimate => write_to(out, &commands::estimate(&resolved)?),
        Command::Campaign { summary } => {
            let (csv, json) = commands::campaign(&resolved, args.threads)?;
            write_to(out, &csv)?;
            match (summary, out) {
                (Some(p), _) => write_to(Some(p), &json),
                (None, Some(_)) => write_to(None, &json),
                (None, None) => {
                    eprint!("{json}");
                    Ok(())
                }
            }
        }
        Command::SweepU { u_min, u_max, points } => {
            write_to(out, &commands::sweep_u(&resolved, *u_min, *u_max, *points)?)
        }
        Command::Decompose { which } => write_to(out, &commands::decompose(&resolved, *which)?),
    }
}
