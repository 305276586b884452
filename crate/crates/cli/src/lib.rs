//! Command-line front end: bench-script parsing and subcommand dispatch.
//!
//! Exit codes: 0 on success, 1 for usage errors and validation
//! diagnostics, 2 for internal failures.

pub mod commands;
pub mod dsl;
pub mod format;

use std::ffi::OsString;
use std::io::Write;

use clap::error::ErrorKind;
use clap::Parser;
use thiserror::Error;

pub use commands::{execute, Command, Report};
pub use dsl::{parse_bench, parse_script, print_bench, BenchScript, Diagnostic, Span};

pub const SEED_ENV: &str = "RELATIONAL_QM_SEED";

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Validation(String),
    #[error("internal error: {0}")]
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Validation(_) => 1,
            CliError::Internal(_) => 2,
        }
    }
}

#[derive(Parser, Debug)]
#[command(name = "relational-qm", version, about = "Symmetry, contraction, interferometer and sampling experiments")]
pub struct Cli {
    /// Emit JSON.
    #[arg(long, global = true, conflicts_with = "csv")]
    pub json: bool,
    /// Emit CSV (raw events for stochastic commands).
    #[arg(long, global = true)]
    pub csv: bool,
    /// Seed for stochastic commands.
    #[arg(long, global = true, env = SEED_ENV, default_value_t = 1)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

/// Parses `args` (program name first), runs the command and writes the
/// report. Returns the process exit code.
pub fn dispatch<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{rendered}");
                    0
                }
                _ => {
                    let _ = write!(err, "{rendered}");
                    1
                }
            };
        }
    };
    match execute(&cli.command, cli.seed, cli.csv) {
        Ok(report) => {
            for w in &report.warnings {
                let _ = writeln!(err, "warning: {w}");
            }
            let body = if cli.json {
                match serde_json::to_string_pretty(&report.json) {
                    Ok(s) => s + "\n",
                    Err(e) => {
                        let _ = writeln!(err, "internal error: {e}");
                        return 2;
                    }
                }
            } else if cli.csv {
                report.csv.to_csv()
            } else {
                report.text
            };
            if out.write_all(body.as_bytes()).is_err() {
                return 2;
            }
            0
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

/// Runs `dispatch` and captures both streams.
pub fn run_captured<I, T>(args: I) -> (i32, String, String)
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = dispatch(args, &mut out, &mut err);
    (
        code,
        String::from_utf8_lossy(&out).into_owned(),
        String::from_utf8_lossy(&err).into_owned(),
    )
}
