//! Batch front-end: `tables`, `gatecheck` and `simulate`.

mod commands;
mod config;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand};

pub use commands::{cmd_gatecheck, cmd_simulate, cmd_tables, CheckRow, GateReport, Outcome};
pub use config::{
    FieldConfig, HamiltonianConfig, InteractionConfig, LatticeConfig, OutputFormat, RunConfig,
    DEFAULT_SPACING,
};

use crate::error::Error;

pub const EXIT_OK: i32 = 0;
/// A gate check ran but at least one residual exceeded its tolerance.
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_REGIME: i32 = 3;
pub const EXIT_RESOURCE: i32 = 4;

#[derive(Debug, Parser)]
#[command(
    name = "diatomic",
    version,
    about = "Diatomic-molecule qubit lattice simulator"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, clap::Args)]
pub struct CommonArgs {
    /// TOML run configuration; defaults apply when omitted.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Output directory, created if missing.
    #[arg(long, default_value = ".")]
    pub out: PathBuf,
    /// Overrides `format` from the config.
    #[arg(long, value_enum)]
    pub format: Option<OutputFormat>,
    /// Overrides `seed` from the config.
    #[arg(long)]
    pub seed: Option<u64>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Addressing-frequency and CNOT-rate tables with the consistency check.
    Tables(CommonArgs),
    /// CNOT, Bell-preparation and entangling-phase verification.
    Gatecheck(CommonArgs),
    /// Runs the configured pulse schedule and writes the final state.
    Simulate(CommonArgs),
}

/// Process exit code for an error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Regime(_) => EXIT_REGIME,
        Error::ResourceLimit(_) => EXIT_RESOURCE,
        _ => EXIT_INPUT,
    }
}

impl CommonArgs {
    fn config(&self) -> crate::Result<RunConfig> {
        let mut config = match &self.config {
            Some(p) => RunConfig::load(p)?,
            None => RunConfig::default(),
        };
        if let Some(f) = self.format {
            config.format = f;
        }
        if self.seed.is_some() {
            config.seed = self.seed;
        }
        Ok(config)
    }
}

/// Parses `args` (program name first), runs the command and returns the exit
/// code. Progress goes to `out`, diagnostics to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK {
                write!(out, "{text}")
            } else {
                write!(err, "{text}")
            };
            return code;
        }
    };
    let result = match &cli.command {
        Command::Tables(a) => a
            .config()
            .and_then(|c| cmd_tables(&c, &a.out))
            .map(|o| (o, true)),
        Command::Gatecheck(a) => a.config().and_then(|c| cmd_gatecheck(&c, &a.out)).map(|o| {
            let ok = o.report.as_ref().is_none_or(|r| r.passed());
            (o, ok)
        }),
        Command::Simulate(a) => a
            .config()
            .and_then(|c| cmd_simulate(&c, &a.out))
            .map(|o| (o, true)),
    };
    match result {
        Ok((outcome, ok)) => {
            for line in &outcome.lines {
                let _ = writeln!(out, "{line}");
            }
            for path in &outcome.files {
                let _ = writeln!(out, "wrote {}", path.display());
            }
            if ok {
                EXIT_OK
            } else {
                EXIT_CHECK_FAILED
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}
