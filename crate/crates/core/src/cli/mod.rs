//! Command-line front end: JSON configuration in, CSV or JSON tables out.
//!
//! Exit codes: 0 success, 2 configuration error, 3 numerical failure,
//! 4 a `--check` threshold was missed.

pub mod commands;
pub mod config;
pub mod output;

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

pub use commands::{execute, Command};
pub use config::{Format, RunConfig};
pub use output::{Cell, Record, Report};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error("numerical failure: {0}")]
    Numerical(crate::Error),
    #[error("check failed")]
    CheckFailed,
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Config(_) => 2,
            CliError::Numerical(_) => 3,
            CliError::CheckFailed => 4,
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "graphene-dispersion",
    version,
    about = "Response functions of graphene and dispersion-relation checks"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Subcommands,
}

#[derive(Debug, Subcommand)]
pub enum Subcommands {
    /// Tabulate ε on the real and/or imaginary axis.
    Eval(RunArgs),
    /// Reconstruct ε on the real axis from dispersion relations.
    Kk(RunArgs),
    /// Reconstruct ε(iξ) from the imaginary-axis dispersion relation.
    ImagAxis(RunArgs),
    /// Contour pieces and convergence fits for the residue identity.
    Contour(RunArgs),
}

#[derive(Debug, Args)]
pub struct RunArgs {
    /// JSON run configuration.
    #[arg(long)]
    pub config: PathBuf,
    /// Output file; standard output when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Exit with status 4 if any threshold in the configuration is missed.
    #[arg(long)]
    pub check: bool,
}

impl Subcommands {
    fn split(&self) -> (Command, &RunArgs) {
        match self {
            Subcommands::Eval(a) => (Command::Eval, a),
            Subcommands::Kk(a) => (Command::Kk, a),
            Subcommands::ImagAxis(a) => (Command::ImagAxis, a),
            Subcommands::Contour(a) => (Command::Contour, a),
        }
    }
}

pub fn load_config(path: &std::path::Path) -> Result<RunConfig, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
    RunConfig::from_json(&text)
}

/// Run one invocation; summaries go to standard error.
pub fn run(cli: &Cli) -> Result<Report, CliError> {
    let (command, args) = cli.command.split();
    let config = load_config(&args.config)?;
    let report = execute(command, &config)?;
    let format = args.format.or(config.format).unwrap_or_default();
    let text = report.render(format);
    match args.out.as_ref().or(config.output.as_ref()) {
        Some(path) => fs::write(path, text)
            .map_err(|e| CliError::Config(format!("cannot write {}: {e}", path.display())))?,
        None => {
            let mut stdout = std::io::stdout().lock();
            let _ = stdout.write_all(text.as_bytes());
            let _ = stdout.flush();
        }
    }
    eprint!("{}", report.summary_lines());
    if args.check && !report.passed {
        return Err(CliError::CheckFailed);
    }
    Ok(report)
}

/// Entry point of the binary.
pub fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(_) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
