//! `revlab`: evolve quasi-periodic dispersive problems, reproduce the
//! revival/fractalisation figures, and run the identity suites.
//!
//! Profiles are written as `x,re,im` CSV with a JSON manifest alongside.
//! `REVLAB_THREADS` caps the worker threads used for independent panels.

mod commands;
mod error;
mod output;
mod params;

use std::process::ExitCode;

use clap::{Parser, Subcommand};

use commands::{evolve, figures, fracdim, nls, verify, weights};
use error::CliError;

#[derive(Parser, Debug)]
#[command(name = "revlab", version, about)]
struct Cli {
    /// Suppress progress messages on stderr.
    #[arg(long, global = true)]
    quiet: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evolve initial data and write the profile and its manifest.
    Evolve(evolve::EvolveArgs),
    /// Print the revival weights of R_n at time 2πp/q.
    Weights(weights::WeightsArgs),
    /// Run identity suites; exit status 0 iff every check passes.
    Verify(verify::VerifyArgs),
    /// Box-counting dimension of an evolved profile or a calibration curve.
    Fracdim(fracdim::FracdimArgs),
    /// Write the figure panels and a combined manifest.
    Figures(figures::FiguresArgs),
    /// Split-step evolution of the quasi-periodic cubic NLS.
    Nls(nls::NlsArgs),
}

/// Progress messages on stderr, unless silenced.
pub struct Progress {
    quiet: bool,
}

impl Progress {
    pub fn note(&self, message: String) {
        if !self.quiet {
            eprintln!("revlab: {message}");
        }
    }
}

fn configure_threads() -> Result<(), CliError> {
    if let Ok(value) = std::env::var("REVLAB_THREADS") {
        let threads: usize = value
            .trim()
            .parse()
            .map_err(|_| CliError::Usage(format!("REVLAB_THREADS: `{value}` is not a count")))?;
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()?;
    }
    Ok(())
}

fn run(cli: &Cli) -> Result<ExitCode, CliError> {
    configure_threads()?;
    let progress = Progress { quiet: cli.quiet };
    match &cli.command {
        Command::Evolve(args) => evolve::run(args, &progress)?,
        Command::Weights(args) => print!("{}", weights::run(args)?),
        Command::Verify(args) => {
            let report = verify::run(args, &progress)?;
            print!("{}", output::json_string(&report)?);
            if !report.pass {
                for c in report.checks.iter().filter(|c| !c.pass) {
                    progress.note(format!(
                        "FAIL {} [{}]: {:e} (tolerance {:e})",
                        c.identity, c.parameters, c.max_error, c.tolerance
                    ));
                }
                return Ok(ExitCode::FAILURE);
            }
        }
        Command::Fracdim(args) => print!("{}", fracdim::run(args, &progress)?),
        Command::Figures(args) => figures::run(args, &progress)?,
        Command::Nls(args) => nls::run(args, &progress)?,
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(CliError::Usage(message)) => {
            eprintln!("revlab: {message}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("revlab: error: {e}");
            ExitCode::FAILURE
        }
    }
}
