//! `revlab evolve`: one profile plus its manifest.

use std::path::PathBuf;
use std::time::Instant;

use clap::Args;

use super::solve;
use crate::error::CliError;
use crate::output::{with_extension, write_json, write_profile, RunManifest};
use crate::params::ProblemArgs;
use crate::Progress;

#[derive(Args, Debug)]
pub struct EvolveArgs {
    #[command(flatten)]
    pub problem: ProblemArgs,
    /// Output prefix; writes PREFIX.csv and PREFIX.json.
    #[arg(long)]
    pub out: PathBuf,
}

pub fn run(args: &EvolveArgs, progress: &Progress) -> Result<(), CliError> {
    let start = Instant::now();
    let problem = args.problem.resolve()?;
    progress.note(format!(
        "evolving P = {:?}, theta = {}, t = {} (J = {}, N = {}, {:?})",
        problem.polynomial.alpha(),
        problem.theta,
        problem.time,
        problem.modes,
        problem.grid,
        problem.method
    ));
    let solution = solve(&problem)?;
    let csv = with_extension(&args.out, "csv");
    let json = with_extension(&args.out, "json");
    write_profile(&csv, &solution.profile)?;
    let manifest = RunManifest {
        command: "evolve".to_string(),
        version: revlab::VERSION,
        parameters: problem.parameters(),
        outputs: vec![csv.display().to_string()],
        norms: solution.norms,
        residuals: solution.residuals,
        duration_seconds: start.elapsed().as_secs_f64(),
    };
    write_json(&json, &manifest)?;
    progress.note(format!("wrote {} and {}", csv.display(), json.display()));
    Ok(())
}
