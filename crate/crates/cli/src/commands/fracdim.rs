//! `revlab fracdim`: box-counting dimension of an evolved profile, or of a
//! calibration curve with known dimension.

use std::f64::consts::TAU;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, ValueEnum};
use revlab::analysis::{box_dimension, BoxCountReport, Part};
use revlab::GridProfile;
use serde::Serialize;

use super::solve;
use crate::error::CliError;
use crate::output::{json_string, write_atomic};
use crate::params::{ProblemArgs, ResolvedParameters};
use crate::Progress;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Calibration {
    /// Weierstrass function Σ 2^{-k/2} cos(2^k x), dimension 3/2.
    Weierstrass,
    /// Straight line, dimension 1.
    Line,
}

#[derive(Args, Debug)]
pub struct FracdimArgs {
    #[command(flatten)]
    pub problem: ProblemArgs,
    #[arg(long, value_enum, default_value = "re")]
    pub part: PartArg,
    /// Measure a calibration curve instead of an evolved profile.
    #[arg(long, value_enum)]
    pub calibrate: Option<Calibration>,
    /// Also write the report to this file.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum PartArg {
    Re,
    Im,
    Abs,
}

impl From<PartArg> for Part {
    fn from(p: PartArg) -> Part {
        match p {
            PartArg::Re => Part::Re,
            PartArg::Im => Part::Im,
            PartArg::Abs => Part::Abs,
        }
    }
}

#[derive(Debug, Serialize)]
struct FracdimReport {
    command: &'static str,
    version: &'static str,
    parameters: Option<ResolvedParameters>,
    calibration: Option<Calibration>,
    grid: usize,
    part: Part,
    report: BoxCountReport,
    duration_seconds: f64,
}

fn weierstrass(x: f64) -> f64 {
    (0..=14)
        .map(|k| 2f64.powf(-f64::from(k) / 2.0) * (2f64.powi(k) * x).cos())
        .sum()
}

pub fn run(args: &FracdimArgs, progress: &Progress) -> Result<String, CliError> {
    let start = Instant::now();
    let part = Part::from(args.part);
    let (profile, parameters) = match args.calibrate {
        Some(Calibration::Weierstrass) => {
            let n = args.problem.grid.unwrap_or(1 << 16);
            (
                GridProfile::from_fn(n, "weierstrass", |x| weierstrass(x).into()),
                None,
            )
        }
        Some(Calibration::Line) => {
            let n = args.problem.grid.unwrap_or(1 << 14);
            (GridProfile::from_fn(n, "line", |x| (x / TAU).into()), None)
        }
        None => {
            let problem = args.problem.resolve()?;
            progress.note(format!(
                "evolving for box counting (J = {}, N = {})",
                problem.modes, problem.grid
            ));
            (solve(&problem)?.profile, Some(problem.parameters()))
        }
    };
    let report = box_dimension(&profile, part)?;
    progress.note(format!(
        "dimension {:.4} (r² = {:.5})",
        report.dimension, report.r_squared
    ));
    let out = json_string(&FracdimReport {
        command: "fracdim",
        version: revlab::VERSION,
        parameters,
        calibration: args.calibrate,
        grid: profile.len(),
        part,
        report,
        duration_seconds: start.elapsed().as_secs_f64(),
    })?;
    if let Some(path) = &args.out {
        write_atomic(path, out.as_bytes())?;
    }
    Ok(out)
}
