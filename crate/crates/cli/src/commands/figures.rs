//! `revlab figures`: the initial box and the eight evolution panels
//! (`n ∈ {3,4,5}` at θ = 1/4 and θ = √2/4, and `n = 2` at both θ), all at
//! `t = 2π/3`, written as one CSV per panel plus a combined manifest.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, ValueEnum};
use rayon::prelude::*;
use revlab::spectral::box_profile;
use serde::Serialize;

use super::solve;
use crate::error::CliError;
use crate::output::{write_json, write_profile};
use crate::params::{InitialData, Method, Problem, ResolvedParameters};
use crate::Progress;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Which {
    #[value(name = "1")]
    One,
    #[value(name = "2")]
    Two,
    #[value(name = "3")]
    Three,
    #[value(name = "4")]
    Four,
    All,
}

#[derive(Args, Debug)]
pub struct FiguresArgs {
    #[arg(long, value_enum, default_value = "all")]
    pub which: Which,
    #[arg(long)]
    pub outdir: PathBuf,
    /// Number of modes J.
    #[arg(long, default_value_t = 1024)]
    pub modes: usize,
    /// Grid size N (default 4·J).
    #[arg(long)]
    pub grid: Option<usize>,
}

#[derive(Debug, Serialize)]
struct Panel {
    figure: u8,
    file: String,
    parameters: Option<ResolvedParameters>,
    norms: BTreeMap<String, f64>,
    residuals: BTreeMap<String, f64>,
}

#[derive(Debug, Serialize)]
struct FiguresManifest {
    command: &'static str,
    version: &'static str,
    panels: Vec<Panel>,
    duration_seconds: f64,
}

/// `(figure, n, θ)` for every evolution panel.
fn panel_specs(which: Which) -> Vec<(u8, u32, &'static str)> {
    let mut specs = Vec::new();
    let wants = |f: u8| {
        which == Which::All
            || matches!(
                (which, f),
                (Which::Two, 2) | (Which::Three, 3) | (Which::Four, 4)
            )
    };
    for (figure, theta) in [(2u8, "1/4"), (3, "sqrt(2)/4")] {
        if wants(figure) {
            specs.extend([3, 4, 5].map(|n| (figure, n, theta)));
        }
    }
    if wants(4) {
        specs.extend([(4, 2, "1/4"), (4, 2, "sqrt(2)/4")]);
    }
    specs
}

fn file_name(figure: u8, n: u32, theta: &str) -> String {
    let tag = if theta == "1/4" {
        "theta-1_4"
    } else {
        "theta-sqrt2_4"
    };
    format!("fig{figure}_n{n}_{tag}.csv")
}

fn evolution_panel(
    args: &FiguresArgs,
    outdir: &Path,
    (figure, n, theta): (u8, u32, &'static str),
) -> Result<Panel, CliError> {
    let (time, time_record) = crate::params::parse_time("1/3", false)?;
    let problem = Problem {
        polynomial: revlab::DispersionPolynomial::monomial(n)?,
        theta: crate::params::parse_theta(theta)?,
        time,
        time_record,
        modes: args.modes,
        grid: args.grid.unwrap_or(4 * args.modes),
        initial: InitialData::Box,
        method: Method::Direct,
    };
    let solution = solve(&problem)?;
    let file = file_name(figure, n, theta);
    write_profile(&outdir.join(&file), &solution.profile)?;
    Ok(Panel {
        figure,
        file,
        parameters: Some(problem.parameters()),
        norms: solution.norms,
        residuals: solution.residuals,
    })
}

pub fn run(args: &FiguresArgs, progress: &Progress) -> Result<(), CliError> {
    let start = Instant::now();
    if args.modes == 0 {
        return Err(CliError::Usage("--modes must be positive".into()));
    }
    std::fs::create_dir_all(&args.outdir).map_err(|e| CliError::io(&args.outdir, e))?;
    let mut panels = Vec::new();
    if matches!(args.which, Which::One | Which::All) {
        let file = "fig1_initial.csv".to_string();
        let grid = args.grid.unwrap_or(4 * args.modes);
        write_profile(&args.outdir.join(&file), &box_profile(grid))?;
        panels.push(Panel {
            figure: 1,
            file,
            parameters: None,
            norms: BTreeMap::new(),
            residuals: BTreeMap::new(),
        });
    }
    let specs = panel_specs(args.which);
    progress.note(format!("computing {} evolution panels", specs.len()));
    let evolved: Vec<Panel> = specs
        .into_par_iter()
        .map(|spec| evolution_panel(args, &args.outdir, spec))
        .collect::<Result<_, _>>()?;
    panels.extend(evolved);
    let manifest = FiguresManifest {
        command: "figures",
        version: revlab::VERSION,
        panels,
        duration_seconds: start.elapsed().as_secs_f64(),
    };
    write_json(&args.outdir.join("figures.json"), &manifest)?;
    progress.note(format!(
        "wrote {} panels to {}",
        manifest.panels.len(),
        args.outdir.display()
    ));
    Ok(())
}
