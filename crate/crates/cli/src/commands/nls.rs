//! `revlab nls`: the quasi-periodic cubic NLS by split-step evolution, with
//! a conservation and convergence report.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::time::Instant;

use clap::Args;
use num_complex::Complex64;
use revlab::analysis::parseval_norm;
use revlab::nls::{nls_evolve_quasi, NlsConfig};
use revlab::spectral::{evolve_second_order, synthesize};
use revlab::Time;
use serde::Serialize;

use crate::error::CliError;
use crate::output::{with_extension, write_json, write_profile};
use crate::params::{parse_theta, parse_time, InitialData, ThetaRecord, TimeRecord};
use crate::Progress;

#[derive(Args, Debug)]
pub struct NlsArgs {
    /// θ as `p/q`, a decimal literal, or `sqrt(k)/m`.
    #[arg(long)]
    pub theta: String,
    /// Final time, in units of 2π unless --time-raw is set.
    #[arg(long = "T", default_value = "1/3")]
    pub final_time: String,
    #[arg(long)]
    pub time_raw: bool,
    #[arg(long, default_value_t = 1e-3)]
    pub dt: f64,
    #[arg(long, default_value_t = 256)]
    pub modes: usize,
    /// Grid size N (default 4·J).
    #[arg(long)]
    pub grid: Option<usize>,
    /// Initial data: `box`, `smooth`, or a CSV file with columns x,re,im.
    #[arg(long, default_value = "smooth")]
    pub initial: String,
    /// Scale factor applied to the initial data.
    #[arg(long, default_value_t = 1.0)]
    pub amplitude: f64,
    /// Coefficient κ of the nonlinearity |u|²u.
    #[arg(long, default_value_t = 1.0)]
    pub coupling: f64,
    /// Also estimate the convergence order from runs at 4dt, 2dt, dt against dt/16.
    #[arg(long)]
    pub order_check: bool,
    /// Output prefix; writes PREFIX.csv and PREFIX.json.
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Serialize)]
struct NlsParameters {
    theta: ThetaRecord,
    time: TimeRecord,
    dt: f64,
    steps: usize,
    modes: usize,
    grid: usize,
    initial: String,
    amplitude: f64,
    coupling: f64,
}

#[derive(Debug, Serialize)]
struct OrderCheck {
    step_sizes: Vec<f64>,
    errors: Vec<f64>,
    order: f64,
}

#[derive(Debug, Serialize)]
struct NlsManifest {
    command: &'static str,
    version: &'static str,
    parameters: NlsParameters,
    outputs: Vec<String>,
    norms: BTreeMap<String, f64>,
    residuals: BTreeMap<String, f64>,
    order_check: Option<OrderCheck>,
    duration_seconds: f64,
}

pub fn run(args: &NlsArgs, progress: &Progress) -> Result<(), CliError> {
    let start = Instant::now();
    let theta = parse_theta(&args.theta)?;
    let (time, time_record) = parse_time(&args.final_time, args.time_raw)?;
    let final_time = time.as_seconds();
    if final_time < 0.0 {
        return Err(CliError::Usage("--T must be non-negative".into()));
    }
    let initial = InitialData::parse(&args.initial);
    let u0 = initial
        .coefficients(&theta, args.modes)?
        .scaled(Complex64::new(args.amplitude, 0.0));
    let mut cfg = NlsConfig::new(args.modes, args.dt, final_time);
    cfg.grid = args.grid.unwrap_or(4 * args.modes);
    cfg.theta = Some(theta);
    cfg.coupling = args.coupling;
    cfg.validate()?;
    let steps = cfg.schedule().len();
    progress.note(format!(
        "NLS: {steps} steps of dt = {} on N = {}",
        args.dt, cfg.grid
    ));
    let u = nls_evolve_quasi(&u0, &cfg)?;

    let mut norms = BTreeMap::new();
    let (m0, m1) = (parseval_norm(&u0), parseval_norm(&u));
    norms.insert("initial_l2".to_string(), m0);
    norms.insert("final_l2".to_string(), m1);
    norms.insert(
        "relative_change".to_string(),
        if m0 > 0.0 { (m1 / m0 - 1.0).abs() } else { m1 },
    );
    let mut residuals = BTreeMap::new();
    let linear = evolve_second_order(&u0, [0, 0, 1], &Time::seconds(final_time))?;
    residuals.insert(
        "difference_from_linear_flow".to_string(),
        u.max_difference(&linear)?,
    );

    let order_check = if args.order_check {
        progress.note("running convergence check".to_string());
        let run_at = |dt: f64| -> Result<_, CliError> {
            let mut c = cfg.clone();
            c.dt = dt;
            Ok(nls_evolve_quasi(&u0, &c)?)
        };
        let reference = run_at(args.dt / 16.0)?;
        let step_sizes = vec![4.0 * args.dt, 2.0 * args.dt, args.dt];
        let errors = step_sizes
            .iter()
            .map(|&dt| Ok(run_at(dt)?.max_difference(&reference)?))
            .collect::<Result<Vec<f64>, CliError>>()?;
        let order = (errors[0] / errors[2]).log2() / 2.0;
        Some(OrderCheck {
            step_sizes,
            errors,
            order,
        })
    } else {
        None
    };

    let csv = with_extension(&args.out, "csv");
    write_profile(&csv, &synthesize(&u, cfg.grid)?)?;
    let manifest = NlsManifest {
        command: "nls",
        version: revlab::VERSION,
        parameters: NlsParameters {
            theta: ThetaRecord::from(&theta),
            time: time_record,
            dt: args.dt,
            steps,
            modes: args.modes,
            grid: cfg.grid,
            initial: initial.describe(),
            amplitude: args.amplitude,
            coupling: args.coupling,
        },
        outputs: vec![csv.display().to_string()],
        norms,
        residuals,
        order_check,
        duration_seconds: start.elapsed().as_secs_f64(),
    };
    write_json(&with_extension(&args.out, "json"), &manifest)?;
    Ok(())
}
