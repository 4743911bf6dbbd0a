//! `revlab weights`: the revival weights of `R_n` at time `2πp/q`.

use clap::Args;
use revlab::spectral::revival_weights;
use serde::Serialize;

use crate::error::CliError;
use crate::output::json_string;

#[derive(Args, Debug)]
pub struct WeightsArgs {
    /// Order n of the monomial group.
    #[arg(long)]
    pub order: u32,
    /// Time as `p/q` in units of 2π.
    #[arg(long)]
    pub time: String,
    /// Print JSON instead of text.
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Serialize)]
struct Weight {
    k: u64,
    re: f64,
    im: f64,
}

#[derive(Debug, Serialize)]
struct WeightsReport {
    order: u32,
    p: u64,
    q: u64,
    weights: Vec<Weight>,
    residue_identity_error: f64,
}

fn parse_fraction(s: &str) -> Result<(u64, u64), CliError> {
    let bad = || CliError::Usage(format!("--time: expected p/q with p, q ≥ 1, got `{s}`"));
    let (p, q) = s.trim().split_once('/').ok_or_else(bad)?;
    Ok((
        p.trim().parse().map_err(|_| bad())?,
        q.trim().parse().map_err(|_| bad())?,
    ))
}

pub fn run(args: &WeightsArgs) -> Result<String, CliError> {
    let (p, q) = parse_fraction(&args.time)?;
    let w = revival_weights(args.order, p, q)?;
    let report = WeightsReport {
        order: w.order(),
        p: w.p(),
        q: w.q(),
        weights: w
            .weights()
            .iter()
            .enumerate()
            .map(|(k, c)| Weight {
                k: k as u64,
                re: c.re,
                im: c.im,
            })
            .collect(),
        residue_identity_error: w.residue_identity_error(),
    };
    if args.json {
        return json_string(&report);
    }
    let mut out = format!(
        "revival weights of R_{} at t = 2pi*{}/{}\n",
        report.order, p, q
    );
    for wk in &report.weights {
        out.push_str(&format!("w_{} = {:.16e} {:+.16e}i\n", wk.k, wk.re, wk.im));
    }
    out.push_str(&format!(
        "residue identity max error: {:.3e}\n",
        report.residue_identity_error
    ));
    Ok(out)
}
