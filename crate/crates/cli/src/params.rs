//! Shared problem flags, their parsing, and the resolved parameter record
//! written into manifests.

use std::path::{Path, PathBuf};

use clap::{Args, ValueEnum};
use num_complex::Complex64;
use revlab::numbers::{ThetaKind, ThetaValue};
use revlab::spectral::{analyze, box_coefficients_closed_form, ProfileMeta};
use revlab::{
    Basis, DispersionPolynomial, GridProfile, NumbersError, Rational, SpectralState, Time,
};
use serde::Serialize;

use crate::error::CliError;

/// How the quasi-periodic solution is computed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    /// Diagonal multiplier `e^{-iP(j+θ)t}` in the quasi basis.
    Direct,
    /// Periodic evolution with `A(λ)`, mapped back through the correspondence.
    Correspondence,
    /// Product of monomial groups, rational factors applied as revivals.
    Composition,
}

/// Dispersion relation, θ, time and discretisation.
#[derive(Args, Clone, Debug)]
pub struct ProblemArgs {
    /// Polynomial coefficients α_0,…,α_n of P(λ) = Σ α_m λ^m.
    #[arg(long = "P", value_name = "a0,a1,...,an", conflicts_with = "monomial")]
    pub polynomial: Option<String>,
    /// Use P(λ) = λ^n.
    #[arg(long, value_name = "n")]
    pub monomial: Option<u32>,
    /// θ as `p/q`, a decimal literal, or `sqrt(k)/m`.
    #[arg(long)]
    pub theta: Option<String>,
    /// Time as `p/q` or a decimal, in units of 2π unless --time-raw is set.
    #[arg(long, allow_hyphen_values = true)]
    pub time: Option<String>,
    /// Interpret --time in the equation's own units.
    #[arg(long)]
    pub time_raw: bool,
    /// Number of modes J (coefficients j = -J..=J).
    #[arg(long, default_value_t = 1024)]
    pub modes: usize,
    /// Grid size N (default 4·J).
    #[arg(long)]
    pub grid: Option<usize>,
    /// Initial data: `box`, `smooth`, or a CSV file with columns x,re,im.
    #[arg(long, default_value = "box")]
    pub initial: String,
    #[arg(long, value_enum, default_value_t = Method::Direct)]
    pub method: Method,
}

/// The θ record of a manifest.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ThetaRecord {
    pub descriptor: String,
    pub kind: &'static str,
    pub value: f64,
}

impl From<&ThetaValue> for ThetaRecord {
    fn from(theta: &ThetaValue) -> Self {
        let kind = match theta.kind() {
            ThetaKind::Rational(_) => "rational",
            ThetaKind::Sqrt { .. } => "sqrt",
            ThetaKind::Decimal(_) => "decimal",
        };
        ThetaRecord {
            descriptor: theta.to_string(),
            kind,
            value: theta.value(),
        }
    }
}

/// The time record of a manifest.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TimeRecord {
    pub input: String,
    pub units: &'static str,
    /// Reduced `p/q` (in the stated units) when the input was a fraction.
    pub fraction: Option<String>,
    pub seconds: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ResolvedParameters {
    pub polynomial: Vec<i64>,
    pub theta: ThetaRecord,
    pub time: TimeRecord,
    pub modes: usize,
    pub grid: usize,
    pub method: Option<Method>,
    pub initial: String,
    pub seed: Option<u64>,
}

/// A fully parsed problem.
#[derive(Clone, Debug)]
pub struct Problem {
    pub polynomial: DispersionPolynomial,
    pub theta: ThetaValue,
    pub time: Time,
    pub time_record: TimeRecord,
    pub modes: usize,
    pub grid: usize,
    pub initial: InitialData,
    pub method: Method,
}

#[derive(Clone, Debug, PartialEq)]
pub enum InitialData {
    Box,
    Smooth,
    File(PathBuf),
}

impl InitialData {
    pub fn parse(s: &str) -> Self {
        match s {
            "box" => InitialData::Box,
            "smooth" => InitialData::Smooth,
            path => InitialData::File(PathBuf::from(path)),
        }
    }

    pub fn describe(&self) -> String {
        match self {
            InitialData::Box => "box".to_string(),
            InitialData::Smooth => "smooth".to_string(),
            InitialData::File(p) => p.display().to_string(),
        }
    }

    /// Quasi-basis coefficients of the initial data.
    pub fn coefficients(
        &self,
        theta: &ThetaValue,
        modes: usize,
    ) -> Result<SpectralState, CliError> {
        match self {
            InitialData::Box => Ok(box_coefficients_closed_form(theta, modes)),
            InitialData::Smooth => Ok(smooth_coefficients(modes, Basis::Quasi(*theta))),
            InitialData::File(path) => {
                let profile = read_profile(path)?;
                Ok(analyze(&profile, modes, Basis::Quasi(*theta))?)
            }
        }
    }
}

/// Band-limited smooth data `(1 + 0.4ij) e^{-|j|}` for `|j| ≤ 6`.
pub fn smooth_coefficients(modes: usize, basis: Basis) -> SpectralState {
    SpectralState::from_fn(modes, basis, |j| {
        if j.abs() > 6 {
            Complex64::new(0.0, 0.0)
        } else {
            Complex64::new(1.0, 0.4 * j as f64) * (-(j.abs() as f64)).exp()
        }
    })
}

/// Reads an `x,re,im` profile on the uniform grid `x_k = 2πk/N`.
pub fn read_profile(path: &Path) -> Result<GridProfile, CliError> {
    let csv_err = |source| CliError::Csv {
        path: path.to_path_buf(),
        source,
    };
    let bad = |message: String| CliError::BadInput {
        path: path.to_path_buf(),
        message,
    };
    let mut reader = csv::Reader::from_path(path).map_err(csv_err)?;
    let headers = reader.headers().map_err(csv_err)?.clone();
    if headers.iter().map(str::trim).collect::<Vec<_>>() != ["x", "re", "im"] {
        return Err(bad(format!(
            "expected header x,re,im, found {}",
            headers.as_slice()
        )));
    }
    let mut samples = Vec::new();
    for (row, record) in reader.records().enumerate() {
        let record = record.map_err(csv_err)?;
        let field = |i: usize| -> Result<f64, CliError> {
            record
                .get(i)
                .and_then(|s| s.trim().parse().ok())
                .ok_or_else(|| bad(format!("row {}: column {} is not a number", row + 1, i + 1)))
        };
        field(0)?;
        samples.push(Complex64::new(field(1)?, field(2)?));
    }
    if samples.is_empty() {
        return Err(bad("no data rows".to_string()));
    }
    Ok(GridProfile::new(
        samples,
        ProfileMeta {
            method: "file".to_string(),
            ..ProfileMeta::default()
        },
    ))
}

pub fn parse_polynomial(s: &str) -> Result<DispersionPolynomial, CliError> {
    let alpha = s
        .split(',')
        .map(|c| {
            c.trim()
                .parse::<i64>()
                .map_err(|_| CliError::Usage(format!("--P: `{c}` is not an integer coefficient")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(DispersionPolynomial::new(alpha)?)
}

/// Parses `p/q` or a decimal; `raw` selects the equation's own time units
/// instead of multiples of 2π. Fractions are reduced.
pub fn parse_time(s: &str, raw: bool) -> Result<(Time, TimeRecord), CliError> {
    let s = s.trim();
    let units = if raw { "raw" } else { "turns-of-2pi" };
    let (time, fraction) = if let Some((p, q)) = s.split_once('/') {
        let p: i128 = p
            .trim()
            .parse()
            .map_err(|_| NumbersError::Parse(s.to_string()))?;
        let q: i128 = q
            .trim()
            .parse()
            .map_err(|_| NumbersError::Parse(s.to_string()))?;
        let r = Rational::new(p, q)?;
        let t = if raw {
            Time::seconds_precise(r.to_twofloat())
        } else {
            Time::exact_turns(r)
        };
        (t, Some(r.to_string()))
    } else {
        let x: f64 = s.parse().map_err(|_| NumbersError::Parse(s.to_string()))?;
        if !x.is_finite() {
            return Err(NumbersError::Parse(s.to_string()).into());
        }
        (
            if raw {
                Time::seconds(x)
            } else {
                Time::turns(x)
            },
            None,
        )
    };
    let record = TimeRecord {
        input: s.to_string(),
        units,
        fraction,
        seconds: time.as_seconds(),
    };
    Ok((time, record))
}

pub fn parse_theta(s: &str) -> Result<ThetaValue, CliError> {
    Ok(s.parse::<ThetaValue>()?)
}

fn required<'a>(value: &'a Option<String>, flag: &str) -> Result<&'a str, CliError> {
    value
        .as_deref()
        .ok_or_else(|| CliError::Usage(format!("missing required flag {flag}")))
}

impl ProblemArgs {
    pub fn resolve(&self) -> Result<Problem, CliError> {
        let polynomial = match (&self.polynomial, self.monomial) {
            (Some(s), None) => parse_polynomial(s)?,
            (None, Some(n)) => DispersionPolynomial::monomial(n)?,
            _ => {
                return Err(CliError::Usage(
                    "give exactly one of --P or --monomial".into(),
                ))
            }
        };
        if polynomial.order() < 2 {
            return Err(NumbersError::OrderTooLow {
                order: polynomial.order(),
                min: 2,
            }
            .into());
        }
        let theta = parse_theta(required(&self.theta, "--theta")?)?;
        let (time, time_record) = parse_time(required(&self.time, "--time")?, self.time_raw)?;
        if self.modes == 0 {
            return Err(CliError::Usage("--modes must be positive".into()));
        }
        Ok(Problem {
            polynomial,
            theta,
            time,
            time_record,
            modes: self.modes,
            grid: self.grid.unwrap_or(4 * self.modes),
            initial: InitialData::parse(&self.initial),
            method: self.method,
        })
    }
}

impl Problem {
    pub fn parameters(&self) -> ResolvedParameters {
        ResolvedParameters {
            polynomial: self.polynomial.alpha().to_vec(),
            theta: ThetaRecord::from(&self.theta),
            time: self.time_record.clone(),
            modes: self.modes,
            grid: self.grid,
            method: Some(self.method),
            initial: self.initial.describe(),
            seed: None,
        }
    }
}
