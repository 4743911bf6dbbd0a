//! Uniform grids on `[0, 2π)` and the DFT maps between samples and
//! coefficients.

use std::f64::consts::TAU;

use num_complex::Complex64;
use rustfft::FftPlanner;
use serde::{Deserialize, Serialize};
use twofloat::TwoFloat;

use super::{Basis, SpectralError, SpectralState};
use crate::numbers::{reduce_turns, ThetaValue, Time};

/// Where a profile came from. Every field is optional so that profiles read
/// back from disk can carry partial provenance.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct ProfileMeta {
    pub polynomial: Option<Vec<i64>>,
    pub theta: Option<String>,
    pub time: Option<String>,
    pub modes: Option<usize>,
    pub method: String,
}

/// `N` complex samples at `x_k = 2πk/N`.
#[derive(Clone, Debug, PartialEq)]
pub struct GridProfile {
    pub samples: Vec<Complex64>,
    pub meta: ProfileMeta,
}

impl GridProfile {
    pub fn new(samples: Vec<Complex64>, meta: ProfileMeta) -> Self {
        GridProfile { samples, meta }
    }

    pub fn from_fn(n: usize, method: &str, f: impl Fn(f64) -> Complex64) -> Self {
        GridProfile {
            samples: (0..n).map(|k| f(grid_point(k, n))).collect(),
            meta: ProfileMeta {
                method: method.to_string(),
                ..ProfileMeta::default()
            },
        }
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn x(&self, k: usize) -> f64 {
        grid_point(k, self.samples.len())
    }

    pub fn spacing(&self) -> f64 {
        TAU / self.samples.len() as f64
    }

    pub fn max_difference(&self, other: &GridProfile) -> Result<f64, SpectralError> {
        if self.len() != other.len() {
            return Err(SpectralError::ShapeMismatch {
                left: self.len(),
                right: other.len(),
            });
        }
        Ok(self
            .samples
            .iter()
            .zip(&other.samples)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }

    /// Every `stride`-th sample, as a profile on the coarser grid.
    pub fn subsample(&self, stride: usize) -> GridProfile {
        GridProfile {
            samples: self.samples.iter().step_by(stride).copied().collect(),
            meta: self.meta.clone(),
        }
    }
}

pub fn grid_point(k: usize, n: usize) -> f64 {
    TAU * k as f64 / n as f64
}

/// `e^{iθ x_k}` for `x_k = 2πk/N`, with the phase reduced in extended precision.
fn modulation(theta: &ThetaValue, k: usize, n: usize) -> Complex64 {
    let turns = crate::numbers::div_dd(
        theta.precise() * TwoFloat::from(k as f64),
        TwoFloat::from(n as f64),
    );
    let angle = TAU * reduce_turns(turns);
    Complex64::new(angle.cos(), angle.sin())
}

/// Coefficients `c_j ≈ ⟨f, basis_j⟩` by DFT quadrature; exact for data
/// band-limited to `|j| ≤ J` with `N ≥ 2J+1`.
pub fn analyze(
    profile: &GridProfile,
    modes: usize,
    basis: Basis,
) -> Result<SpectralState, SpectralError> {
    let n = profile.len();
    if n < 2 * modes + 1 {
        return Err(SpectralError::GridTooSmall { grid: n, modes });
    }
    let mut buf: Vec<Complex64> = match &basis {
        Basis::Periodic => profile.samples.clone(),
        Basis::Quasi(theta) => profile
            .samples
            .iter()
            .enumerate()
            .map(|(k, &s)| s * modulation(theta, k, n).conj())
            .collect(),
    };
    FftPlanner::new().plan_fft_forward(n).process(&mut buf);
    let scale = (TAU).sqrt() / n as f64;
    let n_i = n as i64;
    Ok(SpectralState::from_fn(modes, basis, |j| {
        buf[j.rem_euclid(n_i) as usize] * scale
    }))
}

/// Samples of `Σ_j c_j basis_j(x_k)` on an `N`-point grid.
pub fn synthesize(state: &SpectralState, n: usize) -> Result<GridProfile, SpectralError> {
    let modes = state.modes();
    if n < 2 * modes + 1 {
        return Err(SpectralError::GridTooSmall { grid: n, modes });
    }
    let mut buf = vec![Complex64::new(0.0, 0.0); n];
    let n_i = n as i64;
    for (j, c) in state.iter() {
        buf[j.rem_euclid(n_i) as usize] = c;
    }
    FftPlanner::new().plan_fft_inverse(n).process(&mut buf);
    let scale = 1.0 / (TAU).sqrt();
    let samples = match state.basis() {
        Basis::Periodic => buf.into_iter().map(|s| s * scale).collect(),
        Basis::Quasi(theta) => buf
            .into_iter()
            .enumerate()
            .map(|(k, s)| s * scale * modulation(theta, k, n))
            .collect(),
    };
    Ok(GridProfile {
        samples,
        meta: ProfileMeta {
            theta: state.basis().theta().map(ToString::to_string),
            modes: Some(modes),
            method: "synthesis".to_string(),
            ..ProfileMeta::default()
        },
    })
}

/// Direct evaluation of the truncated series at `x = 2π·turns`, with every
/// phase reduced in extended precision (so `turns = 1` is exactly `x = 2π`).
pub fn evaluate_at_turns(state: &SpectralState, turns: TwoFloat) -> Complex64 {
    let shift = state
        .basis()
        .theta()
        .map(|t| t.precise())
        .unwrap_or(TwoFloat::from(0.0));
    let sum: Complex64 = state
        .iter()
        .map(|(j, c)| {
            let angle = TAU * reduce_turns((TwoFloat::from(j) + shift) * turns);
            c * Complex64::new(angle.cos(), angle.sin())
        })
        .sum();
    sum / (TAU).sqrt()
}

pub fn evaluate_at(state: &SpectralState, x: f64) -> Complex64 {
    evaluate_at_turns(state, Time::seconds(x).as_turns())
}
