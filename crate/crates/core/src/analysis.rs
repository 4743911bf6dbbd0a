//! Observables that separate revival (piecewise-constant) profiles from
//! fractalised (continuous, rough) ones: norms, total variation, local
//! oscillation, the boundary twist, and a box-counting dimension.

use std::f64::consts::TAU;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use twofloat::TwoFloat;

use crate::spectral::{evaluate_at_turns, GridProfile, SpectralError, SpectralState};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum AnalysisError {
    #[error(transparent)]
    Spectral(#[from] SpectralError),
    #[error("window radius {radius} is below two grid spacings ({min})")]
    RadiusTooSmall { radius: f64, min: f64 },
    #[error("no window radii given")]
    NoRadii,
    #[error("profile has {grid} samples; at least {min} are required")]
    GridTooSmall { grid: usize, min: usize },
}

/// Which real-valued part of a complex profile to measure.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Part {
    Re,
    Im,
    Abs,
}

impl Part {
    pub fn of(self, c: Complex64) -> f64 {
        match self {
            Part::Re => c.re,
            Part::Im => c.im,
            Part::Abs => c.norm(),
        }
    }
}

impl std::str::FromStr for Part {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "re" => Ok(Part::Re),
            "im" => Ok(Part::Im),
            "abs" => Ok(Part::Abs),
            other => Err(format!("unknown part `{other}` (expected re, im or abs)")),
        }
    }
}

/// `‖c‖₂`, the L² norm of the represented function.
pub fn parseval_norm(state: &SpectralState) -> f64 {
    state.norm()
}

/// `Σ_k |f(x_{k+1}) − f(x_k)|` over the closed loop of samples.
pub fn total_variation(profile: &GridProfile, part: Part) -> f64 {
    let v: Vec<f64> = profile.samples.iter().map(|&c| part.of(c)).collect();
    if v.len() < 2 {
        return 0.0;
    }
    let inner: f64 = v.windows(2).map(|w| (w[1] - w[0]).abs()).sum();
    inner + (v[0] - v[v.len() - 1]).abs()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    JumpPersists,
    Decays,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OscillationReport {
    pub center: f64,
    /// Descending.
    pub radii: Vec<f64>,
    pub oscillations: Vec<f64>,
    pub verdict: Verdict,
}

impl OscillationReport {
    /// Oscillation at the smallest radius over that at the largest.
    pub fn decay_ratio(&self) -> f64 {
        let first = self.oscillations[0];
        let last = self.oscillations[self.oscillations.len() - 1];
        if first == 0.0 {
            0.0
        } else {
            last / first
        }
    }
}

/// `count` radii spaced geometrically from `largest` down to `smallest`.
pub fn geometric_radii(largest: f64, smallest: f64, count: usize) -> Vec<f64> {
    if count < 2 {
        return vec![largest];
    }
    let ratio = (smallest / largest).powf(1.0 / (count - 1) as f64);
    (0..count).map(|i| largest * ratio.powi(i as i32)).collect()
}

fn circular_distance(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(TAU);
    d.min(TAU - d)
}

/// Default decay factor: a window is judged to decay when the oscillation at
/// the smallest radius is below this fraction of that at the largest.
pub const DEFAULT_DECAY_FACTOR: f64 = 0.5;

/// Max−min of `part` over the samples within each radius of `x0`.
pub fn oscillation_at(
    profile: &GridProfile,
    x0: f64,
    radii: &[f64],
    part: Part,
) -> Result<OscillationReport, AnalysisError> {
    oscillation_at_with(profile, x0, radii, part, DEFAULT_DECAY_FACTOR)
}

pub fn oscillation_at_with(
    profile: &GridProfile,
    x0: f64,
    radii: &[f64],
    part: Part,
    decay_factor: f64,
) -> Result<OscillationReport, AnalysisError> {
    if radii.is_empty() {
        return Err(AnalysisError::NoRadii);
    }
    let min = 2.0 * profile.spacing();
    let mut radii = radii.to_vec();
    radii.sort_by(|a, b| b.total_cmp(a));
    if let Some(&r) = radii.iter().find(|&&r| r < min * (1.0 - 1e-12)) {
        return Err(AnalysisError::RadiusTooSmall { radius: r, min });
    }
    let center = x0.rem_euclid(TAU);
    let oscillations = radii
        .iter()
        .map(|&r| {
            let (lo, hi) = profile
                .samples
                .iter()
                .enumerate()
                .filter(|&(k, _)| circular_distance(profile.x(k), center) <= r)
                .map(|(_, &c)| part.of(c))
                .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| {
                    (lo.min(v), hi.max(v))
                });
            hi - lo
        })
        .collect::<Vec<_>>();
    let verdict = if oscillations[oscillations.len() - 1] < decay_factor * oscillations[0] {
        Verdict::Decays
    } else {
        Verdict::JumpPersists
    };
    Ok(OscillationReport {
        center,
        radii,
        oscillations,
        verdict,
    })
}

/// `|e^{i2πθ} u(0) − u(2π)|` with both ends evaluated from the series. For a
/// periodic state `θ = 0`.
pub fn boundary_twist_residual(state: &SpectralState) -> f64 {
    let theta = state.basis().theta().map(|t| t.value()).unwrap_or(0.0);
    let start = evaluate_at_turns(state, TwoFloat::from(0.0));
    let end = evaluate_at_turns(state, TwoFloat::from(1.0));
    (Complex64::from_polar(1.0, TAU * theta) * start - end).norm()
}

/// The same residual for sampled data: `u(2π⁻)` is extrapolated from the
/// last four samples by the cubic through them.
pub fn boundary_twist_residual_sampled(profile: &GridProfile, theta: f64) -> f64 {
    let s = &profile.samples;
    let n = s.len();
    if n < 4 {
        return f64::NAN;
    }
    let end = s[n - 1] * 4.0 - s[n - 2] * 6.0 + s[n - 3] * 4.0 - s[n - 4];
    (Complex64::from_polar(1.0, TAU * theta) * s[0] - end).norm()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoxCountReport {
    pub scales: Vec<f64>,
    pub counts: Vec<u64>,
    pub dimension: f64,
    /// Half-open index range into `scales` used for the fit.
    pub fit_window: (usize, usize),
    pub r_squared: f64,
}

/// Smallest profile accepted by [`box_dimension`].
pub const MIN_BOX_GRID: usize = 1 << 10;

/// Box-counting dimension of the graph of `part` on `[0, 2π]`.
///
/// The graph is scaled into the unit square. For `ε = 2^{-k}`,
/// `k = 2..⌊log₂N⌋−2`, every column of width `ε` contributes
/// `⌈(max − min)/ε⌉ + 1` boxes, where the column range includes the first
/// sample of the next column so that the graph is treated as connected. The
/// slope of `log N(ε)` against `log(1/ε)` is fitted by least squares after
/// dropping the two coarsest and two finest scales.
pub fn box_dimension(profile: &GridProfile, part: Part) -> Result<BoxCountReport, AnalysisError> {
    let n = profile.len();
    if n < MIN_BOX_GRID {
        return Err(AnalysisError::GridTooSmall {
            grid: n,
            min: MIN_BOX_GRID,
        });
    }
    let v: Vec<f64> = profile.samples.iter().map(|&c| part.of(c)).collect();
    let (lo, hi) = v
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &y| {
            (lo.min(y), hi.max(y))
        });
    let k_max = (n as f64).log2().floor() as u32 - 2;
    let ks: Vec<u32> = (2..=k_max).collect();
    let scales: Vec<f64> = ks.iter().map(|&k| 0.5f64.powi(k as i32)).collect();
    let fit_window = (2, ks.len() - 2);
    if hi - lo <= 0.0 {
        let counts = ks.iter().map(|&k| 1u64 << k).collect();
        return Ok(BoxCountReport {
            scales,
            counts,
            dimension: 1.0,
            fit_window,
            r_squared: 1.0,
        });
    }
    let y: Vec<f64> = v.iter().map(|&t| (t - lo) / (hi - lo)).collect();
    let counts: Vec<u64> = ks
        .iter()
        .map(|&k| {
            let columns = 1usize << k;
            let eps = 0.5f64.powi(k as i32);
            (0..columns)
                .map(|c| {
                    let start = c * n / columns;
                    let end = ((c + 1) * n / columns + 1).min(n);
                    let (a, b) = y[start..end]
                        .iter()
                        .fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), &t| {
                            (a.min(t), b.max(t))
                        });
                    ((b - a) / eps).ceil() as u64 + 1
                })
                .sum()
        })
        .collect();
    let xs: Vec<f64> = ks[fit_window.0..fit_window.1]
        .iter()
        .map(|&k| k as f64 * std::f64::consts::LN_2)
        .collect();
    let ys: Vec<f64> = counts[fit_window.0..fit_window.1]
        .iter()
        .map(|&c| (c as f64).ln())
        .collect();
    let (dimension, r_squared) = least_squares(&xs, &ys);
    Ok(BoxCountReport {
        scales,
        counts,
        dimension,
        fit_window,
        r_squared,
    })
}

/// Slope and coefficient of determination of the least-squares line.
fn least_squares(x: &[f64], y: &[f64]) -> (f64, f64) {
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = x.iter().map(|a| (a - mx).powi(2)).sum();
    let syy: f64 = y.iter().map(|b| (b - my).powi(2)).sum();
    let slope = sxy / sxx;
    let r2 = if syy == 0.0 {
        1.0
    } else {
        sxy * sxy / (sxx * syy)
    };
    (slope, r2)
}

/// `max_j |c_j^direct − c_j^revival|`.
pub fn revival_residual(
    direct: &SpectralState,
    via_revival: &SpectralState,
) -> Result<f64, AnalysisError> {
    if direct.basis() != via_revival.basis() {
        return Err(SpectralError::BasisMismatch {
            expected: "matching bases",
            found: "different bases",
        }
        .into());
    }
    Ok(direct.max_difference(via_revival)?)
}

/// All points `b + offset + 2πk/q` (mod 2π) for `b` in `base`, sorted, with
/// coincident points merged.
pub fn candidate_jumps(base: &[f64], offset: f64, q: u64) -> Vec<f64> {
    let mut out: Vec<f64> = Vec::new();
    for &b in base {
        for k in 0..q.max(1) {
            let x = (b + offset + TAU * k as f64 / q.max(1) as f64).rem_euclid(TAU);
            if out.iter().all(|&y| circular_distance(x, y) > 1e-9) {
                out.push(x);
            }
        }
    }
    out.sort_by(f64::total_cmp);
    out
}

/// Marks, for each candidate, the `count` grid points nearest to it.
pub fn gibbs_mask(n: usize, candidates: &[f64], count: usize) -> Vec<bool> {
    let mut mask = vec![false; n];
    let h = TAU / n as f64;
    for &c in candidates {
        let mut idx: Vec<usize> = {
            let centre = (c / h).round() as i64;
            let reach = count as i64 + 1;
            (centre - reach..=centre + reach)
                .map(|k| k.rem_euclid(n as i64) as usize)
                .collect()
        };
        idx.sort_by(|&a, &b| {
            circular_distance(a as f64 * h, c).total_cmp(&circular_distance(b as f64 * h, c))
        });
        idx.dedup();
        for &k in idx.iter().take(count) {
            mask[k] = true;
        }
    }
    mask
}

/// `max |a_k − b_k|` over samples not marked in `mask`.
pub fn max_difference_excluding(
    a: &GridProfile,
    b: &GridProfile,
    mask: &[bool],
) -> Result<f64, AnalysisError> {
    if a.len() != b.len() || a.len() != mask.len() {
        return Err(SpectralError::ShapeMismatch {
            left: a.len(),
            right: b.len(),
        }
        .into());
    }
    Ok(a.samples
        .iter()
        .zip(&b.samples)
        .zip(mask)
        .filter(|(_, &m)| !m)
        .map(|((x, y), _)| (x - y).norm())
        .fold(0.0, f64::max))
}
