//! The piecewise-constant initial condition `u_0 = 1` on `(π/2, 3π/2)`, its
//! exact coefficients and its exact evolution at revival times.

use std::f64::consts::{FRAC_PI_2, PI, TAU};

use num_complex::Complex64;

use super::evolve::RevivalRepresentation;
use super::grid::{grid_point, GridProfile, ProfileMeta};
use super::{Basis, SpectralState};
use crate::numbers::ThetaValue;

const LEFT: f64 = FRAC_PI_2;
const RIGHT: f64 = 3.0 * FRAC_PI_2;

/// Exact quasi-basis coefficients of the box:
/// `c_j = (i/√(2π)) (e^{-3πi(j+θ)/2} − e^{-πi(j+θ)/2}) / (j+θ)`.
pub fn box_coefficients_closed_form(theta: &ThetaValue, modes: usize) -> SpectralState {
    let th = theta.value();
    let pref = Complex64::new(0.0, 1.0 / TAU.sqrt());
    SpectralState::from_fn(modes, Basis::Quasi(*theta), |j| {
        let k = j as f64 + th;
        // Reduce the angles by whole turns of j before adding θ to keep them small.
        let a = -PI * ((3 * j).rem_euclid(4) as f64 / 2.0 + 1.5 * th);
        let b = -PI * ((j).rem_euclid(4) as f64 / 2.0 + 0.5 * th);
        pref * (Complex64::from_polar(1.0, a) - Complex64::from_polar(1.0, b)) / k
    })
}

/// Value of the box at `x ∈ [0, 2π)`, with the midpoint value `1/2` at the jumps.
pub fn box_value(x: f64) -> f64 {
    let x = x.rem_euclid(TAU);
    if x == LEFT || x == RIGHT {
        0.5
    } else if x > LEFT && x < RIGHT {
        1.0
    } else {
        0.0
    }
}

/// Exact samples of the box on an `N`-point grid.
pub fn box_profile(n: usize) -> GridProfile {
    GridProfile::from_fn(n, "box", |x| box_value(x).into())
}

/// A discontinuity of a sampled solution: location in `[0, 2π)` and the
/// modulus of the jump.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Jump {
    pub x: f64,
    pub size: f64,
}

/// Exact samples of `u(x,t) = g e^{iθx} Σ_K W_K z_0(x − τ_K)` where `z_0`
/// is the 2π-periodic extension of `e^{-iθx}u_0`.
pub fn box_revival_profile(rep: &RevivalRepresentation, n: usize) -> GridProfile {
    let theta = rep.theta.value();
    let support = rep.combination.support(1e-14);
    let samples = (0..n)
        .map(|k| {
            let x = grid_point(k, n);
            let z: Complex64 = support
                .iter()
                .map(|&(tau, w)| {
                    let y = (x - tau).rem_euclid(TAU);
                    w * Complex64::from_polar(box_value(y), -theta * y)
                })
                .sum();
            rep.global_phase * Complex64::from_polar(1.0, theta * x) * z
        })
        .collect();
    GridProfile::new(
        samples,
        ProfileMeta {
            theta: Some(rep.theta.to_string()),
            method: "revival-construction".to_string(),
            ..ProfileMeta::default()
        },
    )
}

/// Jumps of the exact revival solution of the box: each translate
/// contributes `W_K e^{-iθπ/2}` at `π/2 + τ_K` and `−W_K e^{-i3θπ/2}` at
/// `3π/2 + τ_K`; coincident contributions are summed before taking moduli.
/// Jumps smaller than `tolerance` are dropped.
pub fn box_jumps(rep: &RevivalRepresentation, tolerance: f64) -> Vec<Jump> {
    let theta = rep.theta.value();
    let mut acc: Vec<(f64, Complex64)> = Vec::new();
    for (tau, w) in rep.combination.support(1e-14) {
        for (edge, sign) in [(LEFT, 1.0), (RIGHT, -1.0)] {
            let x = (edge + tau).rem_euclid(TAU);
            let c = w * Complex64::from_polar(sign, -theta * edge);
            match acc
                .iter_mut()
                .find(|(y, _)| circular_distance(*y, x) < 1e-9)
            {
                Some((_, v)) => *v += c,
                None => acc.push((x, c)),
            }
        }
    }
    let mut jumps: Vec<Jump> = acc
        .into_iter()
        .map(|(x, c)| Jump { x, size: c.norm() })
        .filter(|j| j.size > tolerance)
        .collect();
    jumps.sort_by(|a, b| a.x.total_cmp(&b.x));
    jumps
}

pub(crate) fn circular_distance(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(TAU);
    d.min(TAU - d)
}
