//! Split-step solver for the cubic NLS `∂_t z = i∂_x²z + iκ|z|²z` with
//! periodic boundary conditions, and the quasi-periodic problem reached
//! through the Galilean change of frame
//! `u(x,t) = e^{-iθ²t} e^{iθx} (T_{2θt} z)(x,t)`.

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};
use serde::{Deserialize, Serialize};
use std::f64::consts::TAU;
use std::sync::Arc;
use twofloat::TwoFloat;

use crate::numbers::{Coefficient, ThetaValue, Time};
use crate::spectral::{
    constant_phase, linear_phase, monomial_phase, Basis, SpectralError, SpectralState,
};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum NlsError {
    #[error(transparent)]
    Spectral(#[from] SpectralError),
    #[error("invalid solver configuration: {0}")]
    Config(String),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NlsConfig {
    pub modes: usize,
    pub grid: usize,
    pub dt: f64,
    pub final_time: f64,
    /// Boundary parameter; when set it must match the basis of the data.
    pub theta: Option<ThetaValue>,
    /// Strength `κ` of the cubic term. Zero switches the nonlinear substep
    /// (and with it the de-aliasing) off, leaving the linear flow.
    pub coupling: f64,
}

impl NlsConfig {
    pub fn new(modes: usize, dt: f64, final_time: f64) -> Self {
        NlsConfig {
            modes,
            grid: 4 * modes,
            dt,
            final_time,
            theta: None,
            coupling: 1.0,
        }
    }

    pub fn validate(&self) -> Result<(), NlsError> {
        if self.dt.is_nan() || self.dt <= 0.0 {
            return Err(NlsError::Config(format!(
                "dt must be positive, got {}",
                self.dt
            )));
        }
        if self.final_time.is_nan() || self.final_time < 0.0 {
            return Err(NlsError::Config(format!(
                "final time must be non-negative, got {}",
                self.final_time
            )));
        }
        if self.grid < 2 * self.modes + 1 {
            return Err(SpectralError::GridTooSmall {
                grid: self.grid,
                modes: self.modes,
            }
            .into());
        }
        Ok(())
    }

    /// Step sizes covering `[0, T]`: whole steps of `dt` and, when `T` is
    /// not a multiple of `dt`, one final step of the remainder.
    pub fn schedule(&self) -> Vec<f64> {
        let whole = (self.final_time / self.dt + 1e-9).floor() as usize;
        // Exact product so that the steps sum to `T` beyond f64 rounding.
        let covered = TwoFloat::from(whole as f64) * TwoFloat::from(self.dt);
        let rem = (TwoFloat::from(self.final_time) - covered).hi();
        let mut steps = vec![self.dt; whole];
        if rem > 1e-9 * self.dt {
            steps.push(rem);
        }
        steps
    }
}

/// Strang splitting on a fixed grid. Consecutive linear flows are fused, so
/// with the nonlinearity switched off the whole run is one exact linear flow.
pub struct NlsSolver {
    modes: usize,
    grid: usize,
    coupling: f64,
    forward: Arc<dyn Fft<f64>>,
    inverse: Arc<dyn Fft<f64>>,
}

impl NlsSolver {
    pub fn new(modes: usize, grid: usize, coupling: f64) -> Result<Self, NlsError> {
        if grid < 2 * modes + 1 {
            return Err(SpectralError::GridTooSmall { grid, modes }.into());
        }
        let mut planner = FftPlanner::new();
        Ok(NlsSolver {
            modes,
            grid,
            coupling,
            forward: planner.plan_fft_forward(grid),
            inverse: planner.plan_fft_inverse(grid),
        })
    }

    /// Highest mode kept by the 2/3 rule.
    pub fn dealias_cutoff(&self) -> i64 {
        (2 * self.modes / 3) as i64
    }

    fn linear(&self, state: &SpectralState, tau: TwoFloat) -> SpectralState {
        if tau == TwoFloat::from(0.0) {
            return state.clone();
        }
        let t = Time::seconds_precise(tau);
        state.multiply(|j| monomial_phase(j, 2, &t))
    }

    /// Exact pointwise flow `z ← z e^{iκ|z|²τ}` followed by 2/3 de-aliasing.
    fn nonlinear(&self, state: &SpectralState, tau: f64) -> SpectralState {
        let n = self.grid;
        let mut buf = vec![Complex64::new(0.0, 0.0); n];
        for (j, c) in state.iter() {
            buf[j.rem_euclid(n as i64) as usize] = c;
        }
        self.inverse.process(&mut buf);
        let to_grid = 1.0 / TAU.sqrt();
        for v in buf.iter_mut() {
            let u = *v * to_grid;
            *v = u * Complex64::from_polar(1.0, self.coupling * u.norm_sqr() * tau);
        }
        self.forward.process(&mut buf);
        let back = TAU.sqrt() / n as f64;
        let cutoff = self.dealias_cutoff();
        SpectralState::from_fn(self.modes, Basis::Periodic, |j| {
            if j.abs() > cutoff {
                Complex64::new(0.0, 0.0)
            } else {
                buf[j.rem_euclid(n as i64) as usize] * back
            }
        })
    }

    /// Runs the given steps; each is half nonlinear, full linear, half nonlinear.
    pub fn run(&self, z0: &SpectralState, steps: &[f64]) -> Result<SpectralState, NlsError> {
        z0.require_periodic()?;
        if z0.modes() != self.modes {
            return Err(SpectralError::ShapeMismatch {
                left: z0.modes(),
                right: self.modes,
            }
            .into());
        }
        let mut z = z0.clone();
        // Accumulated in double-double: fused flows over thousands of steps
        // would otherwise carry the f64 rounding of the summed time into
        // phases of size j²T.
        let zero = TwoFloat::from(0.0);
        let mut pending = zero;
        for &dt in steps {
            if self.coupling != 0.0 {
                z = self.linear(&z, pending);
                pending = zero;
                z = self.nonlinear(&z, dt / 2.0);
            }
            pending += dt;
            if self.coupling != 0.0 {
                z = self.linear(&z, pending);
                pending = zero;
                z = self.nonlinear(&z, dt / 2.0);
            }
        }
        Ok(self.linear(&z, pending))
    }
}

/// One Strang step of the periodic NLS with unit coupling on a `4J` grid.
pub fn nls_step_periodic(state: &SpectralState, dt: f64) -> Result<SpectralState, NlsError> {
    let solver = NlsSolver::new(state.modes(), 4 * state.modes().max(1), 1.0)?;
    solver.run(state, &[dt])
}

/// Periodic evolution to `cfg.final_time`.
pub fn nls_evolve_periodic(z0: &SpectralState, cfg: &NlsConfig) -> Result<SpectralState, NlsError> {
    cfg.validate()?;
    let solver = NlsSolver::new(cfg.modes, cfg.grid, cfg.coupling)?;
    solver.run(z0, &cfg.schedule())
}

/// Quasi-periodic evolution: re-tag `u_0` as `z_0`, evolve the periodic NLS,
/// then `û_j(T) = ẑ_j(T) e^{-iθ²T} e^{-i2θTj}`.
pub fn nls_evolve_quasi(u0: &SpectralState, cfg: &NlsConfig) -> Result<SpectralState, NlsError> {
    let theta = u0.require_quasi()?;
    if let Some(expected) = cfg.theta {
        if expected != theta {
            return Err(NlsError::Config(format!(
                "configured theta {expected} does not match the data's theta {theta}"
            )));
        }
    }
    let z = nls_evolve_periodic(&u0.retag(Basis::Periodic), cfg)?;
    let t = Time::seconds(cfg.final_time);
    let th = theta.precise();
    let global = constant_phase(
        &Coefficient {
            approx: th * th,
            exact: theta.as_rational().and_then(|r| r.checked_mul(&r).ok()),
        },
        &t,
    );
    let speed = Coefficient {
        approx: th * TwoFloat::from(2.0),
        exact: theta.as_rational().and_then(|r| r.checked_mul_int(2).ok()),
    };
    Ok(z.retag(Basis::Quasi(theta))
        .multiply(|j| global * linear_phase(&speed, j, &t)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::evolve_second_order;

    /// Rapidly decaying coefficients on `|j| ≤ 6`, well inside the 2/3 band.
    fn smooth(modes: usize, amplitude: f64, basis: Basis) -> SpectralState {
        SpectralState::from_fn(modes, basis, |j| {
            if j.abs() > 6 {
                Complex64::new(0.0, 0.0)
            } else {
                Complex64::new(1.0, 0.4 * j as f64) * amplitude * (-(j.abs() as f64)).exp()
            }
        })
    }

    #[test]
    fn zero_state_stays_zero() {
        let z = SpectralState::zeros(16, Basis::Periodic);
        assert_eq!(nls_step_periodic(&z, 0.01).unwrap(), z);
    }

    #[test]
    fn plane_wave_is_a_global_phase() {
        let (a, j0, t) = (Complex64::new(0.8, 0.6), 3i64, 0.5);
        let z0 = SpectralState::unit(16, Basis::Periodic, j0).scaled(a);
        let cfg = NlsConfig::new(16, 1e-2, t);
        let z = nls_evolve_periodic(&z0, &cfg).unwrap();
        let want = a * Complex64::from_polar(1.0, (a.norm_sqr() / TAU - (j0 * j0) as f64) * t);
        assert!((z.coeff(j0).unwrap() - want).norm() < 1e-12);
    }

    #[test]
    fn mass_is_conserved_per_step() {
        let z0 = smooth(32, 1.0, Basis::Periodic);
        let z1 = nls_step_periodic(&z0, 1e-2).unwrap();
        assert!((z1.norm() / z0.norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn schedule_adds_remainder() {
        let cfg = NlsConfig::new(4, 0.3, 1.0);
        let s = cfg.schedule();
        assert_eq!(s.len(), 4);
        assert!((s[3] - 0.1).abs() < 1e-12);
        assert_eq!(NlsConfig::new(4, 0.25, 1.0).schedule().len(), 4);
        assert!(NlsConfig::new(4, 0.1, 0.0).schedule().is_empty());
    }

    #[test]
    fn config_is_validated() {
        assert!(NlsConfig::new(4, 0.0, 1.0).validate().is_err());
        assert!(NlsConfig::new(4, 0.1, -1.0).validate().is_err());
        let mut c = NlsConfig::new(4, 0.1, 1.0);
        c.grid = 8;
        assert!(c.validate().is_err());
    }

    #[test]
    fn zero_time_is_identity() {
        let th = ThetaValue::rational(1, 4).unwrap();
        let u0 = smooth(16, 1.0, Basis::Quasi(th));
        let u = nls_evolve_quasi(&u0, &NlsConfig::new(16, 1e-3, 0.0)).unwrap();
        assert!(u.max_difference(&u0).unwrap() < 1e-15);
    }

    #[test]
    fn linear_limit_telescopes_to_second_order_flow() {
        let th: ThetaValue = "sqrt(2)/4".parse().unwrap();
        let u0 = smooth(64, 1.0, Basis::Quasi(th));
        let mut cfg = NlsConfig::new(64, 1e-3, TAU / 3.0);
        cfg.coupling = 0.0;
        let u = nls_evolve_quasi(&u0, &cfg).unwrap();
        let lin = evolve_second_order(&u0, [0, 0, 1], &Time::seconds(TAU / 3.0)).unwrap();
        assert!(u.max_difference(&lin).unwrap() < 1e-12);
    }

    #[test]
    fn theta_mismatch_rejected() {
        let th = ThetaValue::rational(1, 4).unwrap();
        let u0 = smooth(8, 1.0, Basis::Quasi(th));
        let mut cfg = NlsConfig::new(8, 1e-2, 0.1);
        cfg.theta = Some(ThetaValue::rational(1, 3).unwrap());
        assert!(matches!(
            nls_evolve_quasi(&u0, &cfg),
            Err(NlsError::Config(_))
        ));
        assert!(nls_evolve_quasi(&u0.retag(Basis::Periodic), &cfg).is_err());
    }

    #[test]
    fn strang_is_second_order() {
        let z0 = smooth(32, 1.0, Basis::Periodic);
        let run = |dt: f64| nls_evolve_periodic(&z0, &NlsConfig::new(32, dt, 0.5)).unwrap();
        let reference = run(1e-3 / 16.0);
        let errs: Vec<f64> = [4e-3, 2e-3, 1e-3]
            .iter()
            .map(|&dt| run(dt).max_difference(&reference).unwrap())
            .collect();
        for w in errs.windows(2) {
            let p = (w[0] / w[1]).log2();
            assert!((p - 2.0).abs() < 0.2, "order {p}");
        }
    }

    #[test]
    fn small_amplitude_matches_linear_flow() {
        let th = ThetaValue::rational(1, 4).unwrap();
        let t = 0.5;
        let lin = |eps: f64| {
            let u0 = smooth(16, eps, Basis::Quasi(th));
            let u = nls_evolve_quasi(&u0, &NlsConfig::new(16, 1e-2, t)).unwrap();
            let l = evolve_second_order(&u0, [0, 0, 1], &Time::seconds(t)).unwrap();
            u.max_difference(&l).unwrap()
        };
        // The nonlinear correction is cubic in the amplitude.
        let (a, b) = (lin(1e-2), lin(5e-3));
        assert!((a / b).log2() > 2.8, "ratio {}", a / b);
    }
}
