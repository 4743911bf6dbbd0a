//! Diagonal evolution operators and the quasi-periodic ↔ periodic
//! correspondence.

use num_complex::Complex64;

use super::phase::{
    constant_phase, linear_phase, monomial_phase, periodic_phase, quasi_phase, translation_phase,
};
use super::revival::{apply_revival, revival_weights_for_turns, TranslateCombination};
use super::{Basis, SpectralError, SpectralState};
use crate::numbers::{
    composition_plan, Coefficient, CompositionPlan, DispersionPolynomial, Factor, NumbersError,
    ThetaValue, Time, TransformedPolynomial,
};

/// `c_j ← c_j e^{-iP(j+θ)t}` on a quasi-periodic state.
pub fn evolve_quasi(
    state: &SpectralState,
    p: &DispersionPolynomial,
    t: &Time,
) -> Result<SpectralState, SpectralError> {
    let theta = state.require_quasi()?;
    Ok(state.multiply(|j| quasi_phase(p, &theta, j, t)))
}

/// `c_j ← c_j e^{-iA(j)t}` on a periodic state.
pub fn evolve_periodic(
    state: &SpectralState,
    a: &TransformedPolynomial,
    t: &Time,
) -> Result<SpectralState, SpectralError> {
    state.require_periodic()?;
    Ok(state.multiply(|j| periodic_phase(a, j, t)))
}

/// The periodic translation `(T_s z)(x) = z(x − s)`: `c_j ← c_j e^{-ijs}`.
pub fn translate(state: &SpectralState, s: f64) -> Result<SpectralState, SpectralError> {
    state.require_periodic()?;
    Ok(state.multiply(|j| translation_phase(j, s)))
}

/// The group `R_n(t)`: `c_j ← c_j e^{-i j^n t}`. `R_1(t)` is the translation
/// `T_t`.
pub fn apply_group(
    state: &SpectralState,
    n: u32,
    t: &Time,
) -> Result<SpectralState, SpectralError> {
    if n == 0 {
        return Err(SpectralError::InvalidOrder(n));
    }
    state.require_periodic()?;
    Ok(state.multiply(|j| monomial_phase(j, n, t)))
}

/// How [`evolve_by_composition`] applies each factor.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CompositionMode {
    /// Every factor as a diagonal multiplier.
    Diagonal,
    /// Factors with rational time `2πp/q`, `q ≤ REVIVAL_PREFERRED_DENOMINATOR`,
    /// as revival combinations; the rest diagonally.
    RevivalWhereRational,
    /// Every factor as a revival combination; irrational times are an error.
    RevivalOnly,
}

/// Beyond this denominator a revival table holds more entries than any
/// practical mode range, so `RevivalWhereRational` applies the factor as a
/// diagonal multiplier instead.
pub const REVIVAL_PREFERRED_DENOMINATOR: u64 = 1 << 16;

fn apply_factor(
    state: &SpectralState,
    factor: &Factor,
    mode: CompositionMode,
) -> Result<SpectralState, SpectralError> {
    let turns = factor.rational_turns().filter(|r| {
        mode == CompositionMode::RevivalOnly
            || r.fract().den() <= i128::from(REVIVAL_PREFERRED_DENOMINATOR)
    });
    match (mode, turns) {
        (CompositionMode::Diagonal, _) => apply_group(state, factor.order, &factor.time),
        (_, Some(r)) => {
            let w = revival_weights_for_turns(factor.order, &r)?;
            apply_revival(state, &w)
        }
        (CompositionMode::RevivalWhereRational, None) => {
            apply_group(state, factor.order, &factor.time)
        }
        (CompositionMode::RevivalOnly, None) => Err(SpectralError::IrrationalFactor {
            order: factor.order,
        }),
    }
}

/// Applies every factor of the plan in order.
pub fn evolve_by_composition(
    state: &SpectralState,
    plan: &CompositionPlan,
    mode: CompositionMode,
) -> Result<SpectralState, SpectralError> {
    state.require_periodic()?;
    plan.factors()
        .iter()
        .try_fold(state.clone(), |s, f| apply_factor(&s, f, mode))
}

/// Periodic coefficients `ẑ_j = û_j e^{ij s_θ t}` together with the global
/// phase `e^{iP(θ)t}` that completes `z(·,t)`.
#[derive(Clone, Debug, PartialEq)]
pub struct PeriodicImage {
    pub state: SpectralState,
    pub global_phase: Complex64,
}

impl PeriodicImage {
    /// The periodic solution with the global phase folded in.
    pub fn into_state(self) -> SpectralState {
        self.state.scaled(self.global_phase)
    }
}

/// Maps the quasi-periodic solution `u(·,t)` to the periodic `z(·,t)`.
pub fn quasi_to_periodic(
    state: &SpectralState,
    p: &DispersionPolynomial,
    t: &Time,
) -> Result<PeriodicImage, SpectralError> {
    let theta = state.require_quasi()?;
    let s = p.drift_coefficient(&theta);
    let p_theta = p.value_at_theta(&theta);
    let periodic = state
        .retag(Basis::Periodic)
        .multiply(|j| linear_phase(&s, j, t).conj());
    Ok(PeriodicImage {
        state: periodic,
        global_phase: constant_phase(&p_theta, t).conj(),
    })
}

/// Maps the periodic solution `z(·,t)` back: `û_j = ẑ_j e^{-iP(θ)t} e^{-ij s_θ t}`.
pub fn periodic_to_quasi(
    state: &SpectralState,
    p: &DispersionPolynomial,
    theta: &ThetaValue,
    t: &Time,
) -> Result<SpectralState, SpectralError> {
    state.require_periodic()?;
    let s = p.drift_coefficient(theta);
    let global = constant_phase(&p.value_at_theta(theta), t);
    Ok(state
        .retag(Basis::Quasi(*theta))
        .multiply(|j| global * linear_phase(&s, j, t)))
}

/// Quasi-periodic evolution for `P(λ) = α_0 + α_1 λ + α_2 λ²`.
pub fn evolve_second_order(
    state: &SpectralState,
    alpha: [i64; 3],
    t: &Time,
) -> Result<SpectralState, SpectralError> {
    if alpha[2] == 0 {
        return Err(NumbersError::LeadingCoefficientZero.into());
    }
    let p = DispersionPolynomial::new(alpha.to_vec())?;
    evolve_quasi(state, &p, t)
}

/// The quasi-periodic evolution `u(t) = e^{-iP(θ)t} e^{iθx} T_{s_θ t} Π R_k(τ_k) z_0`
/// written as one combination of translations of `z_0 = e^{-iθx}u_0`.
#[derive(Clone, Debug, PartialEq)]
pub struct RevivalRepresentation {
    pub combination: TranslateCombination,
    pub global_phase: Complex64,
    pub theta: ThetaValue,
}

impl RevivalRepresentation {
    pub fn apply(&self, u0: &SpectralState) -> Result<SpectralState, SpectralError> {
        let theta = u0.require_quasi()?;
        if theta != self.theta {
            return Err(SpectralError::BasisMismatch {
                expected: "quasi-periodic with matching theta",
                found: "quasi-periodic with another theta",
            });
        }
        Ok(self
            .combination
            .apply(&u0.retag(Basis::Periodic))?
            .scaled(self.global_phase)
            .retag(Basis::Quasi(theta)))
    }
}

/// Builds the revival representation. Every group factor must have a
/// rational time; the drift translation `T_{s_θ t}` may be arbitrary.
/// For `n = 2` the single factor is `R_2(α_2 t)`.
pub fn revival_representation(
    p: &DispersionPolynomial,
    theta: &ThetaValue,
    t: &Time,
) -> Result<RevivalRepresentation, SpectralError> {
    let factors: Vec<Factor> = if p.order() == 2 {
        let c = Coefficient::from_integer(p.coefficient(2) as i128);
        vec![Factor {
            order: 2,
            coefficient: c,
            time: t.scaled(&c),
        }]
    } else {
        composition_plan(p, theta, t)?.factors().to_vec()
    };
    let mut combination = TranslateCombination::identity();
    for f in &factors {
        let r = f
            .rational_turns()
            .ok_or(SpectralError::IrrationalFactor { order: f.order })?;
        let w = revival_weights_for_turns(f.order, &r)?;
        combination = combination.compose(&TranslateCombination::from_weights(&w))?;
    }
    let drift = p.drift_coefficient(theta);
    let shift = t.scaled(&drift);
    let shift = match shift.exact() {
        Some(r) => TranslateCombination::translation(&r)?,
        None => TranslateCombination::shift(shift.as_turns()),
    };
    let combination = combination.compose(&shift)?;
    Ok(RevivalRepresentation {
        combination,
        global_phase: constant_phase(&p.value_at_theta(theta), t),
        theta: *theta,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numbers::{transform_polynomial, Rational, RationalTime};
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::{PI, TAU};

    fn quarter() -> ThetaValue {
        ThetaValue::rational(1, 4).unwrap()
    }

    fn irrational() -> ThetaValue {
        "sqrt(2)/4".parse().unwrap()
    }

    fn third() -> Time {
        RationalTime::new(1, 3).unwrap().into()
    }

    fn random_state(modes: usize, basis: Basis, seed: u64) -> SpectralState {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        SpectralState::from_fn(modes, basis, |_| {
            Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
        })
    }

    fn cube() -> DispersionPolynomial {
        DispersionPolynomial::monomial(3).unwrap()
    }

    #[test]
    fn zero_time_is_identity() {
        let s = random_state(16, Basis::Quasi(quarter()), 1);
        assert_eq!(evolve_quasi(&s, &cube(), &Time::ZERO).unwrap(), s);
        let z = s.retag(Basis::Periodic);
        let a = transform_polynomial(&cube(), &quarter()).unwrap();
        assert_eq!(evolve_periodic(&z, &a, &Time::ZERO).unwrap(), z);
        assert!(
            apply_group(&z, 4, &Time::ZERO)
                .unwrap()
                .max_difference(&z)
                .unwrap()
                < 1e-15
        );
    }

    #[test]
    fn quasi_single_mode_phase() {
        let s = SpectralState::unit(3, Basis::Quasi(quarter()), 1);
        let out = evolve_quasi(&s, &cube(), &third()).unwrap();
        let want = Complex64::new(0.0, -(125.0 / 64.0) * TAU / 3.0).exp();
        assert!((out.coeff(1).unwrap() - want).norm() < 1e-15);
    }

    #[test]
    fn periodic_single_mode_phase() {
        let a = transform_polynomial(&cube(), &quarter()).unwrap();
        let s = SpectralState::unit(3, Basis::Periodic, 2);
        let out = evolve_periodic(&s, &a, &Time::seconds(1.0)).unwrap();
        let want = Complex64::new(0.0, -11.0).exp();
        assert!((out.coeff(2).unwrap() - want).norm() < 1e-14);
    }

    #[test]
    fn basis_mismatches_rejected() {
        let q = SpectralState::zeros(2, Basis::Quasi(quarter()));
        let p = SpectralState::zeros(2, Basis::Periodic);
        let a = transform_polynomial(&cube(), &quarter()).unwrap();
        assert!(evolve_quasi(&p, &cube(), &third()).is_err());
        assert!(evolve_periodic(&q, &a, &third()).is_err());
        assert!(translate(&q, 1.0).is_err());
        assert!(apply_group(&q, 2, &third()).is_err());
        assert!(quasi_to_periodic(&p, &cube(), &third()).is_err());
        assert!(periodic_to_quasi(&q, &cube(), &quarter(), &third()).is_err());
        assert_eq!(
            apply_group(&p, 0, &third()),
            Err(SpectralError::InvalidOrder(0))
        );
    }

    #[test]
    fn translation_laws() {
        let s = random_state(20, Basis::Periodic, 2);
        assert!(translate(&s, TAU).unwrap().max_difference(&s).unwrap() < 1e-12);
        let ab = translate(&translate(&s, 0.7).unwrap(), 1.9).unwrap();
        let direct = translate(&s, 2.6).unwrap();
        assert!(ab.max_difference(&direct).unwrap() < 1e-12);
        let e = SpectralState::unit(4, Basis::Periodic, 3);
        let moved = translate(&e, 0.5).unwrap();
        assert!((moved.coeff(3).unwrap() - Complex64::new(0.0, -1.5).exp()).norm() < 1e-15);
    }

    #[test]
    fn first_order_group_is_translation() {
        let s = random_state(20, Basis::Periodic, 3);
        let t = Time::seconds(1.3);
        let g = apply_group(&s, 1, &t).unwrap();
        let tr = translate(&s, 1.3).unwrap();
        assert!(g.max_difference(&tr).unwrap() < 1e-13);
    }

    #[test]
    fn quadratic_group_at_pi_is_translation() {
        let s = random_state(50, Basis::Periodic, 4);
        let t = Time::exact_turns(Rational::new(1, 2).unwrap());
        let g = apply_group(&s, 2, &t).unwrap();
        assert!(g.max_difference(&translate(&s, PI).unwrap()).unwrap() < 1e-12);
    }

    #[test]
    fn cube_revival_at_third_is_translation() {
        let s = random_state(40, Basis::Periodic, 5);
        let w = crate::spectral::revival_weights(3, 1, 3).unwrap();
        let r = apply_revival(&s, &w).unwrap();
        assert!(
            r.max_difference(&translate(&s, TAU / 3.0).unwrap())
                .unwrap()
                < 1e-12
        );
        let one = crate::spectral::revival_weights(4, 1, 1).unwrap();
        assert!(apply_revival(&s, &one).unwrap().max_difference(&s).unwrap() < 1e-15);
    }

    #[test]
    fn composition_matches_diagonal_for_figure_parameters() {
        for theta in [quarter(), irrational()] {
            let a = transform_polynomial(&cube(), &theta).unwrap();
            let plan = composition_plan(&cube(), &theta, &third()).unwrap();
            let s = random_state(1024, Basis::Periodic, 6);
            let direct = evolve_periodic(&s, &a, &third()).unwrap();
            for mode in [
                CompositionMode::Diagonal,
                CompositionMode::RevivalWhereRational,
            ] {
                let comp = evolve_by_composition(&s, &plan, mode).unwrap();
                assert!(comp.max_difference(&direct).unwrap() < 1e-10);
            }
        }
    }

    #[test]
    fn revival_only_rejects_irrational_factor() {
        let plan = composition_plan(&cube(), &irrational(), &third()).unwrap();
        let s = SpectralState::zeros(4, Basis::Periodic);
        assert_eq!(
            evolve_by_composition(&s, &plan, CompositionMode::RevivalOnly),
            Err(SpectralError::IrrationalFactor { order: 2 })
        );
        assert!(revival_representation(&cube(), &irrational(), &third()).is_err());
    }

    #[test]
    fn correspondence_at_zero_time() {
        let u = random_state(8, Basis::Quasi(quarter()), 7);
        let img = quasi_to_periodic(&u, &cube(), &Time::ZERO).unwrap();
        assert_eq!(img.global_phase, Complex64::new(1.0, 0.0));
        assert_eq!(img.state.coeffs(), u.coeffs());
        assert_eq!(*img.state.basis(), Basis::Periodic);
        let back =
            periodic_to_quasi(&u.retag(Basis::Periodic), &cube(), &quarter(), &Time::ZERO).unwrap();
        assert_eq!(back, u);
    }

    #[test]
    fn correspondence_pipeline_matches_direct() {
        for theta in [quarter(), irrational()] {
            let u0 = random_state(256, Basis::Quasi(theta), 8);
            let p = DispersionPolynomial::new(vec![1, -2, 3, 0, 1]).unwrap();
            let a = transform_polynomial(&p, &theta).unwrap();
            for t in [third(), Time::seconds(1.0)] {
                let direct = evolve_quasi(&u0, &p, &t).unwrap();
                let z = evolve_periodic(&u0.retag(Basis::Periodic), &a, &t).unwrap();
                let via = periodic_to_quasi(&z, &p, &theta, &t).unwrap();
                assert!(direct.max_difference(&via).unwrap() < 1e-10);
                let img = quasi_to_periodic(&direct, &p, &t).unwrap();
                assert!(img.into_state().max_difference(&z).unwrap() < 1e-10);
            }
        }
    }

    #[test]
    fn second_order_worked_example() {
        let s = SpectralState::unit(2, Basis::Quasi(quarter()), 1);
        let t = Time::exact_turns(Rational::new(1, 2).unwrap());
        let out = evolve_second_order(&s, [0, 0, 1], &t).unwrap();
        let want = Complex64::new(0.0, -(25.0 / 16.0) * PI).exp();
        assert!((out.coeff(1).unwrap() - want).norm() < 1e-15);
        assert!(evolve_second_order(&s, [0, 1, 0], &t).is_err());
    }

    #[test]
    fn second_order_revival_path_for_irrational_theta() {
        let theta = irrational();
        let u0 = random_state(512, Basis::Quasi(theta), 9);
        let p = DispersionPolynomial::new(vec![0, 0, 1]).unwrap();
        let rep = revival_representation(&p, &theta, &third()).unwrap();
        assert_eq!(rep.combination.divisions(), 3);
        let via = rep.apply(&u0).unwrap();
        let direct = evolve_second_order(&u0, [0, 0, 1], &third()).unwrap();
        assert!(via.max_difference(&direct).unwrap() < 1e-10);
    }

    #[test]
    fn rational_theta_revival_representation() {
        let u0 = random_state(1024, Basis::Quasi(quarter()), 10);
        let rep = revival_representation(&cube(), &quarter(), &third()).unwrap();
        let direct = evolve_quasi(&u0, &cube(), &third()).unwrap();
        assert!(rep.apply(&u0).unwrap().max_difference(&direct).unwrap() < 1e-10);
        assert!(rep.combination.offset() == 0.0);
    }

    proptest! {
        #[test]
        fn evolutions_are_unitary(seed in 0u64..1000, secs in -10.0f64..10.0, n in 1u32..7) {
            let theta = irrational();
            let u = random_state(64, Basis::Quasi(theta), seed);
            let z = u.retag(Basis::Periodic);
            let t = Time::seconds(secs);
            let p = DispersionPolynomial::monomial(n.max(3)).unwrap();
            let a = transform_polynomial(&p, &theta).unwrap();
            let norm = u.norm();
            let rel = |s: &SpectralState| (s.norm() / norm - 1.0).abs();
            prop_assert!(rel(&evolve_quasi(&u, &p, &t).unwrap()) < 1e-12);
            prop_assert!(rel(&evolve_periodic(&z, &a, &t).unwrap()) < 1e-12);
            prop_assert!(rel(&apply_group(&z, n, &t).unwrap()) < 1e-12);
            prop_assert!(rel(&translate(&z, secs).unwrap()) < 1e-12);
            prop_assert!(rel(&quasi_to_periodic(&u, &p, &t).unwrap().into_state()) < 1e-12);
        }

        #[test]
        fn correspondence_round_trip(seed in 0u64..1000, secs in -5.0f64..5.0) {
            let theta = irrational();
            let p = DispersionPolynomial::new(vec![2, 1, 0, -1, 1]).unwrap();
            let u = random_state(32, Basis::Quasi(theta), seed);
            let t = Time::seconds(secs);
            let img = quasi_to_periodic(&u, &p, &t).unwrap();
            let back = periodic_to_quasi(&img.into_state(), &p, &theta, &t).unwrap();
            prop_assert!(back.max_difference(&u).unwrap() < 1e-12);
        }

        #[test]
        fn factors_commute(perm in Just(vec![0usize, 1, 2, 3, 4, 5]).prop_shuffle(), seed in 0u64..100) {
            let p = DispersionPolynomial::new(vec![0, 0, 1, -2, 1]).unwrap();
            let plan = composition_plan(&p, &irrational(), &Time::seconds(0.9)).unwrap();
            prop_assert_eq!(plan.len(), 6);
            let s = random_state(128, Basis::Periodic, seed);
            let a = evolve_by_composition(&s, &plan, CompositionMode::Diagonal).unwrap();
            let b = evolve_by_composition(&s, &plan.permuted(&perm), CompositionMode::Diagonal).unwrap();
            prop_assert!(a.max_difference(&b).unwrap() < 1e-12);
        }
    }
}
