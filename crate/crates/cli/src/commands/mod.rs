//! Subcommand implementations and the evolution pipeline they share.

pub mod evolve;
pub mod figures;
pub mod fracdim;
pub mod nls;
pub mod verify;
pub mod weights;

use std::collections::BTreeMap;

use revlab::analysis::{boundary_twist_residual, parseval_norm};
use revlab::numbers::{composition_plan, transform_polynomial, Coefficient};
use revlab::spectral::{
    apply_group, evolve_by_composition, evolve_periodic, evolve_quasi, periodic_to_quasi,
    revival_representation, synthesize, CompositionMode,
};
use revlab::{Basis, GridProfile, SpectralState};

use crate::error::CliError;
use crate::params::{Method, Problem};

/// Samples of the evolved state and the checks run along the way.
pub struct Solution {
    pub profile: GridProfile,
    pub norms: BTreeMap<String, f64>,
    pub residuals: BTreeMap<String, f64>,
}

/// Periodic evolution `e^{-iA(-i∂)t}` followed by the map back to the quasi basis.
fn via_periodic(
    problem: &Problem,
    u0: &SpectralState,
    method: Method,
) -> Result<SpectralState, CliError> {
    let z0 = u0.retag(Basis::Periodic);
    let p = &problem.polynomial;
    let z = match method {
        Method::Correspondence => {
            let a = transform_polynomial(p, &problem.theta)?;
            evolve_periodic(&z0, &a, &problem.time)?
        }
        Method::Composition if p.order() == 2 => {
            // A(λ) = α_2 λ²: a single group factor.
            let c = Coefficient::from_integer(i128::from(p.coefficient(2)));
            apply_group(&z0, 2, &problem.time.scaled(&c))?
        }
        Method::Composition => {
            let plan = composition_plan(p, &problem.theta, &problem.time)?;
            evolve_by_composition(&z0, &plan, CompositionMode::RevivalWhereRational)?
        }
        Method::Direct => unreachable!("direct evolution stays in the quasi basis"),
    };
    Ok(periodic_to_quasi(&z, p, &problem.theta, &problem.time)?)
}

/// Evolves the problem's initial data with its method. Non-direct methods
/// are cross-checked against direct evolution; rational-factor problems are
/// additionally checked against the finite-translate construction.
pub fn solve(problem: &Problem) -> Result<Solution, CliError> {
    let u0 = problem
        .initial
        .coefficients(&problem.theta, problem.modes)?;
    let direct = evolve_quasi(&u0, &problem.polynomial, &problem.time)?;
    let mut residuals = BTreeMap::new();
    let state = if problem.method == Method::Direct {
        direct.clone()
    } else {
        via_periodic(problem, &u0, problem.method)?
    };
    let profile = synthesize(&state, problem.grid)?;
    if problem.method != Method::Direct {
        residuals.insert(
            "coefficients_vs_direct".to_string(),
            state.max_difference(&direct)?,
        );
        let reference = synthesize(&direct, problem.grid)?;
        residuals.insert(
            "profile_vs_direct".to_string(),
            profile.max_difference(&reference)?,
        );
    }
    if let Ok(rep) = revival_representation(&problem.polynomial, &problem.theta, &problem.time) {
        let via = rep.apply(&u0)?;
        residuals.insert(
            "coefficients_vs_revival_construction".to_string(),
            via.max_difference(&direct)?,
        );
        residuals.insert(
            "revival_translates".to_string(),
            rep.combination.support(1e-14).len() as f64,
        );
    }
    residuals.insert(
        "boundary_twist".to_string(),
        boundary_twist_residual(&state),
    );

    let mut norms = BTreeMap::new();
    let n0 = parseval_norm(&u0);
    let n1 = parseval_norm(&state);
    norms.insert("initial_l2".to_string(), n0);
    norms.insert("final_l2".to_string(), n1);
    norms.insert(
        "relative_change".to_string(),
        if n0 > 0.0 { (n1 / n0 - 1.0).abs() } else { n1 },
    );
    Ok(Solution {
        profile,
        norms,
        residuals,
    })
}
