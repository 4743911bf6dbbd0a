//! Coefficient-space states and the linear operators acting on them:
//! diagonal evolutions, translations, the groups `R_n`, revival weights and
//! the quasi-periodic ↔ periodic correspondence.

mod evolve;
mod grid;
mod initial;
mod phase;
mod revival;
mod state;

pub use evolve::{
    apply_group, evolve_by_composition, evolve_periodic, evolve_quasi, evolve_second_order,
    periodic_to_quasi, quasi_to_periodic, revival_representation, translate, CompositionMode,
    PeriodicImage, RevivalRepresentation, REVIVAL_PREFERRED_DENOMINATOR,
};
pub use grid::{
    analyze, evaluate_at, evaluate_at_turns, grid_point, synthesize, GridProfile, ProfileMeta,
};
pub use initial::{
    box_coefficients_closed_form, box_jumps, box_profile, box_revival_profile, box_value, Jump,
};
pub use phase::{
    constant_phase, linear_phase, monomial_phase, periodic_phase, quasi_phase, translation_phase,
};
pub use revival::{
    apply_revival, revival_weights, revival_weights_for_turns, RevivalWeights,
    TranslateCombination, MAX_REVIVAL_DENOMINATOR,
};
pub use state::{Basis, SpectralState};

use crate::numbers::NumbersError;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SpectralError {
    #[error(transparent)]
    Numbers(#[from] NumbersError),
    #[error("expected a {expected} state, found {found}")]
    BasisMismatch {
        expected: &'static str,
        found: &'static str,
    },
    #[error("grid of {grid} points cannot resolve {modes} modes (need at least 2J+1)")]
    GridTooSmall { grid: usize, modes: usize },
    #[error("coefficient vector length {0} is even; expected 2J+1")]
    EvenLength(usize),
    #[error("shape mismatch: {left} vs {right} modes")]
    ShapeMismatch { left: usize, right: usize },
    #[error("group order must be at least 1 (revival weights need 2), got {0}")]
    InvalidOrder(u32),
    #[error("p = {p} and q = {q} must be positive and coprime")]
    NotCoprime { p: u64, q: u64 },
    #[error("factor R_{order} has an irrational time and cannot be applied as a revival")]
    IrrationalFactor { order: u32 },
    #[error("translation combination exceeds the supported lattice size")]
    CombinationTooLarge,
}
