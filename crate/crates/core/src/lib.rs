//! Spectral toolkit for linear dispersive equations
//! `∂_t u = -i P(-i∂_x) u` on `[0, 2π]` with quasi-periodic boundary
//! conditions `e^{i2πθ} ∂_x^m u(0,t) = ∂_x^m u(2π,t)`.
//!
//! The quasi-periodic problem is mapped to a periodic one with dispersion
//! polynomial `A(λ) = P(λ+θ) − P(θ) − P'(θ)λ`; the periodic evolution is
//! then factorised into monomial groups `R_k(τ)`, which at rational times
//! are finite combinations of translations. [`analysis`] measures the
//! resulting revival/fractalisation behaviour and [`nls`] carries the
//! construction over to the cubic nonlinear Schrödinger equation.

pub mod analysis;
pub mod nls;
pub mod numbers;
pub mod spectral;

pub use numbers::{
    DispersionPolynomial, NumbersError, Rational, RationalTime, ThetaValue, Time,
    TransformedPolynomial,
};
pub use spectral::{Basis, GridProfile, SpectralError, SpectralState};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");
