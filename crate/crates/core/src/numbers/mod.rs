//! Exact and extended-precision arithmetic for the dispersion data: rationals,
//! θ descriptors, evolution times, the polynomials `P` and `A`, the drift
//! `s_θ = P'(θ)` and composition plans.
//!
//! Everything here is an immutable value type.

mod plan;
mod poly;
mod rational;
mod theta;
mod time;

pub use plan::{composition_plan, CompositionPlan, Factor};
pub use poly::{
    drift, eval_p, quasi_eigenvalue, quasi_eigenvalue_exact, transform_polynomial,
    DispersionPolynomial, TransformedPolynomial,
};
pub use rational::Rational;
pub use theta::{ThetaKind, ThetaValue};
pub use time::{
    exact_unit_phase, phase_of_fraction, reduce_turns, unit_phase, Coefficient, RationalTime, Time,
};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum NumbersError {
    #[error("integer overflow in exact arithmetic")]
    Overflow,
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("cannot parse `{0}`: expected p/q, a decimal literal, or sqrt(k)/m")]
    Parse(String),
    #[error("theta must lie strictly between 0 and 1, got {0}")]
    ThetaOutOfRange(f64),
    #[error("rational time needs positive p and q")]
    NonPositiveTime,
    #[error("leading coefficient of the dispersion polynomial is zero")]
    LeadingCoefficientZero,
    #[error("polynomial order {order} is below the minimum {min}")]
    OrderTooLow { order: u32, min: u32 },
    #[error("value has no exact rational form")]
    NotRational,
}

/// `x^n` by repeated squaring in double-double arithmetic (`x^0 = 1`).
pub fn powi_dd(x: twofloat::TwoFloat, n: u32) -> twofloat::TwoFloat {
    let mut acc = twofloat::TwoFloat::from(1.0);
    let mut base = x;
    let mut e = n;
    while e > 0 {
        if e & 1 == 1 {
            acc *= base;
        }
        base *= base;
        e >>= 1;
    }
    acc
}

/// `a / b` in double-double arithmetic by long division with two correction
/// steps. `TwoFloat`'s own `TwoFloat / TwoFloat` loses the low word, so every
/// extended-precision quotient in this crate goes through here.
pub fn div_dd(a: twofloat::TwoFloat, b: twofloat::TwoFloat) -> twofloat::TwoFloat {
    let q1 = a.hi() / b.hi();
    let r = a - b * q1;
    let q2 = r.hi() / b.hi();
    let r = r - b * q2;
    let q3 = r.hi() / b.hi();
    twofloat::TwoFloat::new_add(q1, q2) + q3
}
