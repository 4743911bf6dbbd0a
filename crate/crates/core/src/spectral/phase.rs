//! Per-mode phase factors. Arguments are reduced mod 2π before
//! exponentiation: exactly when the inputs are rational, in double-double
//! precision otherwise.

use num_complex::Complex64;
use twofloat::TwoFloat;

use crate::numbers::{
    exact_unit_phase, phase_of_fraction, quasi_eigenvalue_exact, unit_phase, Coefficient,
    DispersionPolynomial, Rational, ThetaValue, Time, TransformedPolynomial,
};

/// `e^{-i P(j+θ) t}`.
pub fn quasi_phase(p: &DispersionPolynomial, theta: &ThetaValue, j: i64, t: &Time) -> Complex64 {
    if let (Some(th), Some(tt)) = (theta.as_rational(), t.exact()) {
        if let Ok(v) = quasi_eigenvalue_exact(p, &th, j).and_then(|e| e.checked_mul(&tt)) {
            return exact_unit_phase(&v);
        }
    }
    unit_phase(p.eval_precise(TwoFloat::from(j) + theta.precise()) * t.as_turns())
}

/// `e^{-i A(j) t}`.
pub fn periodic_phase(a: &TransformedPolynomial, j: i64, t: &Time) -> Complex64 {
    if let Some(tt) = t.exact() {
        if let Ok(v) = a
            .eval_exact(&Rational::from_integer(j as i128))
            .and_then(|e| e.checked_mul(&tt))
        {
            return exact_unit_phase(&v);
        }
    }
    unit_phase(a.eval_precise(TwoFloat::from(j)) * t.as_turns())
}

fn mod_pow(base: i128, exp: u32, modulus: i128) -> i128 {
    let mut result = 1 % modulus;
    let mut b = base.rem_euclid(modulus);
    let mut e = exp;
    while e > 0 {
        if e & 1 == 1 {
            result = result * b % modulus;
        }
        b = b * b % modulus;
        e >>= 1;
    }
    result
}

/// `e^{-i j^n t}`, the symbol of the group `R_n(t)`.
pub fn monomial_phase(j: i64, n: u32, t: &Time) -> Complex64 {
    if let Some(r) = t.exact() {
        let den = r.den();
        if den < (1i128 << 62) {
            let residue = mod_pow(j as i128, n, den) * r.num().rem_euclid(den) % den;
            return phase_of_fraction(residue as f64 / den as f64);
        }
    }
    unit_phase(crate::numbers::powi_dd(TwoFloat::from(j), n) * t.as_turns())
}

/// `e^{-i c j t}` for a real coefficient `c`.
pub fn linear_phase(c: &Coefficient, j: i64, t: &Time) -> Complex64 {
    if let (Some(ce), Some(tt)) = (c.exact, t.exact()) {
        if let Ok(v) = ce
            .checked_mul_int(j as i128)
            .and_then(|v| v.checked_mul(&tt))
        {
            return exact_unit_phase(&v);
        }
    }
    unit_phase(c.approx * TwoFloat::from(j) * t.as_turns())
}

/// `e^{-i c t}` for a real coefficient `c`.
pub fn constant_phase(c: &Coefficient, t: &Time) -> Complex64 {
    linear_phase(c, 1, t)
}

/// `e^{-i j s}` for a translation by `s`.
pub fn translation_phase(j: i64, s: f64) -> Complex64 {
    let angle = -(j as f64 * s).rem_euclid(std::f64::consts::TAU);
    Complex64::new(angle.cos(), angle.sin())
}
