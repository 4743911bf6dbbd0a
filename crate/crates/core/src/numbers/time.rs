//! Evolution times, measured in turns (units of 2π) internally.

use std::f64::consts::TAU;
use std::fmt;

use twofloat::TwoFloat;

use super::{NumbersError, Rational};

/// A rational time `t = 2π p/q` with `p, q ≥ 1` coprime.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct RationalTime {
    p: u64,
    q: u64,
}

impl RationalTime {
    /// Reduces `p/q`; zero entries are rejected.
    pub fn new(p: u64, q: u64) -> Result<Self, NumbersError> {
        if p == 0 || q == 0 {
            return Err(NumbersError::NonPositiveTime);
        }
        let g = super::rational::gcd(p as i128, q as i128) as u64;
        Ok(RationalTime { p: p / g, q: q / g })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn seconds(&self) -> f64 {
        TAU * self.p as f64 / self.q as f64
    }

    pub fn turns(&self) -> Rational {
        Rational::new(self.p as i128, self.q as i128).expect("q >= 1")
    }
}

impl fmt::Display for RationalTime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "2pi*{}/{}", self.p, self.q)
    }
}

/// A time value `t = 2π·τ`, where the turn count τ is kept in double-double
/// precision and, when known, as an exact signed rational.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Time {
    turns: TwoFloat,
    exact: Option<Rational>,
}

fn tau_precise() -> TwoFloat {
    TwoFloat::new_add(TAU, 2.449_293_598_294_706_4e-16)
}

impl Time {
    pub const ZERO: Time = Time {
        turns: TwoFloat::from_f64(0.0),
        exact: Some(Rational::ZERO),
    };

    /// `t = 2π·r` for an exact (possibly negative or zero) rational `r`.
    pub fn exact_turns(r: Rational) -> Self {
        Time {
            turns: r.to_twofloat(),
            exact: Some(r),
        }
    }

    pub fn turns(tau: f64) -> Self {
        Time {
            turns: TwoFloat::from(tau),
            exact: None,
        }
    }

    pub fn turns_precise(tau: TwoFloat) -> Self {
        Time {
            turns: tau,
            exact: None,
        }
    }

    /// Raw time in the PDE's own units.
    pub fn seconds(t: f64) -> Self {
        Self::seconds_precise(TwoFloat::from(t))
    }

    /// Raw time given in double-double precision.
    pub fn seconds_precise(t: TwoFloat) -> Self {
        Time {
            turns: super::div_dd(t, tau_precise()),
            exact: None,
        }
    }

    pub fn as_seconds(&self) -> f64 {
        (self.turns * tau_precise()).hi()
    }

    pub fn as_turns(&self) -> TwoFloat {
        self.turns
    }

    pub fn exact(&self) -> Option<Rational> {
        self.exact
    }

    pub fn is_rational(&self) -> bool {
        self.exact.is_some()
    }

    pub fn is_zero(&self) -> bool {
        self.turns.hi() == 0.0 && self.turns.lo() == 0.0
    }

    /// `c·t` for a real coefficient with an optional exact form.
    pub fn scaled(&self, coefficient: &Coefficient) -> Self {
        let exact = match (self.exact, coefficient.exact) {
            (Some(a), Some(b)) => a.checked_mul(&b).ok(),
            _ => None,
        };
        Time {
            turns: self.turns * coefficient.approx,
            exact,
        }
    }
}

impl From<RationalTime> for Time {
    fn from(t: RationalTime) -> Self {
        Time::exact_turns(t.turns())
    }
}

impl From<f64> for Time {
    /// Interprets the value as raw seconds.
    fn from(t: f64) -> Self {
        Time::seconds(t)
    }
}

impl fmt::Display for Time {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.exact {
            Some(r) => write!(f, "2pi*{r}"),
            None => write!(f, "{}", self.as_seconds()),
        }
    }
}

/// A real number carried in double-double precision, with its exact
/// rational value when one exists.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Coefficient {
    pub approx: TwoFloat,
    pub exact: Option<Rational>,
}

impl Coefficient {
    pub fn from_rational(r: Rational) -> Self {
        Coefficient {
            approx: r.to_twofloat(),
            exact: Some(r),
        }
    }

    pub fn from_integer(n: i128) -> Self {
        Self::from_rational(Rational::from_integer(n))
    }

    pub fn value(&self) -> f64 {
        self.approx.hi() + self.approx.lo()
    }

    pub fn is_zero(&self) -> bool {
        match self.exact {
            Some(r) => r.is_zero(),
            None => self.approx.hi() == 0.0,
        }
    }
}

/// Fractional part of a turn count, in `[0, 1)`.
pub fn reduce_turns(turns: TwoFloat) -> f64 {
    let f = (turns - turns.floor()).hi();
    // `hi` may round up to exactly 1 for values just below an integer.
    if f >= 1.0 {
        0.0
    } else if f < 0.0 {
        f.rem_euclid(1.0)
    } else {
        f
    }
}

/// `e^{-2πi·turns}` after reducing `turns` mod 1.
pub fn unit_phase(turns: TwoFloat) -> num_complex::Complex64 {
    phase_of_fraction(reduce_turns(turns))
}

/// `e^{-2πi·f}` for an already reduced fraction.
pub fn phase_of_fraction(f: f64) -> num_complex::Complex64 {
    let angle = -TAU * f;
    num_complex::Complex64::new(angle.cos(), angle.sin())
}

/// `e^{-2πi·r}` for an exact rational turn count.
pub fn exact_unit_phase(r: &Rational) -> num_complex::Complex64 {
    let f = r.fract();
    phase_of_fraction(f.num() as f64 / f.den() as f64)
}
