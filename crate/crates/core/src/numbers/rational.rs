//! Exact rationals over `i128` with checked arithmetic.

use std::cmp::Ordering;
use std::fmt;

use twofloat::TwoFloat;

use super::NumbersError;

/// A reduced fraction `num / den` with `den > 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Rational {
    num: i128,
    den: i128,
}

pub(crate) fn gcd(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.unsigned_abs(), b.unsigned_abs());
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a as i128
}

impl Rational {
    pub const ZERO: Rational = Rational { num: 0, den: 1 };
    pub const ONE: Rational = Rational { num: 1, den: 1 };

    pub fn new(num: i128, den: i128) -> Result<Self, NumbersError> {
        if den == 0 {
            return Err(NumbersError::ZeroDenominator);
        }
        let g = gcd(num, den);
        let (mut num, mut den) = (num / g, den / g);
        if den < 0 {
            num = num.checked_neg().ok_or(NumbersError::Overflow)?;
            den = den.checked_neg().ok_or(NumbersError::Overflow)?;
        }
        Ok(Rational { num, den })
    }

    pub fn from_integer(n: i128) -> Self {
        Rational { num: n, den: 1 }
    }

    pub fn num(&self) -> i128 {
        self.num
    }

    pub fn den(&self) -> i128 {
        self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num == 0
    }

    pub fn is_integer(&self) -> bool {
        self.den == 1
    }

    pub fn checked_add(&self, rhs: &Rational) -> Result<Rational, NumbersError> {
        // Work over the lcm of the denominators to keep intermediates small.
        let g = gcd(self.den, rhs.den);
        let l = (self.den / g)
            .checked_mul(rhs.den)
            .ok_or(NumbersError::Overflow)?;
        let a = self
            .num
            .checked_mul(l / self.den)
            .ok_or(NumbersError::Overflow)?;
        let b = rhs
            .num
            .checked_mul(l / rhs.den)
            .ok_or(NumbersError::Overflow)?;
        Rational::new(a.checked_add(b).ok_or(NumbersError::Overflow)?, l)
    }

    pub fn checked_sub(&self, rhs: &Rational) -> Result<Rational, NumbersError> {
        self.checked_add(&rhs.checked_neg()?)
    }

    pub fn checked_neg(&self) -> Result<Rational, NumbersError> {
        Ok(Rational {
            num: self.num.checked_neg().ok_or(NumbersError::Overflow)?,
            den: self.den,
        })
    }

    pub fn checked_mul(&self, rhs: &Rational) -> Result<Rational, NumbersError> {
        // Cross-cancel first.
        let g1 = gcd(self.num, rhs.den);
        let g2 = gcd(rhs.num, self.den);
        let (g1, g2) = (g1.max(1), g2.max(1));
        let num = (self.num / g1)
            .checked_mul(rhs.num / g2)
            .ok_or(NumbersError::Overflow)?;
        let den = (self.den / g2)
            .checked_mul(rhs.den / g1)
            .ok_or(NumbersError::Overflow)?;
        Rational::new(num, den)
    }

    pub fn checked_mul_int(&self, k: i128) -> Result<Rational, NumbersError> {
        self.checked_mul(&Rational::from_integer(k))
    }

    pub fn checked_pow(&self, exp: u32) -> Result<Rational, NumbersError> {
        let num = self.num.checked_pow(exp).ok_or(NumbersError::Overflow)?;
        let den = self.den.checked_pow(exp).ok_or(NumbersError::Overflow)?;
        Ok(Rational { num, den })
    }

    pub fn floor(&self) -> i128 {
        self.num.div_euclid(self.den)
    }

    /// Reduction mod 1 into `[0, 1)`.
    pub fn fract(&self) -> Rational {
        Rational {
            num: self.num.rem_euclid(self.den),
            den: self.den,
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.to_twofloat().hi()
    }

    pub fn to_twofloat(&self) -> TwoFloat {
        super::div_dd(TwoFloat::from(self.num), TwoFloat::from(self.den))
    }
}

impl PartialOrd for Rational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Rational {
    fn cmp(&self, other: &Self) -> Ordering {
        match (
            self.num.checked_mul(other.den),
            other.num.checked_mul(self.den),
        ) {
            (Some(a), Some(b)) => a.cmp(&b),
            _ => self
                .to_f64()
                .partial_cmp(&other.to_f64())
                .unwrap_or(Ordering::Equal),
        }
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}
