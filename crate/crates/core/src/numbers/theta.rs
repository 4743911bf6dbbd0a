//! The boundary parameter θ and its accepted textual forms.

use std::fmt;
use std::str::FromStr;

use twofloat::TwoFloat;

use super::{NumbersError, Rational};

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ThetaKind {
    Rational(Rational),
    /// `sqrt(k)/m` with `k` not a perfect square.
    Sqrt {
        k: u64,
        m: u64,
    },
    Decimal(f64),
}

/// θ ∈ (0, 1), tagged with how it was written down.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ThetaValue {
    kind: ThetaKind,
    value: f64,
    precise: TwoFloat,
}

fn integer_sqrt(k: u64) -> Option<u64> {
    let r = (k as f64).sqrt().round() as u64;
    (r.checked_mul(r) == Some(k)).then_some(r)
}

impl ThetaValue {
    pub fn rational(p: i128, q: i128) -> Result<Self, NumbersError> {
        Self::from_kind(ThetaKind::Rational(Rational::new(p, q)?))
    }

    pub fn sqrt_over(k: u64, m: u64) -> Result<Self, NumbersError> {
        if k == 0 || m == 0 {
            return Err(NumbersError::ThetaOutOfRange(0.0));
        }
        match integer_sqrt(k) {
            Some(r) => Self::rational(r as i128, m as i128),
            None => Self::from_kind(ThetaKind::Sqrt { k, m }),
        }
    }

    pub fn decimal(x: f64) -> Result<Self, NumbersError> {
        Self::from_kind(ThetaKind::Decimal(x))
    }

    /// Builds a θ without the `(0, 1)` range check. Only meant for oracles
    /// that need the degenerate θ = 0 collapse.
    pub fn unchecked(kind: ThetaKind) -> Self {
        let precise = match kind {
            ThetaKind::Rational(r) => r.to_twofloat(),
            ThetaKind::Sqrt { k, m } => super::div_dd(TwoFloat::from(k).sqrt(), TwoFloat::from(m)),
            ThetaKind::Decimal(x) => TwoFloat::from(x),
        };
        ThetaValue {
            kind,
            value: precise.hi(),
            precise,
        }
    }

    fn from_kind(kind: ThetaKind) -> Result<Self, NumbersError> {
        let theta = Self::unchecked(kind);
        if !(theta.value > 0.0 && theta.value < 1.0) {
            return Err(NumbersError::ThetaOutOfRange(theta.value));
        }
        Ok(theta)
    }

    pub fn kind(&self) -> ThetaKind {
        self.kind
    }

    pub fn value(&self) -> f64 {
        self.value
    }

    /// θ carried to roughly 106 bits.
    pub fn precise(&self) -> TwoFloat {
        self.precise
    }

    pub fn is_rational(&self) -> bool {
        matches!(self.kind, ThetaKind::Rational(_))
    }

    pub fn as_rational(&self) -> Option<Rational> {
        match self.kind {
            ThetaKind::Rational(r) => Some(r),
            _ => None,
        }
    }
}

impl fmt::Display for ThetaValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            ThetaKind::Rational(r) => write!(f, "{r}"),
            ThetaKind::Sqrt { k, m: 1 } => write!(f, "sqrt({k})"),
            ThetaKind::Sqrt { k, m } => write!(f, "sqrt({k})/{m}"),
            ThetaKind::Decimal(x) => write!(f, "{x}"),
        }
    }
}

impl FromStr for ThetaValue {
    type Err = NumbersError;

    /// Accepts `p/q`, a decimal literal, or `sqrt(k)/m`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let bad = || NumbersError::Parse(s.to_string());
        if let Some(rest) = s.strip_prefix("sqrt(") {
            let (k, tail) = rest.split_once(')').ok_or_else(bad)?;
            let k: u64 = k.trim().parse().map_err(|_| bad())?;
            let m: u64 = match tail.trim() {
                "" => 1,
                t => t
                    .strip_prefix('/')
                    .ok_or_else(bad)?
                    .trim()
                    .parse()
                    .map_err(|_| bad())?,
            };
            return Self::sqrt_over(k, m);
        }
        if let Some((p, q)) = s.split_once('/') {
            let p: i128 = p.trim().parse().map_err(|_| bad())?;
            let q: i128 = q.trim().parse().map_err(|_| bad())?;
            return Self::rational(p, q);
        }
        let is_decimal = !s.is_empty()
            && s.chars().all(|c| c.is_ascii_digit() || c == '.')
            && s.chars().filter(|&c| c == '.').count() <= 1
            && s.chars().any(|c| c.is_ascii_digit());
        if !is_decimal {
            return Err(bad());
        }
        Self::decimal(s.parse().map_err(|_| bad())?)
    }
}

/// Serialized as its textual descriptor, e.g. `"1/4"` or `"sqrt(2)/4"`.
impl serde::Serialize for ThetaValue {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> serde::Deserialize<'de> for ThetaValue {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
