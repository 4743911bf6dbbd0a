//! Revival operators: at `t = 2πp/q` the group `R_n(t)` is the finite
//! combination `Σ_k w_k T_{2πk/q}` of translations.

use std::f64::consts::TAU;

use num_complex::Complex64;
use rustfft::FftPlanner;
use twofloat::TwoFloat;

use super::phase::monomial_phase;
use super::{SpectralError, SpectralState};
use crate::numbers::{phase_of_fraction, reduce_turns, Rational, Time};

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: u64, b: u64) -> Result<u64, SpectralError> {
    (a / gcd(a, b))
        .checked_mul(b)
        .ok_or(SpectralError::CombinationTooLarge)
}

/// `e^{2πi·r/q}` for an integer residue.
fn root_of_unity(r: u64, q: u64) -> Complex64 {
    phase_of_fraction(((q - r % q) % q) as f64 / q as f64)
}

/// The weights `w_0..w_{q-1}` of `R_n(2πp/q)`.
#[derive(Clone, Debug, PartialEq)]
pub struct RevivalWeights {
    order: u32,
    p: u64,
    q: u64,
    weights: Vec<Complex64>,
}

impl RevivalWeights {
    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn weights(&self) -> &[Complex64] {
        &self.weights
    }

    /// `Σ_k w_k e^{-2πi rk/q}`: the symbol of the combination on modes
    /// `j ≡ r (mod q)`.
    pub fn multiplier(&self, r: u64) -> Complex64 {
        let q = self.q;
        self.weights
            .iter()
            .enumerate()
            .map(|(k, &w)| w * root_of_unity(q - (r * k as u64) % q, q))
            .sum()
    }

    /// The symbols for every residue `r = 0..q-1`, by a forward DFT of the weights.
    pub fn multipliers(&self) -> Vec<Complex64> {
        let mut table = self.weights.clone();
        FftPlanner::new()
            .plan_fft_forward(self.q as usize)
            .process(&mut table);
        table
    }

    /// `max_r |Σ_k w_k e^{-2πi rk/q} − e^{-2πi r^n p/q}|`.
    pub fn residue_identity_error(&self) -> f64 {
        let t = Time::exact_turns(Rational::new(self.p as i128, self.q as i128).expect("q >= 1"));
        self.multipliers()
            .iter()
            .enumerate()
            .map(|(r, m)| (m - monomial_phase(r as i64, self.order, &t)).norm())
            .fold(0.0, f64::max)
    }

    pub fn weight_norm_sqr(&self) -> f64 {
        self.weights.iter().map(|w| w.norm_sqr()).sum()
    }
}

/// Largest denominator `q` for which revival weights are formed, and the
/// largest lattice a [`TranslateCombination`] may live on.
pub const MAX_REVIVAL_DENOMINATOR: u64 = 1 << 24;

/// `w_k = (1/q) Σ_{m=0}^{q-1} exp(2πi(−m^n p/q + mk/q))`, with `m^n` reduced
/// mod `q` before the phase is formed. The sum over `m` is an inverse DFT.
pub fn revival_weights(n: u32, p: u64, q: u64) -> Result<RevivalWeights, SpectralError> {
    if n < 2 {
        return Err(SpectralError::InvalidOrder(n));
    }
    if p == 0 || q == 0 || gcd(p, q) != 1 {
        return Err(SpectralError::NotCoprime { p, q });
    }
    if q > MAX_REVIVAL_DENOMINATOR {
        return Err(SpectralError::CombinationTooLarge);
    }
    let q128 = u128::from(q);
    let p_mod = u128::from(p % q);
    let mut weights: Vec<Complex64> = (0..q)
        .map(|m| {
            let mut acc: u128 = 1;
            let mut b = u128::from(m) % q128;
            let mut e = n;
            while e > 0 {
                if e & 1 == 1 {
                    acc = acc * b % q128;
                }
                b = b * b % q128;
                e >>= 1;
            }
            root_of_unity(((q128 - acc * p_mod % q128) % q128) as u64, q)
        })
        .collect();
    FftPlanner::new()
        .plan_fft_inverse(q as usize)
        .process(&mut weights);
    let scale = 1.0 / q as f64;
    weights.iter_mut().for_each(|w| *w *= scale);
    Ok(RevivalWeights {
        order: n,
        p,
        q,
        weights,
    })
}

/// Weights of `R_n(2π·r)` for an arbitrary signed rational turn count `r`.
pub fn revival_weights_for_turns(n: u32, r: &Rational) -> Result<RevivalWeights, SpectralError> {
    let f = r.fract();
    if f.is_zero() {
        return revival_weights(n, 1, 1);
    }
    let q = u64::try_from(f.den()).map_err(|_| SpectralError::CombinationTooLarge)?;
    revival_weights(n, f.num() as u64, q)
}

/// `state ← Σ_k w_k T_{2πk/q} state`.
pub fn apply_revival(
    state: &SpectralState,
    weights: &RevivalWeights,
) -> Result<SpectralState, SpectralError> {
    state.require_periodic()?;
    let q = weights.q();
    let table = weights.multipliers();
    Ok(state.multiply(|j| table[j.rem_euclid(q as i64) as usize]))
}

/// A finite combination `Σ_K W_K T_{2πK/Q + 2π·offset}` of translations.
#[derive(Clone, Debug, PartialEq)]
pub struct TranslateCombination {
    divisions: u64,
    weights: Vec<Complex64>,
    offset: TwoFloat,
}

impl TranslateCombination {
    pub fn identity() -> Self {
        TranslateCombination {
            divisions: 1,
            weights: vec![Complex64::new(1.0, 0.0)],
            offset: TwoFloat::from(0.0),
        }
    }

    pub fn from_weights(w: &RevivalWeights) -> Self {
        TranslateCombination {
            divisions: w.q(),
            weights: w.weights().to_vec(),
            offset: TwoFloat::from(0.0),
        }
    }

    /// A single translation by `2π·r`, placed on the lattice.
    pub fn translation(r: &Rational) -> Result<Self, SpectralError> {
        let f = r.fract();
        let q = u64::try_from(f.den()).map_err(|_| SpectralError::CombinationTooLarge)?;
        let mut weights = vec![Complex64::new(0.0, 0.0); q as usize];
        weights[f.num() as usize] = Complex64::new(1.0, 0.0);
        Ok(TranslateCombination {
            divisions: q,
            weights,
            offset: TwoFloat::from(0.0),
        })
    }

    /// A translation by `2π·turns` kept off the lattice.
    pub fn shift(turns: TwoFloat) -> Self {
        TranslateCombination {
            offset: turns,
            ..Self::identity()
        }
    }

    pub fn divisions(&self) -> u64 {
        self.divisions
    }

    pub fn weights(&self) -> &[Complex64] {
        &self.weights
    }

    /// The off-lattice part of the translation, in turns.
    pub fn offset(&self) -> TwoFloat {
        self.offset
    }

    pub fn weight_l1(&self) -> f64 {
        self.weights.iter().map(|w| w.norm()).sum()
    }

    /// Operator product; translations commute so the order is irrelevant.
    pub fn compose(&self, other: &TranslateCombination) -> Result<Self, SpectralError> {
        let l = lcm(self.divisions, other.divisions)?;
        if l > MAX_REVIVAL_DENOMINATOR {
            return Err(SpectralError::CombinationTooLarge);
        }
        let (sa, sb) = (l / self.divisions, l / other.divisions);
        let mut weights = vec![Complex64::new(0.0, 0.0); l as usize];
        for (ka, &wa) in self.weights.iter().enumerate() {
            if wa == Complex64::new(0.0, 0.0) {
                continue;
            }
            for (kb, &wb) in other.weights.iter().enumerate() {
                let k = (ka as u64 * sa + kb as u64 * sb) % l;
                weights[k as usize] += wa * wb;
            }
        }
        Ok(TranslateCombination {
            divisions: l,
            weights,
            offset: self.offset + other.offset,
        })
    }

    /// `Σ_K W_K e^{-ij(2πK/Q + 2π·offset)}`.
    pub fn multiplier(&self, j: i64) -> Complex64 {
        let q = self.divisions;
        let r = j.rem_euclid(q as i64) as u64;
        let lattice: Complex64 = self
            .weights
            .iter()
            .enumerate()
            .map(|(k, &w)| w * root_of_unity(q - (r * k as u64) % q, q))
            .sum();
        let angle = -TAU * reduce_turns(self.offset * TwoFloat::from(j));
        lattice * Complex64::new(angle.cos(), angle.sin())
    }

    pub fn apply(&self, state: &SpectralState) -> Result<SpectralState, SpectralError> {
        state.require_periodic()?;
        let q = self.divisions;
        let table: Vec<Complex64> = (0..q)
            .map(|r| {
                self.weights
                    .iter()
                    .enumerate()
                    .map(|(k, &w)| w * root_of_unity(q - (r * k as u64) % q, q))
                    .sum()
            })
            .collect();
        let offset = self.offset;
        Ok(state.multiply(|j| {
            let angle = -TAU * reduce_turns(offset * TwoFloat::from(j));
            table[j.rem_euclid(q as i64) as usize] * Complex64::new(angle.cos(), angle.sin())
        }))
    }

    /// Translation amounts `2πK/Q + 2π·offset` (mod 2π) with nonzero weight.
    pub fn support(&self, tolerance: f64) -> Vec<(f64, Complex64)> {
        let off = reduce_turns(self.offset);
        self.weights
            .iter()
            .enumerate()
            .filter(|(_, w)| w.norm() > tolerance)
            .map(|(k, &w)| {
                let turns = (k as f64 / self.divisions as f64 + off).rem_euclid(1.0);
                (TAU * turns, w)
            })
            .collect()
    }
}
