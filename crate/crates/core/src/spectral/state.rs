use num_complex::Complex64;

use super::SpectralError;
use crate::numbers::ThetaValue;

/// Which orthonormal basis a coefficient vector refers to: the periodic
/// Fourier basis `e_j(x) = e^{ijx}/√(2π)` or the quasi-periodic basis
/// `φ_j(x) = e^{i(j+θ)x}/√(2π)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Basis {
    Periodic,
    Quasi(ThetaValue),
}

impl Basis {
    pub fn theta(&self) -> Option<&ThetaValue> {
        match self {
            Basis::Periodic => None,
            Basis::Quasi(t) => Some(t),
        }
    }

    pub(crate) fn name(&self) -> &'static str {
        match self {
            Basis::Periodic => "periodic",
            Basis::Quasi(_) => "quasi-periodic",
        }
    }
}

/// Truncated coefficient vector over modes `j ∈ [-J, J]`.
#[derive(Clone, Debug, PartialEq)]
pub struct SpectralState {
    coeffs: Vec<Complex64>,
    basis: Basis,
    modes: usize,
}

impl SpectralState {
    /// `coeffs[i]` is the coefficient of mode `j = i - J`; the length must be odd.
    pub fn new(coeffs: Vec<Complex64>, basis: Basis) -> Result<Self, SpectralError> {
        if coeffs.len().is_multiple_of(2) {
            return Err(SpectralError::EvenLength(coeffs.len()));
        }
        let modes = coeffs.len() / 2;
        Ok(SpectralState {
            coeffs,
            basis,
            modes,
        })
    }

    pub fn zeros(modes: usize, basis: Basis) -> Self {
        SpectralState {
            coeffs: vec![Complex64::new(0.0, 0.0); 2 * modes + 1],
            basis,
            modes,
        }
    }

    pub fn from_fn(modes: usize, basis: Basis, f: impl FnMut(i64) -> Complex64) -> Self {
        let j0 = modes as i64;
        SpectralState {
            coeffs: (-j0..=j0).map(f).collect(),
            basis,
            modes,
        }
    }

    /// A single unit coefficient at mode `j`.
    pub fn unit(modes: usize, basis: Basis, j: i64) -> Self {
        Self::from_fn(modes, basis, |m| {
            if m == j {
                Complex64::new(1.0, 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            }
        })
    }

    /// Truncation order `J`.
    pub fn modes(&self) -> usize {
        self.modes
    }

    pub fn basis(&self) -> &Basis {
        &self.basis
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn coeff(&self, j: i64) -> Option<Complex64> {
        let i = j + self.modes as i64;
        if i < 0 {
            return None;
        }
        self.coeffs.get(i as usize).copied()
    }

    /// Iterator over `(j, c_j)`.
    pub fn iter(&self) -> impl Iterator<Item = (i64, Complex64)> + '_ {
        let j0 = self.modes as i64;
        self.coeffs
            .iter()
            .enumerate()
            .map(move |(i, &c)| (i as i64 - j0, c))
    }

    /// Same coefficients read in another basis. Re-tagging quasi as periodic
    /// is the coefficient-space form of `z(x) = e^{-iθx} u(x)`.
    pub fn retag(&self, basis: Basis) -> SpectralState {
        SpectralState {
            coeffs: self.coeffs.clone(),
            basis,
            modes: self.modes,
        }
    }

    pub fn scaled(&self, factor: Complex64) -> SpectralState {
        self.map(|_, c| c * factor)
    }

    /// Applies `f(j, c_j)` to every mode.
    pub fn map(&self, f: impl Fn(i64, Complex64) -> Complex64) -> SpectralState {
        let j0 = self.modes as i64;
        SpectralState {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(i, &c)| f(i as i64 - j0, c))
                .collect(),
            basis: self.basis,
            modes: self.modes,
        }
    }

    /// Diagonal action `c_j ← c_j · m(j)`.
    pub fn multiply(&self, multiplier: impl Fn(i64) -> Complex64) -> SpectralState {
        self.map(|j, c| c * multiplier(j))
    }

    pub fn norm(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
    }

    /// `max_j |c_j − d_j|`.
    pub fn max_difference(&self, other: &SpectralState) -> Result<f64, SpectralError> {
        if self.modes != other.modes {
            return Err(SpectralError::ShapeMismatch {
                left: self.modes,
                right: other.modes,
            });
        }
        Ok(self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }

    /// Keeps modes `|j| ≤ modes`, zero-padding when growing.
    pub fn resized(&self, modes: usize) -> SpectralState {
        Self::from_fn(modes, self.basis, |j| {
            self.coeff(j).unwrap_or(Complex64::new(0.0, 0.0))
        })
    }

    pub(crate) fn require_periodic(&self) -> Result<(), SpectralError> {
        match self.basis {
            Basis::Periodic => Ok(()),
            Basis::Quasi(_) => Err(SpectralError::BasisMismatch {
                expected: "periodic",
                found: self.basis.name(),
            }),
        }
    }

    pub(crate) fn require_quasi(&self) -> Result<ThetaValue, SpectralError> {
        match self.basis {
            Basis::Quasi(theta) => Ok(theta),
            Basis::Periodic => Err(SpectralError::BasisMismatch {
                expected: "quasi-periodic",
                found: self.basis.name(),
            }),
        }
    }
}
