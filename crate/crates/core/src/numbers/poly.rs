//! Dispersion polynomials `P` and their periodic transforms `A`.

use twofloat::TwoFloat;

use super::{Coefficient, NumbersError, Rational, ThetaValue};

pub(crate) fn binomial(n: u32, k: u32) -> i128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut c: i128 = 1;
    for i in 0..k {
        c = c * (n - i) as i128 / (i + 1) as i128;
    }
    c
}

/// `P(λ) = Σ α_m λ^m` with integer coefficients and `α_n ≠ 0`, `n ≥ 2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DispersionPolynomial {
    alpha: Vec<i64>,
}

impl DispersionPolynomial {
    /// `alpha[m]` is the coefficient of `λ^m`.
    pub fn new(alpha: Vec<i64>) -> Result<Self, NumbersError> {
        match alpha.last() {
            None => return Err(NumbersError::OrderTooLow { order: 0, min: 2 }),
            Some(0) => return Err(NumbersError::LeadingCoefficientZero),
            Some(_) => {}
        }
        let order = alpha.len() as u32 - 1;
        if order < 2 {
            return Err(NumbersError::OrderTooLow { order, min: 2 });
        }
        Ok(DispersionPolynomial { alpha })
    }

    pub fn monomial(n: u32) -> Result<Self, NumbersError> {
        let mut alpha = vec![0; n as usize + 1];
        alpha[n as usize] = 1;
        Self::new(alpha)
    }

    pub fn alpha(&self) -> &[i64] {
        &self.alpha
    }

    pub fn coefficient(&self, m: u32) -> i64 {
        self.alpha.get(m as usize).copied().unwrap_or(0)
    }

    pub fn order(&self) -> u32 {
        self.alpha.len() as u32 - 1
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.alpha
            .iter()
            .rev()
            .fold(0.0, |acc, &a| acc * x + a as f64)
    }

    pub fn eval_precise(&self, x: TwoFloat) -> TwoFloat {
        self.alpha
            .iter()
            .rev()
            .fold(TwoFloat::from(0.0), |acc, &a| acc * x + TwoFloat::from(a))
    }

    pub fn eval_exact(&self, x: &Rational) -> Result<Rational, NumbersError> {
        self.alpha.iter().rev().try_fold(Rational::ZERO, |acc, &a| {
            acc.checked_mul(x)?
                .checked_add(&Rational::from_integer(a as i128))
        })
    }

    pub fn derivative_at(&self, x: f64) -> f64 {
        self.alpha
            .iter()
            .enumerate()
            .skip(1)
            .rev()
            .fold(0.0, |acc, (m, &a)| acc * x + (m as i64 * a) as f64)
    }

    pub fn derivative_precise(&self, x: TwoFloat) -> TwoFloat {
        self.alpha
            .iter()
            .enumerate()
            .skip(1)
            .rev()
            .fold(TwoFloat::from(0.0), |acc, (m, &a)| {
                acc * x + TwoFloat::from(m as i64 * a)
            })
    }

    pub fn derivative_exact(&self, x: &Rational) -> Result<Rational, NumbersError> {
        self.alpha
            .iter()
            .enumerate()
            .skip(1)
            .rev()
            .try_fold(Rational::ZERO, |acc, (m, &a)| {
                acc.checked_mul(x)?
                    .checked_add(&Rational::from_integer(m as i128 * a as i128))
            })
    }

    /// `P(θ)` with an exact value when θ is rational.
    pub fn value_at_theta(&self, theta: &ThetaValue) -> Coefficient {
        Coefficient {
            approx: self.eval_precise(theta.precise()),
            exact: theta.as_rational().and_then(|r| self.eval_exact(&r).ok()),
        }
    }

    /// The drift `s_θ = P'(θ)` with an exact value when θ is rational.
    pub fn drift_coefficient(&self, theta: &ThetaValue) -> Coefficient {
        Coefficient {
            approx: self.derivative_precise(theta.precise()),
            exact: theta
                .as_rational()
                .and_then(|r| self.derivative_exact(&r).ok()),
        }
    }
}

/// `A(λ) = Σ_{k=2}^{n} a_k λ^k` with `a_k = Σ_{m=k}^{n} α_m C(m,k) θ^{m-k}`,
/// equivalently `A(λ) = P(λ+θ) − P(θ) − P'(θ)λ`.
#[derive(Clone, Debug, PartialEq)]
pub struct TransformedPolynomial {
    /// Indexed by power; entries 0 and 1 are zero.
    coefficients: Vec<Coefficient>,
    theta: ThetaValue,
    source: DispersionPolynomial,
}

impl TransformedPolynomial {
    pub fn theta(&self) -> &ThetaValue {
        &self.theta
    }

    pub fn source(&self) -> &DispersionPolynomial {
        &self.source
    }

    pub fn order(&self) -> u32 {
        self.source.order()
    }

    pub fn coefficient(&self, k: u32) -> &Coefficient {
        &self.coefficients[k as usize]
    }

    pub fn coefficients(&self) -> &[Coefficient] {
        &self.coefficients
    }

    /// `a_k` as `f64`.
    pub fn a(&self, k: u32) -> f64 {
        self.coefficients
            .get(k as usize)
            .map(Coefficient::value)
            .unwrap_or(0.0)
    }

    pub fn exact_coefficients(&self) -> Option<Vec<Rational>> {
        self.coefficients.iter().map(|c| c.exact).collect()
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.coefficients
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * x + c.value())
    }

    pub fn eval_precise(&self, x: TwoFloat) -> TwoFloat {
        self.coefficients
            .iter()
            .rev()
            .fold(TwoFloat::from(0.0), |acc, c| acc * x + c.approx)
    }

    pub fn eval_exact(&self, x: &Rational) -> Result<Rational, NumbersError> {
        let coeffs = self.exact_coefficients().ok_or(NumbersError::NotRational)?;
        coeffs
            .iter()
            .rev()
            .try_fold(Rational::ZERO, |acc, c| acc.checked_mul(x)?.checked_add(c))
    }
}

pub fn eval_p(p: &DispersionPolynomial, x: f64) -> f64 {
    p.eval(x)
}

pub fn drift(p: &DispersionPolynomial, theta: &ThetaValue) -> f64 {
    p.derivative_precise(theta.precise()).hi()
}

pub fn transform_polynomial(
    p: &DispersionPolynomial,
    theta: &ThetaValue,
) -> Result<TransformedPolynomial, NumbersError> {
    let n = p.order();
    if n < 2 {
        return Err(NumbersError::OrderTooLow { order: n, min: 2 });
    }
    let exact_theta = theta.as_rational();
    let mut coefficients = vec![Coefficient::from_integer(0); n as usize + 1];
    for k in 2..=n {
        let mut approx = TwoFloat::from(0.0);
        let mut exact = exact_theta.map(|_| Rational::ZERO);
        for m in k..=n {
            let alpha = p.coefficient(m);
            if alpha == 0 {
                continue;
            }
            let c = binomial(m, k) * alpha as i128;
            approx += TwoFloat::from(c) * super::powi_dd(theta.precise(), m - k);
            exact = match (exact, exact_theta) {
                (Some(acc), Some(t)) => t
                    .checked_pow(m - k)
                    .and_then(|tp| tp.checked_mul_int(c))
                    .and_then(|term| acc.checked_add(&term))
                    .ok(),
                _ => None,
            };
        }
        coefficients[k as usize] = Coefficient { approx, exact };
    }
    Ok(TransformedPolynomial {
        coefficients,
        theta: *theta,
        source: p.clone(),
    })
}

/// The quasi-periodic eigenvalue `P(j+θ)`.
pub fn quasi_eigenvalue(p: &DispersionPolynomial, theta: &ThetaValue, j: i64) -> f64 {
    p.eval_precise(TwoFloat::from(j) + theta.precise()).hi()
}

/// `P(j+θ)` in exact arithmetic for rational θ.
pub fn quasi_eigenvalue_exact(
    p: &DispersionPolynomial,
    theta: &Rational,
    j: i64,
) -> Result<Rational, NumbersError> {
    p.eval_exact(&Rational::from_integer(j as i128).checked_add(theta)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quarter() -> ThetaValue {
        ThetaValue::rational(1, 4).unwrap()
    }

    #[test]
    fn horner_evaluation() {
        let cube = DispersionPolynomial::monomial(3).unwrap();
        assert_eq!(eval_p(&cube, 0.25), 0.015625);
        assert_eq!(cube.eval(1.25), 125.0 / 64.0);
        assert_eq!(
            cube.eval_exact(&Rational::new(5, 4).unwrap()).unwrap(),
            Rational::new(125, 64).unwrap()
        );
        let p = DispersionPolynomial::new(vec![0, 2, 0, 1]).unwrap();
        assert_eq!(p.eval(0.0), 0.0);
    }

    #[test]
    fn drift_is_derivative() {
        let cube = DispersionPolynomial::monomial(3).unwrap();
        assert_eq!(drift(&cube, &quarter()), 3.0 / 16.0);
        let square = DispersionPolynomial::monomial(2).unwrap();
        assert_eq!(drift(&square, &quarter()), 0.5);
        let p = DispersionPolynomial::new(vec![5, -3, 2, 7]).unwrap();
        let tiny = ThetaValue::decimal(1e-12).unwrap();
        assert!((drift(&p, &tiny) - -3.0).abs() < 1e-10);
    }

    #[test]
    fn transform_of_cube_at_quarter() {
        let cube = DispersionPolynomial::monomial(3).unwrap();
        let a = transform_polynomial(&cube, &quarter()).unwrap();
        assert_eq!(a.a(3), 1.0);
        assert_eq!(a.a(2), 0.75);
        assert_eq!(a.a(1), 0.0);
        assert_eq!(
            a.exact_coefficients().unwrap()[2],
            Rational::new(3, 4).unwrap()
        );
    }

    #[test]
    fn transform_of_square_is_square() {
        let square = DispersionPolynomial::monomial(2).unwrap();
        for theta in ["1/4", "sqrt(2)/4", "0.9"] {
            let a = transform_polynomial(&square, &theta.parse().unwrap()).unwrap();
            assert_eq!(a.a(2), 1.0);
            assert_eq!(a.eval(3.0), 9.0);
        }
    }

    #[test]
    fn transform_at_zero_theta_collapses() {
        let cube = DispersionPolynomial::monomial(3).unwrap();
        let zero = ThetaValue::unchecked(super::super::ThetaKind::Rational(Rational::ZERO));
        let a = transform_polynomial(&cube, &zero).unwrap();
        assert_eq!((a.a(2), a.a(3)), (0.0, 1.0));
    }

    #[test]
    fn quasi_eigenvalue_matches_split() {
        let cube = DispersionPolynomial::monomial(3).unwrap();
        assert_eq!(quasi_eigenvalue(&cube, &quarter(), 1), 125.0 / 64.0);
        assert_eq!(quasi_eigenvalue(&cube, &quarter(), 0), 1.0 / 64.0);
        let a = transform_polynomial(&cube, &quarter()).unwrap();
        let r = Rational::new(1, 4).unwrap();
        let one = Rational::ONE;
        let split = a
            .eval_exact(&one)
            .unwrap()
            .checked_add(&cube.derivative_exact(&r).unwrap())
            .unwrap()
            .checked_add(&cube.eval_exact(&r).unwrap())
            .unwrap();
        assert_eq!(split, Rational::new(125, 64).unwrap());
        assert_eq!(quasi_eigenvalue_exact(&cube, &r, 1).unwrap(), split);
    }

    #[test]
    fn constructor_rejects_bad_polynomials() {
        assert_eq!(
            DispersionPolynomial::new(vec![1, 2, 0]),
            Err(NumbersError::LeadingCoefficientZero)
        );
        assert_eq!(
            DispersionPolynomial::new(vec![1, 2]),
            Err(NumbersError::OrderTooLow { order: 1, min: 2 })
        );
        assert!(DispersionPolynomial::new(vec![]).is_err());
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(6, 3), 20);
        assert_eq!(binomial(3, 4), 0);
    }
}
