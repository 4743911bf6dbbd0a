//! Factorisation of the periodic evolution `e^{-iA(j)t}` into monomial groups.

use twofloat::TwoFloat;

use super::poly::binomial;
use super::{Coefficient, DispersionPolynomial, NumbersError, Rational, ThetaValue, Time};

/// One factor `R_k(τ)` with `τ = coefficient · t`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Factor {
    pub order: u32,
    pub coefficient: Coefficient,
    pub time: Time,
}

impl Factor {
    pub fn seconds(&self) -> f64 {
        self.time.as_seconds()
    }

    pub fn is_rational(&self) -> bool {
        self.time.is_rational()
    }

    /// Signed turn count `τ/2π` when rational.
    pub fn rational_turns(&self) -> Option<Rational> {
        self.time.exact()
    }
}

/// Ordered list of group factors whose product is the periodic evolution.
/// The factors are diagonal in the Fourier basis and therefore commute.
#[derive(Clone, Debug, PartialEq)]
pub struct CompositionPlan {
    factors: Vec<Factor>,
}

impl CompositionPlan {
    pub fn factors(&self) -> &[Factor] {
        &self.factors
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn all_rational(&self) -> bool {
        self.factors.iter().all(Factor::is_rational)
    }

    /// `Σ_factors τ_f · j^{k_f}` in turns, which must equal `A(j)·t/2π`.
    pub fn total_turns(&self, j: i64) -> TwoFloat {
        self.factors.iter().fold(TwoFloat::from(0.0), |acc, f| {
            acc + f.time.as_turns() * super::powi_dd(TwoFloat::from(j), f.order)
        })
    }

    /// Same permutation-invariant plan, reordered.
    pub fn permuted(&self, order: &[usize]) -> CompositionPlan {
        CompositionPlan {
            factors: order.iter().map(|&i| self.factors[i]).collect(),
        }
    }
}

/// Factors `R_ℓ(α_ℓ t)` for `ℓ = 2..n` followed by
/// `R_k(α_{m+1} C(m+1,k) θ^{m+1-k} t)` for `m = 2..n-1`, `k = 2..m`.
pub fn composition_plan(
    p: &DispersionPolynomial,
    theta: &ThetaValue,
    t: &Time,
) -> Result<CompositionPlan, NumbersError> {
    let n = p.order();
    if n < 3 {
        return Err(NumbersError::OrderTooLow { order: n, min: 3 });
    }
    let mut factors = Vec::new();
    for l in 2..=n {
        let c = Coefficient::from_integer(p.coefficient(l) as i128);
        factors.push(Factor {
            order: l,
            coefficient: c,
            time: t.scaled(&c),
        });
    }
    let exact_theta = theta.as_rational();
    for m in 2..n {
        for k in 2..=m {
            let integer = p.coefficient(m + 1) as i128 * binomial(m + 1, k);
            let power = m + 1 - k;
            let c = Coefficient {
                approx: TwoFloat::from(integer) * super::powi_dd(theta.precise(), power),
                exact: exact_theta.and_then(|r| {
                    r.checked_pow(power)
                        .and_then(|rp| rp.checked_mul_int(integer))
                        .ok()
                }),
            };
            factors.push(Factor {
                order: k,
                coefficient: c,
                time: t.scaled(&c),
            });
        }
    }
    Ok(CompositionPlan { factors })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numbers::{transform_polynomial, RationalTime};

    fn third() -> Time {
        RationalTime::new(1, 3).unwrap().into()
    }

    #[test]
    fn cube_plan_has_two_factors() {
        let cube = DispersionPolynomial::monomial(3).unwrap();
        let theta = ThetaValue::rational(1, 4).unwrap();
        let plan = composition_plan(&cube, &theta, &third()).unwrap();
        // R2(α2 t) with α2 = 0, R3(t), then R2(3θt).
        let orders: Vec<u32> = plan.factors().iter().map(|f| f.order).collect();
        assert_eq!(orders, vec![2, 3, 2]);
        assert!(plan.factors()[0].coefficient.is_zero());
        assert_eq!(
            plan.factors()[1].rational_turns(),
            Some(Rational::new(1, 3).unwrap())
        );
        assert_eq!(
            plan.factors()[2].rational_turns(),
            Some(Rational::new(1, 4).unwrap())
        );
        assert!(plan.all_rational());
    }

    #[test]
    fn cube_plus_square_plan() {
        let p = DispersionPolynomial::new(vec![0, 0, 1, 1]).unwrap();
        let theta: ThetaValue = "sqrt(2)/4".parse().unwrap();
        let t = Time::seconds(1.0);
        let plan = composition_plan(&p, &theta, &t).unwrap();
        let summary: Vec<(u32, f64)> = plan
            .factors()
            .iter()
            .map(|f| (f.order, f.seconds()))
            .collect();
        assert_eq!(summary[0], (2, 1.0));
        assert_eq!(summary[1], (3, 1.0));
        assert_eq!(summary[2].0, 2);
        assert!((summary[2].1 - 3.0 * theta.value()).abs() < 1e-15);
        assert!(!plan.all_rational());
    }

    #[test]
    fn rejects_second_order() {
        let square = DispersionPolynomial::monomial(2).unwrap();
        let theta = ThetaValue::rational(1, 4).unwrap();
        assert_eq!(
            composition_plan(&square, &theta, &third()),
            Err(NumbersError::OrderTooLow { order: 2, min: 3 })
        );
    }

    #[test]
    fn factor_sum_reproduces_transform() {
        let p = DispersionPolynomial::new(vec![3, -1, 2, 0, -5, 1]).unwrap();
        let theta: ThetaValue = "3/7".parse().unwrap();
        let t = Time::seconds(1.0);
        let plan = composition_plan(&p, &theta, &t).unwrap();
        let a = transform_polynomial(&p, &theta).unwrap();
        for j in [-1024i64, -17, -1, 0, 1, 2, 33, 1024] {
            let lhs = plan.total_turns(j);
            let rhs = a.eval_precise(TwoFloat::from(j)) * t.as_turns();
            let scale = rhs.hi().abs().max(1.0);
            assert!(((lhs - rhs).hi() / scale).abs() < 1e-10, "j = {j}");
        }
    }
}
