//! Ratios of bounded-coefficient integer polynomials.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::algebraic::AlgebraicNumber;
use super::numfield::NumberFieldElement;
use super::poly::IntPolynomial;
use super::rational::Rational;
use crate::error::{Error, Result};

/// num/den with every coefficient bounded by `bound` in absolute value.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawMap")]
pub struct RationalMap {
    num: IntPolynomial,
    den: IntPolynomial,
    #[serde(with = "super::rational::serde_bigint")]
    bound: BigInt,
}

#[derive(Deserialize)]
struct RawMap {
    num: IntPolynomial,
    den: IntPolynomial,
    #[serde(default, with = "opt_bigint")]
    bound: Option<BigInt>,
}

mod opt_bigint {
    use num_bigint::BigInt;
    use serde::{Deserialize, Deserializer};

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<BigInt>, D::Error> {
        #[derive(Deserialize)]
        struct W(#[serde(with = "crate::exactnum::rational::serde_bigint")] BigInt);
        Ok(Option::<W>::deserialize(d)?.map(|w| w.0))
    }
}

impl TryFrom<RawMap> for RationalMap {
    type Error = Error;
    fn try_from(r: RawMap) -> Result<Self> {
        match r.bound {
            Some(b) => RationalMap::new(r.num, r.den, b),
            None => RationalMap::from_polys(r.num, r.den),
        }
    }
}

impl RationalMap {
    pub fn new(num: IntPolynomial, den: IntPolynomial, bound: BigInt) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::invalid("denominator is the zero polynomial"));
        }
        if !bound.is_positive() {
            return Err(Error::invalid("coefficient bound must be positive"));
        }
        if num.max_abs_coeff() > bound || den.max_abs_coeff() > bound {
            return Err(Error::invalid(format!("coefficients exceed the bound {bound}")));
        }
        Ok(RationalMap { num, den, bound })
    }

    /// Uses the smallest admissible bound.
    pub fn from_polys(num: IntPolynomial, den: IntPolynomial) -> Result<Self> {
        let bound = num.max_abs_coeff().max(den.max_abs_coeff()).max(BigInt::one());
        Self::new(num, den, bound)
    }

    pub fn from_i64s(num: &[i64], den: &[i64]) -> Result<Self> {
        Self::from_polys(IntPolynomial::from_i64s(num), IntPolynomial::from_i64s(den))
    }

    pub fn constant(c: i64) -> Self {
        Self::from_i64s(&[c], &[1]).expect("valid constant map")
    }

    pub fn num(&self) -> &IntPolynomial {
        &self.num
    }

    pub fn den(&self) -> &IntPolynomial {
        &self.den
    }

    pub fn bound(&self) -> &BigInt {
        &self.bound
    }

    pub fn is_power_series(&self) -> bool {
        !self.den.coeff(0).is_zero()
    }

    pub fn eval_rational(&self, x: &Rational) -> Result<Rational> {
        let d = self.den.eval(x);
        if d.is_zero() {
            return Err(Error::Pole);
        }
        Ok(self.num.eval(x) / d)
    }

    pub fn eval_algebraic(&self, x: &AlgebraicNumber) -> Result<NumberFieldElement> {
        let field = x.field();
        let d = NumberFieldElement::new(field.clone(), field.eval_int(&self.den));
        if d.is_zero() {
            return Err(Error::Pole);
        }
        let n = NumberFieldElement::new(field.clone(), field.eval_int(&self.num));
        n.div(&d)
    }

    /// First `n` coefficients of num/den as a formal power series.
    pub fn series_prefix(&self, n: usize) -> Result<Vec<Rational>> {
        if !self.is_power_series() {
            return Err(Error::NotPowerSeries);
        }
        Ok(series_quotient(&self.num, &self.den, n))
    }
}

/// First `n` coefficients of a/b in Q[[X]]; requires b(0) ≠ 0.
pub fn series_quotient(a: &IntPolynomial, b: &IntPolynomial, n: usize) -> Vec<Rational> {
    let b0 = Rational::from_integer(b.coeff(0));
    assert!(!b0.is_zero());
    let b0_inv = b0.recip();
    let bc: Vec<Rational> = b.coeffs().iter().map(|c| Rational::from_integer(c.clone())).collect();
    let mut out: Vec<Rational> = Vec::with_capacity(n);
    for k in 0..n {
        let mut acc = Rational::from_integer(a.coeff(k));
        for j in 1..bc.len().min(k + 1) {
            acc -= &bc[j] * &out[k - j];
        }
        out.push(acc * &b0_inv);
    }
    out
}

/// Multiplicity of `eta` as a root of `p`, by repeated exact division by its minimal polynomial.
pub fn vanishing_order(p: &IntPolynomial, eta: &AlgebraicNumber) -> usize {
    assert!(!p.is_zero(), "vanishing order of the zero polynomial");
    let m = eta.min_poly().primitive_part();
    let mut cur = p.primitive_part();
    let mut k = 0;
    while let Some(q) = cur.div_exact(&m) {
        cur = q;
        k += 1;
    }
    k
}
