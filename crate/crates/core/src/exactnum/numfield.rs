//! Dense arithmetic in Q[X]/(m) for an irreducible integer polynomial m.
//!
//! Elements are stored as their unique remainder of degree < deg m, so equality of
//! representatives is equality in the field and hashing them is sound.

use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};

use super::poly::IntPolynomial;
use super::qpoly::QPoly;
use super::rational::Rational;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NumberField {
    min_poly: IntPolynomial,
    modulus: QPoly,
}

impl NumberField {
    pub fn new(min_poly: &IntPolynomial) -> Result<Arc<Self>> {
        match min_poly.degree() {
            None | Some(0) => Err(Error::invalid("minimal polynomial must have degree >= 1")),
            Some(_) => {
                let min_poly = min_poly.primitive_part();
                let modulus = min_poly.to_qpoly().monic();
                Ok(Arc::new(NumberField { min_poly, modulus }))
            }
        }
    }

    pub fn min_poly(&self) -> &IntPolynomial {
        &self.min_poly
    }

    pub fn degree(&self) -> usize {
        self.modulus.degree().unwrap()
    }

    pub fn reduce(&self, p: &QPoly) -> QPoly {
        if p.degree().is_some_and(|d| d >= self.degree()) {
            p.rem(&self.modulus)
        } else {
            p.clone()
        }
    }

    /// Value of an integer polynomial at the generator.
    pub fn eval_int(&self, p: &IntPolynomial) -> QPoly {
        self.reduce(&p.to_qpoly())
    }

    pub fn mul(&self, a: &QPoly, b: &QPoly) -> QPoly {
        self.reduce(&(a * b))
    }

    /// Multiplication by the generator; one reduction step at most.
    pub fn mul_gen(&self, a: &QPoly) -> QPoly {
        let d = self.degree();
        let shifted = a.shift_up(1);
        if shifted.degree() == Some(d) {
            let top = shifted.coeff(d);
            &shifted - &self.modulus.scale(&top)
        } else {
            shifted
        }
    }

    pub fn inv(&self, a: &QPoly) -> Result<QPoly> {
        if a.is_zero() {
            return Err(Error::Pole);
        }
        let (g, s, _) = a.ext_gcd(&self.modulus);
        if g.degree() != Some(0) {
            // only possible when the modulus is reducible
            return Err(Error::invalid("minimal polynomial is not irreducible"));
        }
        Ok(self.reduce(&s))
    }

    pub fn pow(&self, a: &QPoly, k: u32) -> QPoly {
        let mut acc = QPoly::constant(Rational::one());
        for _ in 0..k {
            acc = self.mul(&acc, a);
        }
        acc
    }
}

/// An element of a number field together with its field.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NumberFieldElement {
    field: Arc<NumberField>,
    rep: QPoly,
}

impl NumberFieldElement {
    pub fn new(field: Arc<NumberField>, rep: QPoly) -> Self {
        let rep = field.reduce(&rep);
        NumberFieldElement { field, rep }
    }

    pub fn from_rational(field: Arc<NumberField>, q: Rational) -> Self {
        Self::new(field, QPoly::constant(q))
    }

    pub fn generator(field: Arc<NumberField>) -> Self {
        let x = QPoly::new(vec![Rational::zero(), Rational::one()]);
        Self::new(field, x)
    }

    pub fn field(&self) -> &Arc<NumberField> {
        &self.field
    }

    pub fn rep(&self) -> &QPoly {
        &self.rep
    }

    pub fn is_zero(&self) -> bool {
        self.rep.is_zero()
    }

    /// Some(q) when the element lies in Q.
    pub fn as_rational(&self) -> Option<Rational> {
        match self.rep.degree() {
            None => Some(Rational::zero()),
            Some(0) => Some(self.rep.coeff(0)),
            _ => None,
        }
    }

    fn check(&self, other: &Self) {
        assert!(
            Arc::ptr_eq(&self.field, &other.field) || self.field == other.field,
            "number field mismatch"
        );
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check(other);
        Self { field: self.field.clone(), rep: &self.rep + &other.rep }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.check(other);
        Self { field: self.field.clone(), rep: &self.rep - &other.rep }
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check(other);
        Self { field: self.field.clone(), rep: self.field.mul(&self.rep, &other.rep) }
    }

    pub fn inv(&self) -> Result<Self> {
        Ok(Self { field: self.field.clone(), rep: self.field.inv(&self.rep)? })
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.inv()?))
    }
}

impl fmt::Display for NumberFieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.rep.is_zero() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .rep
            .coeffs()
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| match k {
                0 => format!("{c}"),
                1 => format!("({c})a"),
                _ => format!("({c})a^{k}"),
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}
