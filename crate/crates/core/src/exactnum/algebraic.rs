//! Algebraic numbers given by a minimal polynomial and an isolating box.

use std::sync::Arc;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::numfield::{NumberField, NumberFieldElement};
use super::poly::IntPolynomial;
use super::qpoly::QPoly;
use super::rational::{self, Rational};
use super::sturm::{isolate_real_roots, refine_interval, RealRootInterval, SturmSequence};
use crate::error::{Error, Result};

/// A root of `min_poly` located in the closed box `re × im`.
///
/// For real numbers `im = [0, 0]` and `re` is either a degenerate interval holding the
/// exact rational value or an open interval with exactly one real root. The minimal
/// polynomial is taken as given: it is made primitive but irreducibility is the
/// caller's contract.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AlgebraicNumber {
    min_poly: IntPolynomial,
    #[serde(with = "pair")]
    re: (Rational, Rational),
    #[serde(with = "pair")]
    im: (Rational, Rational),
    real: bool,
}

mod pair {
    use super::Rational;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(p: &(Rational, Rational), s: S) -> Result<S::Ok, S::Error> {
        vec![crate::exactnum::format_rational(&p.0), crate::exactnum::format_rational(&p.1)].serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<(Rational, Rational), D::Error> {
        let v: Vec<String> = Vec::deserialize(d)?;
        if v.len() != 2 {
            return Err(serde::de::Error::custom("expected [lo, hi]"));
        }
        let lo = crate::exactnum::parse_rational(&v[0]).map_err(serde::de::Error::custom)?;
        let hi = crate::exactnum::parse_rational(&v[1]).map_err(serde::de::Error::custom)?;
        Ok((lo, hi))
    }
}

impl AlgebraicNumber {
    pub fn rational(q: Rational) -> Self {
        let min_poly = IntPolynomial::new(vec![-q.numer().clone(), q.denom().clone()]);
        AlgebraicNumber {
            min_poly,
            re: (q.clone(), q),
            im: (Rational::zero(), Rational::zero()),
            real: true,
        }
    }

    /// The unique real root of `min_poly` in the open interval (lo, hi).
    pub fn real_root_in(min_poly: &IntPolynomial, lo: Rational, hi: Rational) -> Result<Self> {
        let min_poly = min_poly.primitive_part();
        if min_poly.degree().unwrap_or(0) == 0 {
            return Err(Error::invalid("minimal polynomial must be non-constant"));
        }
        if lo >= hi {
            return Err(Error::invalid("empty isolating interval"));
        }
        let q = min_poly.to_qpoly();
        if min_poly.degree() == Some(1) {
            let root = -q.coeff(0) / q.coeff(1);
            if root > lo && root < hi {
                return Ok(Self::rational(root));
            }
            return Err(Error::invalid("interval does not contain the root"));
        }
        let s = SturmSequence::new(&q);
        if s.count_open(&lo, &hi) != 1 {
            return Err(Error::invalid("interval does not isolate exactly one real root"));
        }
        let iv = RealRootInterval::Open(lo, hi);
        // shrink once so both endpoints are non-roots
        let iv = match iv {
            RealRootInterval::Open(ref a, ref b) if q.eval(a).is_zero() || q.eval(b).is_zero() => {
                let roots = isolate_real_roots(&q);
                roots
                    .into_iter()
                    .find(|r| match r {
                        RealRootInterval::Open(x, y) => x >= a && y <= b,
                        RealRootInterval::Exact(x) => x > a && x < b,
                    })
                    .ok_or_else(|| Error::invalid("could not isolate root"))?
            }
            other => other,
        };
        Ok(Self::from_interval(min_poly, iv))
    }

    /// All real roots of `min_poly`, ascending.
    pub fn real_roots(min_poly: &IntPolynomial) -> Vec<Self> {
        let min_poly = min_poly.primitive_part();
        isolate_real_roots(&min_poly.to_qpoly())
            .into_iter()
            .map(|iv| Self::from_interval(min_poly.clone(), iv))
            .collect()
    }

    /// The real root of `min_poly` nearest to `approx`; used by the parameter parser.
    pub fn real_root_near(min_poly: &IntPolynomial, approx: f64) -> Result<Self> {
        Self::real_roots(min_poly)
            .into_iter()
            .min_by(|a, b| {
                (a.approx_f64() - approx)
                    .abs()
                    .partial_cmp(&(b.approx_f64() - approx).abs())
                    .unwrap()
            })
            .ok_or_else(|| Error::invalid("minimal polynomial has no real root"))
    }

    fn from_interval(min_poly: IntPolynomial, iv: RealRootInterval) -> Self {
        let re = match iv {
            RealRootInterval::Exact(x) => {
                return Self::rational(x);
            }
            RealRootInterval::Open(a, b) => (a, b),
        };
        AlgebraicNumber { min_poly, re, im: (Rational::zero(), Rational::zero()), real: true }
    }

    /// Box constructor for non-real roots; the caller certifies isolation.
    pub fn from_box(min_poly: IntPolynomial, re: (Rational, Rational), im: (Rational, Rational)) -> Self {
        let real = im.0.is_zero() && im.1.is_zero();
        AlgebraicNumber { min_poly: min_poly.primitive_part(), re, im, real }
    }

    pub fn min_poly(&self) -> &IntPolynomial {
        &self.min_poly
    }

    pub fn degree(&self) -> usize {
        self.min_poly.degree().unwrap()
    }

    pub fn is_real(&self) -> bool {
        self.real
    }

    pub fn re_interval(&self) -> &(Rational, Rational) {
        &self.re
    }

    pub fn im_interval(&self) -> &(Rational, Rational) {
        &self.im
    }

    pub fn as_rational(&self) -> Option<Rational> {
        if self.degree() == 1 {
            let q = self.min_poly.to_qpoly();
            Some(-q.coeff(0) / q.coeff(1))
        } else {
            None
        }
    }

    /// A real number with isolating interval of width ≤ `width`.
    pub fn refined(&self, width: &Rational) -> Self {
        if !self.real || self.re.0 == self.re.1 {
            return self.clone();
        }
        let iv = RealRootInterval::Open(self.re.0.clone(), self.re.1.clone());
        Self::from_interval(self.min_poly.clone(), refine_interval(&self.min_poly.to_qpoly(), &iv, width))
    }

    /// Rational lower and upper bounds of a real number, width ≤ 2^-bits.
    pub fn real_enclosure(&self, bits: u32) -> (Rational, Rational) {
        assert!(self.real, "real enclosure of a non-real algebraic number");
        let w = Rational::new(BigInt::one(), BigInt::one() << bits);
        let r = self.refined(&w);
        r.re
    }

    pub fn approx(&self) -> Complex64 {
        let two = Rational::from_integer(2.into());
        if self.real {
            let r = self.refined(&Rational::new(BigInt::one(), BigInt::one() << 60));
            return Complex64::new(rational::to_f64(&((&r.re.0 + &r.re.1) / &two)), 0.0);
        }
        Complex64::new(
            rational::to_f64(&((&self.re.0 + &self.re.1) / &two)),
            rational::to_f64(&((&self.im.0 + &self.im.1) / &two)),
        )
    }

    pub fn approx_f64(&self) -> f64 {
        self.approx().re
    }

    pub fn field(&self) -> Arc<NumberField> {
        NumberField::new(&self.min_poly).expect("degree >= 1")
    }

    pub fn as_field_element(&self) -> NumberFieldElement {
        NumberFieldElement::generator(self.field())
    }

    /// Exact test P(self) = 0.
    pub fn is_root_of(&self, p: &IntPolynomial) -> bool {
        self.field().eval_int(p).is_zero()
    }

    /// Exact comparison of this real number with a rational.
    pub fn cmp_rational(&self, q: &Rational) -> std::cmp::Ordering {
        use std::cmp::Ordering;
        assert!(self.real);
        if let Some(x) = self.as_rational() {
            return x.cmp(q);
        }
        // degree >= 2 and irreducible, so self != q and refinement terminates
        let mut w = (&self.re.1 - &self.re.0) / Rational::from_integer(4.into());
        loop {
            let r = self.refined(&w);
            if *q <= r.re.0 {
                return Ordering::Greater;
            }
            if *q >= r.re.1 {
                return Ordering::Less;
            }
            w /= Rational::from_integer(1024.into());
        }
    }

    /// Rational lower bound of |self - q| for a real self distinct from q.
    pub fn distance_lower_bound(&self, q: &Rational, bits: u32) -> Rational {
        let (lo, hi) = self.real_enclosure(bits);
        if *q <= lo {
            lo - q
        } else if *q >= hi {
            q - hi
        } else {
            Rational::zero()
        }
    }

    /// Evaluates an integer polynomial at this number as a field element.
    pub fn eval_int(&self, p: &IntPolynomial) -> QPoly {
        self.field().eval_int(p)
    }

    pub fn is_positive_real(&self) -> bool {
        self.real && (self.re.0.is_positive() || self.as_rational().is_some_and(|x| x.is_positive()))
    }
}
