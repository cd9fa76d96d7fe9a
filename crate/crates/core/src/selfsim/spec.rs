//! System descriptions: forms, weights, parameters, digit pairs and curves.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::kernel::Limits;
use crate::error::{Error, Result};
use crate::exactnum::rational::{serde_rational, serde_rational_vec};
use crate::exactnum::{AlgebraicNumber, IntPolynomial, Rational, RationalMap};

/// A coordinate λ or τ of the parameter space.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Parameter {
    Rational(#[serde(with = "serde_rational")] Rational),
    Algebraic(#[serde(with = "algebraic_json")] AlgebraicNumber),
    /// τ = Σ c_k λ^k, lowest degree first. Only meaningful for τ.
    LambdaPoly(#[serde(with = "serde_rational_vec")] Vec<Rational>),
    /// A formal symbol. Symbols satisfy no algebraic relation; equal names denote
    /// the same number.
    Transcendental(String),
}

mod algebraic_json {
    //! `{"min_poly": [...], "interval": ["lo", "hi"]}` or `{"min_poly": [...], "approx": x}`.
    use serde::{de, Deserialize, Deserializer, Serialize, Serializer};

    use crate::exactnum::rational::serde_rational_vec;
    use crate::exactnum::{AlgebraicNumber, IntPolynomial, Rational};

    #[derive(Serialize, Deserialize)]
    struct Raw {
        min_poly: IntPolynomial,
        #[serde(default, with = "opt_interval", skip_serializing_if = "Option::is_none")]
        interval: Option<Vec<Rational>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        approx: Option<f64>,
    }

    mod opt_interval {
        use super::*;

        pub fn serialize<S: Serializer>(v: &Option<Vec<Rational>>, s: S) -> Result<S::Ok, S::Error> {
            serde_rational_vec::serialize(v.as_deref().unwrap_or(&[]), s)
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Vec<Rational>>, D::Error> {
            serde_rational_vec::deserialize(d).map(Some)
        }
    }

    pub fn serialize<S: Serializer>(a: &AlgebraicNumber, s: S) -> Result<S::Ok, S::Error> {
        let (lo, hi) = a.re_interval().clone();
        Raw { min_poly: a.min_poly().clone(), interval: Some(vec![lo, hi]), approx: None }.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<AlgebraicNumber, D::Error> {
        let raw = Raw::deserialize(d)?;
        match (raw.interval, raw.approx) {
            (Some(iv), _) => {
                if iv.len() != 2 {
                    return Err(de::Error::custom("interval must be [lo, hi]"));
                }
                let [lo, hi]: [Rational; 2] = iv.try_into().unwrap();
                if lo == hi {
                    let a = AlgebraicNumber::rational(lo);
                    if !a.is_root_of(&raw.min_poly) {
                        return Err(de::Error::custom("degenerate interval is not a root"));
                    }
                    return Ok(a);
                }
                AlgebraicNumber::real_root_in(&raw.min_poly, lo, hi).map_err(de::Error::custom)
            }
            (None, Some(x)) => AlgebraicNumber::real_root_near(&raw.min_poly, x).map_err(de::Error::custom),
            (None, None) => Err(de::Error::custom("algebraic parameter needs an interval or an approx")),
        }
    }
}

impl Parameter {
    pub fn rational(q: Rational) -> Self {
        Parameter::Rational(q)
    }

    pub fn symbol(name: &str) -> Self {
        Parameter::Transcendental(name.to_string())
    }

    /// Rational and degree-one algebraic values collapse to `Some`.
    pub fn as_rational(&self) -> Option<Rational> {
        match self {
            Parameter::Rational(q) => Some(q.clone()),
            Parameter::Algebraic(a) => a.as_rational(),
            _ => None,
        }
    }

    pub fn is_symbolic(&self) -> bool {
        matches!(self, Parameter::Transcendental(_))
    }

    /// Numerical value of a real rational or algebraic parameter.
    pub fn approx_f64(&self) -> Option<f64> {
        match self {
            Parameter::Rational(q) => Some(crate::exactnum::rational::to_f64(q)),
            Parameter::Algebraic(a) if a.is_real() => Some(a.approx_f64()),
            _ => None,
        }
    }

    /// Natural log of 1/λ for an exact λ in (0, 1).
    pub fn ln_inverse(&self) -> Result<f64> {
        match self {
            Parameter::Rational(q) => Ok(-crate::exactnum::rational::ln_rational(q)),
            Parameter::Algebraic(a) => {
                let (lo, hi) = a.real_enclosure(80);
                let mid = (lo + hi) / Rational::from_integer(2.into());
                Ok(-crate::exactnum::rational::ln_rational(&mid))
            }
            _ => Err(Error::Unsupported("a numeric value of λ is required".into())),
        }
    }

    /// Checks 0 < λ < 1 for exact values.
    pub(crate) fn check_contraction(&self) -> Result<()> {
        let unit = || Error::invalid("λ must lie in (0, 1)");
        match self {
            Parameter::Rational(q) => {
                if q.is_positive() && *q < Rational::one() {
                    Ok(())
                } else {
                    Err(unit())
                }
            }
            Parameter::Algebraic(a) => {
                use std::cmp::Ordering::*;
                if a.is_real() && a.cmp_rational(&Rational::zero()) == Greater && a.cmp_rational(&Rational::one()) == Less {
                    Ok(())
                } else {
                    Err(unit())
                }
            }
            Parameter::LambdaPoly(_) => Err(Error::invalid("λ cannot be given as a polynomial in itself")),
            Parameter::Transcendental(_) => Ok(()),
        }
    }
}

impl fmt::Display for Parameter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Parameter::Rational(q) => write!(f, "{q}"),
            Parameter::Algebraic(a) => write!(f, "root of {} near {:.12}", a.min_poly(), a.approx_f64()),
            Parameter::LambdaPoly(c) => {
                let terms: Vec<String> = c.iter().enumerate().map(|(k, q)| format!("({q})λ^{k}")).collect();
                write!(f, "{}", terms.join(" + "))
            }
            Parameter::Transcendental(s) => write!(f, "{s}"),
        }
    }
}

/// The formal value P₁(λ)·Y₁ + P₂(λ)·Y₂ of a digit string or of a difference of two.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DigitPair {
    pub p1: IntPolynomial,
    pub p2: IntPolynomial,
}

impl DigitPair {
    pub fn new(p1: IntPolynomial, p2: IntPolynomial) -> Self {
        DigitPair { p1, p2 }
    }

    /// P₁ = Σ a_{ξ_k} X^k and P₂ = Σ b_{ξ_k} X^k.
    pub fn from_digits(forms: &[(i64, i64)], digits: &[usize]) -> Self {
        let p1 = IntPolynomial::new(digits.iter().map(|&j| BigInt::from(forms[j].0)).collect());
        let p2 = IntPolynomial::new(digits.iter().map(|&j| BigInt::from(forms[j].1)).collect());
        DigitPair { p1, p2 }
    }

    pub fn is_zero(&self) -> bool {
        self.p1.is_zero() && self.p2.is_zero()
    }

    pub fn sub(&self, other: &Self) -> Self {
        DigitPair { p1: &self.p1 - &other.p1, p2: &self.p2 - &other.p2 }
    }

    /// Sign chosen so that the lowest-degree nonzero coefficient, P₁ before P₂, is positive.
    pub fn normalized(self) -> Self {
        let len = self.p1.len().max(self.p2.len());
        for k in 0..len {
            for c in [self.p1.coeff(k), self.p2.coeff(k)] {
                if c.is_negative() {
                    return DigitPair { p1: -self.p1, p2: -self.p2 };
                }
                if c.is_positive() {
                    return self;
                }
            }
        }
        self
    }

    /// P₁P̃₂ − P₂P̃₁; zero exactly when the two pairs are proportional over Q(X).
    pub fn cross(&self, other: &Self) -> IntPolynomial {
        &(&self.p1 * &other.p2) - &(&self.p2 * &other.p1)
    }
}

impl fmt::Display for DigitPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.p1.is_zero(), self.p2.is_zero()) {
            (true, true) => write!(f, "0"),
            (false, true) => write!(f, "({})·Y1", self.p1),
            (true, false) => write!(f, "({})·Y2", self.p2),
            (false, false) => write!(f, "({})·Y1 + ({})·Y2", self.p1, self.p2),
        }
    }
}

/// A curve of the family Γ.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CurveSpec {
    /// The graph τ = R(λ).
    NonDegenerate(RationalMap),
    /// The vertical line λ = λ₀, for τ outside Q(λ₀).
    Degenerate(Parameter),
}

impl CurveSpec {
    pub fn validate(&self) -> Result<()> {
        match self {
            CurveSpec::NonDegenerate(_) => Ok(()),
            CurveSpec::Degenerate(p) => p.check_contraction(),
        }
    }
}

/// A homogeneous system f_j(x) = λx + a_j + b_jτ with probabilities p_j.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawSpec", into = "RawSpec")]
pub struct IfsSpec {
    forms: Vec<(i64, i64)>,
    weights: Vec<Rational>,
    lambda: Parameter,
    tau: Parameter,
    limits: Limits,
}

#[derive(Clone, Serialize, Deserialize)]
struct RawSpec {
    forms: Vec<(i64, i64)>,
    #[serde(default, with = "opt_weights", skip_serializing_if = "Option::is_none")]
    weights: Option<Vec<Rational>>,
    lambda: Parameter,
    tau: Parameter,
}

mod opt_weights {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &Option<Vec<Rational>>, s: S) -> std::result::Result<S::Ok, S::Error> {
        serde_rational_vec::serialize(v.as_deref().unwrap_or(&[]), s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Option<Vec<Rational>>, D::Error> {
        serde_rational_vec::deserialize(d).map(Some)
    }
}

impl TryFrom<RawSpec> for IfsSpec {
    type Error = Error;
    fn try_from(r: RawSpec) -> Result<Self> {
        let weights = match r.weights {
            Some(w) => w,
            None => uniform_weights(r.forms.len())?,
        };
        IfsSpec::new(r.forms, weights, r.lambda, r.tau)
    }
}

impl From<IfsSpec> for RawSpec {
    fn from(s: IfsSpec) -> Self {
        RawSpec { forms: s.forms, weights: Some(s.weights), lambda: s.lambda, tau: s.tau }
    }
}

fn uniform_weights(m: usize) -> Result<Vec<Rational>> {
    if m == 0 {
        return Err(Error::invalid("at least one map is required"));
    }
    Ok(vec![Rational::new(BigInt::one(), BigInt::from(m)); m])
}

impl IfsSpec {
    pub fn new(forms: Vec<(i64, i64)>, weights: Vec<Rational>, lambda: Parameter, tau: Parameter) -> Result<Self> {
        if forms.is_empty() {
            return Err(Error::invalid("at least one map is required"));
        }
        if forms.len() > 255 {
            return Err(Error::invalid("at most 255 maps are supported"));
        }
        let distinct: BTreeSet<&(i64, i64)> = forms.iter().collect();
        if distinct.len() != forms.len() {
            return Err(Error::invalid("the forms (a_j, b_j) must be pairwise distinct"));
        }
        if weights.len() != forms.len() {
            return Err(Error::invalid("one weight per map is required"));
        }
        if weights.iter().any(|w| !w.is_positive()) {
            return Err(Error::invalid("weights must be positive"));
        }
        if !weights.iter().sum::<Rational>().is_one() {
            return Err(Error::invalid("weights must sum to 1"));
        }
        lambda.check_contraction()?;
        Ok(IfsSpec { forms, weights, lambda, tau, limits: Limits::default() })
    }

    pub fn uniform(forms: Vec<(i64, i64)>, lambda: Parameter, tau: Parameter) -> Result<Self> {
        let w = uniform_weights(forms.len())?;
        Self::new(forms, w, lambda, tau)
    }

    /// The forms (0,0), (1,0), (0,1) with uniform weights: digit values 0, 1, τ.
    pub fn standard(lambda: Parameter, tau: Parameter) -> Result<Self> {
        Self::uniform(vec![(0, 0), (1, 0), (0, 1)], lambda, tau)
    }

    /// The forms (0,0), (1,0) with uniform weights.
    pub fn bernoulli(lambda: Parameter) -> Result<Self> {
        Self::uniform(vec![(0, 0), (1, 0)], lambda, Parameter::Rational(Rational::zero()))
    }

    pub fn with_limits(mut self, limits: Limits) -> Self {
        self.limits = limits;
        self
    }

    pub fn with_parameters(&self, lambda: Parameter, tau: Parameter) -> Result<Self> {
        lambda.check_contraction()?;
        Ok(IfsSpec { lambda, tau, ..self.clone() })
    }

    pub fn forms(&self) -> &[(i64, i64)] {
        &self.forms
    }

    pub fn weights(&self) -> &[Rational] {
        &self.weights
    }

    pub fn lambda(&self) -> &Parameter {
        &self.lambda
    }

    pub fn tau(&self) -> &Parameter {
        &self.tau
    }

    pub fn limits(&self) -> &Limits {
        &self.limits
    }

    pub fn m(&self) -> usize {
        self.forms.len()
    }

    /// L = max over i, j of a_i − a_j and b_i − b_j.
    pub fn big_l(&self) -> i64 {
        let spread = |f: fn(&(i64, i64)) -> i64| {
            let max = self.forms.iter().map(f).max().unwrap();
            let min = self.forms.iter().map(f).min().unwrap();
            max - min
        };
        spread(|x| x.0).max(spread(|x| x.1))
    }

    /// H(p) in nats.
    pub fn weight_entropy(&self) -> f64 {
        crate::measures::DiscreteDistribution::new(self.weights.iter().cloned().enumerate())
            .expect("validated weights")
            .entropy()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rational::{int, rat};

    #[test]
    fn validation() {
        let l = Parameter::Rational(rat(1, 2));
        let t = Parameter::Rational(int(2));
        assert!(IfsSpec::uniform(vec![(0, 0), (0, 0)], l.clone(), t.clone()).is_err());
        assert!(IfsSpec::new(vec![(0, 0), (1, 0)], vec![rat(1, 2), rat(1, 3)], l.clone(), t.clone()).is_err());
        assert!(IfsSpec::standard(Parameter::Rational(int(1)), t.clone()).is_err());
        assert!(IfsSpec::standard(Parameter::LambdaPoly(vec![int(0)]), t.clone()).is_err());
        let s = IfsSpec::new(vec![(0, 0), (2, 0), (0, 1), (-1, 3)], vec![rat(1, 4); 4], l, t).unwrap();
        assert_eq!(s.big_l(), 3);
    }

    #[test]
    fn json_roundtrip() {
        let text = r#"{"forms": [[0,0],[1,0],[0,1]], "weights": ["1/3","1/3","1/3"],
                       "lambda": {"rational": "1/2"}, "tau": {"rational": 2}}"#;
        let s: IfsSpec = serde_json::from_str(text).unwrap();
        assert_eq!(s.tau(), &Parameter::Rational(int(2)));
        let back: IfsSpec = serde_json::from_str(&serde_json::to_string(&s).unwrap()).unwrap();
        assert_eq!(back, s);

        let text = r#"{"forms": [[0,0],[1,0]], "lambda": {"algebraic": {"min_poly": [-1,1,1], "interval": ["0","1"]}},
                       "tau": {"transcendental": "t"}}"#;
        let s: IfsSpec = serde_json::from_str(text).unwrap();
        assert_eq!(s.weights(), &[rat(1, 2), rat(1, 2)]);
        assert!((s.lambda().approx_f64().unwrap() - 0.6180339887).abs() < 1e-9);
        let back: IfsSpec = serde_json::from_str(&serde_json::to_string(&s).unwrap()).unwrap();
        assert_eq!(back.lambda().approx_f64(), s.lambda().approx_f64());

        let near = r#"{"forms": [[0,0],[1,0]], "lambda": {"algebraic": {"min_poly": [-1,1,1], "approx": 0.6}},
                       "tau": {"lambda_poly": ["0", "1"]}}"#;
        assert!(serde_json::from_str::<IfsSpec>(near).is_ok());
        let bad = r#"{"forms": [[0,0],[1,0]], "lambda": {"rational": "3/2"}, "tau": {"rational": "0"}}"#;
        assert!(serde_json::from_str::<IfsSpec>(bad).is_err());
    }

    #[test]
    fn digit_pairs() {
        let forms = [(0, 0), (1, 0), (0, 1)];
        let a = DigitPair::from_digits(&forms, &[0, 2]);
        let b = DigitPair::from_digits(&forms, &[1, 0]);
        let q = a.sub(&b).normalized();
        assert_eq!(q, DigitPair::new(IntPolynomial::from_i64s(&[1]), IntPolynomial::from_i64s(&[0, -1])));
        assert_eq!(q.to_string(), "(1)·Y1 + (-X)·Y2");
        assert!(q.cross(&q).is_zero());
    }
}
