//! The function-field analogue over Q[[X]]: the random series A_R = Σ T_{ξ_j}(1,R)X^j,
//! entropies H(A;n) of its coefficient prefixes, conditional entropies, truncated sums
//! and relation search.
//!
//! Two digit strings agree on the first l coefficients exactly when their key
//! P₁ + P₂·R truncated at l agrees, so every law here comes out of the shared
//! enumeration kernel with a truncating value module.

use num_bigint::BigInt;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactnum::rational::serde_rational;
use crate::exactnum::rational::serde_rational_vec;
use crate::exactnum::{QPoly, Rational, RationalMap};
use crate::measures::DiscreteDistribution;
use crate::selfsim::kernel::{decode, run, PolyModule, Reduction, RunOptions, RunOutput};
use crate::selfsim::{DigitPair, IfsSpec};

/// The law of the first `depth` coefficients of a random series.
#[derive(Clone, Debug, PartialEq)]
pub struct SeriesDistribution {
    map: Option<RationalMap>,
    depth: usize,
    atoms: DiscreteDistribution<Vec<Rational>>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SeriesAtom {
    #[serde(with = "serde_rational_vec")]
    pub coeffs: Vec<Rational>,
    #[serde(with = "serde_rational")]
    pub prob: Rational,
}

fn pad(mut v: Vec<Rational>, depth: usize) -> Vec<Rational> {
    v.truncate(depth);
    v.resize(depth, Rational::from_integer(0.into()));
    v
}

impl SeriesDistribution {
    /// Any law of coefficient vectors; keys are padded or cut to `depth`.
    pub fn from_atoms(depth: usize, atoms: impl IntoIterator<Item = (Vec<Rational>, Rational)>) -> Result<Self> {
        let atoms = DiscreteDistribution::new(atoms.into_iter().map(|(v, p)| (pad(v, depth), p)))?;
        Ok(SeriesDistribution { map: None, depth, atoms })
    }

    /// The first l coefficients of A_R^(n) = Σ_{j<n} T_{ξ_j}(1,R)X^j.
    pub fn truncated(r: &RationalMap, spec: &IfsSpec, n: usize, l: usize) -> Result<Self> {
        let series = r.series_prefix(l)?;
        let out = enumerate(&series, spec, n, l)?;
        let m = spec.m();
        let atoms = out
            .atoms
            .iter()
            .map(|(rep, mass)| {
                let digits = decode(*rep, m, n);
                (prefix_of(&DigitPair::from_digits(spec.forms(), &digits), &series, l), Rational::new(mass.clone(), out.denominator.clone()))
            })
            .collect();
        Ok(SeriesDistribution { map: Some(r.clone()), depth: l, atoms: DiscreteDistribution::from_map_unchecked(atoms) })
    }

    /// The first n coefficients of A_R; they depend on ξ₀..ξ_{n−1} only.
    pub fn of_map(r: &RationalMap, spec: &IfsSpec, n: usize) -> Result<Self> {
        Self::truncated(r, spec, n, n)
    }

    pub fn map(&self) -> Option<&RationalMap> {
        self.map.as_ref()
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn atoms(&self) -> &DiscreteDistribution<Vec<Rational>> {
        &self.atoms
    }

    /// H(A; k), the entropy of the first k ≤ depth coefficients.
    pub fn prefix_entropy(&self, k: usize) -> f64 {
        assert!(k <= self.depth);
        self.atoms.map(|v| v[..k].to_vec()).entropy()
    }

    /// H(A; k | k−1).
    pub fn conditional_entropy(&self, k: usize) -> f64 {
        assert!(k >= 1);
        self.prefix_entropy(k) - self.prefix_entropy(k - 1)
    }

    /// The law of A + B for independent A and B of equal depth.
    pub fn sum(&self, other: &Self) -> Result<Self> {
        if self.depth != other.depth {
            return Err(Error::invalid("series laws must have the same depth"));
        }
        Ok(SeriesDistribution { map: None, depth: self.depth, atoms: self.atoms.convolve(&other.atoms) })
    }

    pub fn to_json_atoms(&self) -> Vec<SeriesAtom> {
        self.atoms
            .iter()
            .map(|(v, p)| SeriesAtom { coeffs: v.clone(), prob: p.clone() })
            .collect()
    }
}

fn prefix_of(q: &DigitPair, series: &[Rational], l: usize) -> Vec<Rational> {
    let s = QPoly::new(series.to_vec());
    let v = &q.p1.to_qpoly() + &(&q.p2.to_qpoly() * &s);
    (0..l).map(|k| v.coeff(k)).collect()
}

fn enumerate(series: &[Rational], spec: &IfsSpec, n: usize, l: usize) -> Result<RunOutput> {
    if n == 0 {
        return Err(Error::invalid("n must be at least 1"));
    }
    let module = PolyModule::new(
        QPoly::constant(Rational::from_integer(BigInt::from(1))),
        QPoly::new(series.to_vec()),
        Reduction::Truncate(l),
    );
    run(&module, spec.forms(), spec.weights(), RunOptions { levels: n, stop_at_first_collision: false }, spec.limits())
}

/// H(A_R; n); the parameters λ, τ of `spec` are ignored.
pub fn coeff_prefix_entropy(r: &RationalMap, spec: &IfsSpec, n: usize) -> Result<f64> {
    truncated_series_entropy(r, spec, n, n)
}

/// (1/n)·H(A_R; n) for n = 1..=n_max.
pub fn ff_dim_lower_sequence(r: &RationalMap, spec: &IfsSpec, n_max: usize) -> Result<Vec<f64>> {
    (1..=n_max).map(|n| Ok(coeff_prefix_entropy(r, spec, n)? / n as f64)).collect()
}

/// H(A_R^(n); l) for l ≥ n.
pub fn truncated_series_entropy(r: &RationalMap, spec: &IfsSpec, n: usize, l: usize) -> Result<f64> {
    if l < n {
        return Err(Error::invalid("truncation depth l must be at least n"));
    }
    let series = r.series_prefix(l)?;
    Ok(*enumerate(&series, spec, n, l)?.entropies.last().unwrap())
}

/// Smallest n ≤ n_max with 0 ≠ Q ∈ Q^(n) and P₁·den(R) + P₂·num(R) = 0.
pub fn relation_search(r: &RationalMap, spec: &IfsSpec, n_max: usize) -> Result<Option<(usize, DigitPair)>> {
    if n_max == 0 {
        return Err(Error::invalid("n_max must be at least 1"));
    }
    let module = PolyModule::new(r.den().to_qpoly(), r.num().to_qpoly(), Reduction::None);
    let out = run(&module, spec.forms(), spec.weights(), RunOptions { levels: n_max, stop_at_first_collision: true }, spec.limits())?;
    Ok(out.first_collision.map(|c| {
        let a = DigitPair::from_digits(spec.forms(), &decode(c.first, spec.m(), c.level));
        let b = DigitPair::from_digits(spec.forms(), &decode(c.second, spec.m(), c.level));
        (c.level, a.sub(&b).normalized())
    }))
}

/// H(A;n|n−1), H(B;n|n−1) and the gain H(A+B;n|n−1) − H(A;n|n−1).
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct GrowthReport {
    pub h_a: f64,
    pub h_b: f64,
    pub gain: f64,
}

pub fn series_conditional_entropy_growth(a: &SeriesDistribution, b: &SeriesDistribution) -> Result<GrowthReport> {
    let n = a.depth();
    if n == 0 {
        return Err(Error::invalid("depth must be at least 1"));
    }
    let s = a.sum(b)?;
    let h_a = a.conditional_entropy(n);
    Ok(GrowthReport { h_a, h_b: b.conditional_entropy(n), gain: s.conditional_entropy(n) - h_a })
}
