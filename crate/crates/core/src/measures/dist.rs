use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::rational::{self, Rational};
use crate::exactnum::QPoly;

/// Atom-count ceiling applied by default to every constructed distribution.
pub const DEFAULT_ATOM_LIMIT: usize = 20_000_000;

/// Values that can be added exactly; the value domains of convolutions.
pub trait Additive: Clone + Ord + Send + Sync {
    fn zero_like(&self) -> Self;
    fn plus(&self, other: &Self) -> Self;
}

impl Additive for Rational {
    fn zero_like(&self) -> Self {
        Rational::zero()
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
}

impl Additive for BigInt {
    fn zero_like(&self) -> Self {
        BigInt::zero()
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
}

impl Additive for i64 {
    fn zero_like(&self) -> Self {
        0
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
}

impl Additive for QPoly {
    fn zero_like(&self) -> Self {
        QPoly::zero()
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
}

/// Componentwise addition; shorter vectors are padded with zeros.
impl<T: Additive + Default> Additive for Vec<T> {
    fn zero_like(&self) -> Self {
        Vec::new()
    }
    fn plus(&self, other: &Self) -> Self {
        let n = self.len().max(other.len());
        (0..n)
            .map(|k| match (self.get(k), other.get(k)) {
                (Some(a), Some(b)) => a.plus(b),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            })
            .collect()
    }
}

/// A finitely supported probability law with exact rational weights.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiscreteDistribution<K: Ord> {
    atoms: BTreeMap<K, Rational>,
}

impl<K: Ord + Clone> DiscreteDistribution<K> {
    /// Merges repeated keys; rejects non-positive weights and totals other than 1.
    pub fn new(atoms: impl IntoIterator<Item = (K, Rational)>) -> Result<Self> {
        let mut map: BTreeMap<K, Rational> = BTreeMap::new();
        for (k, p) in atoms {
            if !p.is_positive() {
                return Err(Error::invalid("probabilities must be positive"));
            }
            *map.entry(k).or_insert_with(Rational::zero) += p;
        }
        let total: Rational = map.values().sum();
        if !total.is_one() {
            return Err(Error::invalid(format!("probabilities sum to {total}, not 1")));
        }
        Ok(DiscreteDistribution { atoms: map })
    }

    pub(crate) fn from_map_unchecked(atoms: BTreeMap<K, Rational>) -> Self {
        debug_assert!(atoms.values().sum::<Rational>().is_one());
        DiscreteDistribution { atoms }
    }

    pub fn dirac(k: K) -> Self {
        DiscreteDistribution { atoms: BTreeMap::from([(k, Rational::one())]) }
    }

    pub fn uniform(keys: impl IntoIterator<Item = K>) -> Result<Self> {
        let keys: Vec<K> = keys.into_iter().collect();
        if keys.is_empty() {
            return Err(Error::invalid("uniform law on an empty set"));
        }
        let p = Rational::new(BigInt::one(), BigInt::from(keys.len()));
        Self::new(keys.into_iter().map(|k| (k, p.clone())))
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&K, &Rational)> {
        self.atoms.iter()
    }

    pub fn atoms(&self) -> &BTreeMap<K, Rational> {
        &self.atoms
    }

    pub fn prob(&self, k: &K) -> Rational {
        self.atoms.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn check_limit(&self, limit: usize) -> Result<()> {
        if self.atoms.len() > limit {
            return Err(Error::GuardrailExceeded {
                what: "distribution atoms",
                needed: self.atoms.len() as u128,
                limit: limit as u128,
            });
        }
        Ok(())
    }

    /// Shannon entropy in nats.
    pub fn entropy(&self) -> f64 {
        shannon_entropy(self)
    }

    /// Push-forward along `f`; atoms landing on the same key merge.
    pub fn map<K2: Ord + Clone>(&self, f: impl Fn(&K) -> K2) -> DiscreteDistribution<K2> {
        let mut out: BTreeMap<K2, Rational> = BTreeMap::new();
        for (k, p) in &self.atoms {
            *out.entry(f(k)).or_insert_with(Rational::zero) += p;
        }
        DiscreteDistribution { atoms: out }
    }

    /// The mixture α·self + (1−α)·other, 0 ≤ α ≤ 1.
    pub fn mix(&self, alpha: &Rational, other: &Self) -> Result<Self> {
        if alpha.is_negative() || *alpha > Rational::one() {
            return Err(Error::invalid("mixing weight outside [0, 1]"));
        }
        let beta = Rational::one() - alpha;
        let mut out: BTreeMap<K, Rational> = BTreeMap::new();
        for (k, p) in &self.atoms {
            *out.entry(k.clone()).or_insert_with(Rational::zero) += p * alpha;
        }
        for (k, p) in &other.atoms {
            *out.entry(k.clone()).or_insert_with(Rational::zero) += p * &beta;
        }
        out.retain(|_, p| !p.is_zero());
        Ok(DiscreteDistribution { atoms: out })
    }

    /// Probabilities sorted ascending; identical multisets mean identical entropies.
    pub fn sorted_probabilities(&self) -> Vec<Rational> {
        let mut v: Vec<Rational> = self.atoms.values().cloned().collect();
        v.sort();
        v
    }
}

impl<K: Additive> DiscreteDistribution<K> {
    /// Law of X + Y for independent X ~ self and Y ~ other.
    pub fn convolve(&self, other: &Self) -> Self {
        self.convolve_limited(other, DEFAULT_ATOM_LIMIT)
            .expect("convolution exceeds the default atom limit")
    }

    pub fn convolve_limited(&self, other: &Self, limit: usize) -> Result<Self> {
        let bound = self.atoms.len() as u128 * other.atoms.len() as u128;
        if bound > limit as u128 {
            // the product bound is only an upper bound; merge and check the real count
            let out = self.convolve_raw(other);
            out.check_limit(limit)?;
            return Ok(out);
        }
        Ok(self.convolve_raw(other))
    }

    fn convolve_raw(&self, other: &Self) -> Self {
        let left: Vec<(&K, &Rational)> = self.atoms.iter().collect();
        let chunk = (left.len() / rayon::current_num_threads().max(1)).max(64);
        let partials: Vec<BTreeMap<K, Rational>> = left
            .par_chunks(chunk)
            .map(|part| {
                let mut m: BTreeMap<K, Rational> = BTreeMap::new();
                for (x, p) in part {
                    for (y, q) in &other.atoms {
                        *m.entry(x.plus(y)).or_insert_with(Rational::zero) += *p * q;
                    }
                }
                m
            })
            .collect();
        let mut out: BTreeMap<K, Rational> = BTreeMap::new();
        for part in partials {
            for (k, p) in part {
                *out.entry(k).or_insert_with(Rational::zero) += p;
            }
        }
        DiscreteDistribution { atoms: out }
    }

    /// Translate by a fixed value.
    pub fn translate(&self, a: &K) -> Self {
        self.map(|x| x.plus(a))
    }

    /// The n-fold self-convolution; n = 0 gives the point mass at zero.
    pub fn convolution_power(&self, n: usize) -> Self {
        let zero = self.atoms.keys().next().expect("nonempty").zero_like();
        let mut acc = DiscreteDistribution::dirac(zero);
        for _ in 0..n {
            acc = acc.convolve(self);
        }
        acc
    }
}

/// Shannon entropy in nats, −Σ p log p.
///
/// Atoms with equal probability are grouped and their total mass is formed exactly
/// before it meets a logarithm.
pub fn shannon_entropy<K: Ord>(nu: &DiscreteDistribution<K>) -> f64 {
    entropy_of_exact_weights(nu.atoms.values())
}

fn entropy_of_exact_weights<'a>(weights: impl Iterator<Item = &'a Rational>) -> f64 {
    let mut groups: BTreeMap<&Rational, u64> = BTreeMap::new();
    for p in weights {
        *groups.entry(p).or_insert(0) += 1;
    }
    let mut sum = NeumaierSum::default();
    for (p, count) in groups {
        if p.is_one() {
            continue;
        }
        let mass = p * Rational::from_integer(BigInt::from(count));
        sum.add(-rational::to_f64(&mass) * rational::ln_rational(p));
    }
    sum.value().max(0.0)
}

/// Entropy of masses c_i / total given as integers; equal masses are grouped.
pub fn entropy_of_integer_masses<'a>(masses: impl Iterator<Item = &'a BigInt>, total: &BigInt) -> f64 {
    let mut v: Vec<&BigInt> = masses.collect();
    v.sort_unstable();
    let ln_total = rational::ln_bigint(total);
    let mut sum = NeumaierSum::default();
    let mut i = 0;
    while i < v.len() {
        let mut j = i + 1;
        while j < v.len() && v[j] == v[i] {
            j += 1;
        }
        if v[i] != total {
            let mass = Rational::new(v[i] * BigInt::from(j - i), total.clone());
            sum.add(rational::to_f64(&mass) * (ln_total - rational::ln_bigint(v[i])));
        }
        i = j;
    }
    sum.value().max(0.0)
}

/// Compensated summation.
#[derive(Default, Clone, Copy, Debug)]
pub struct NeumaierSum {
    sum: f64,
    comp: f64,
}

impl NeumaierSum {
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

/// Entropy of a float probability vector; zero entries are skipped.
pub fn entropy_of_probabilities(ps: &[f64]) -> f64 {
    let mut s = NeumaierSum::default();
    for &p in ps {
        if p > 0.0 {
            s.add(-p * p.ln());
        }
    }
    s.value()
}

/// JSON form of a rational-valued law: `[{"value": "p/q", "prob": "p/q"}, …]`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RationalAtom {
    #[serde(with = "crate::exactnum::rational::serde_rational")]
    pub value: Rational,
    #[serde(with = "crate::exactnum::rational::serde_rational")]
    pub prob: Rational,
}

impl DiscreteDistribution<Rational> {
    pub fn to_json_atoms(&self) -> Vec<RationalAtom> {
        self.atoms
            .iter()
            .map(|(v, p)| RationalAtom { value: v.clone(), prob: p.clone() })
            .collect()
    }

    pub fn from_json_atoms(atoms: Vec<RationalAtom>) -> Result<Self> {
        Self::new(atoms.into_iter().map(|a| (a.value, a.prob)))
    }
}
