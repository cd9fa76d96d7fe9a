//! Level-by-level enumeration of digit sums with exact merging.
//!
//! Level k is built from level k−1 by A ↦ T_j + λ·A, so two digit strings share an
//! atom exactly when their values agree in the chosen value module. Every atom keeps
//! its integer mass over the common denominator D^k and the smallest digit string of
//! its class, encoded in base m with ξ₀ as the most significant digit.

use std::collections::HashMap;
use std::hash::Hash;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exactnum::{NumberField, QPoly, Rational};
use crate::measures::entropy_of_integer_masses;

/// Exact value arithmetic for digit sums T_j(1,τ)λ^k.
pub trait DigitModule: Sync {
    type Elem: Clone + Eq + Hash + Send + Sync;
    fn zero(&self) -> Self::Elem;
    /// The value of T(1,τ) = a + bτ.
    fn digit(&self, a: i64, b: i64) -> Self::Elem;
    /// Multiplication by λ.
    fn shift(&self, x: &Self::Elem) -> Self::Elem;
    fn add(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem;
}

/// Both parameters rational.
pub struct RationalModule {
    pub lambda: Rational,
    pub tau: Rational,
}

impl DigitModule for RationalModule {
    type Elem = Rational;
    fn zero(&self) -> Rational {
        Rational::zero()
    }
    fn digit(&self, a: i64, b: i64) -> Rational {
        Rational::from_integer(a.into()) + &self.tau * Rational::from_integer(b.into())
    }
    fn shift(&self, x: &Rational) -> Rational {
        x * &self.lambda
    }
    fn add(&self, x: &Rational, y: &Rational) -> Rational {
        x + y
    }
}

/// λ and τ in one number field, elements kept as reduced remainders.
pub struct FieldModule {
    field: Arc<NumberField>,
    lambda: QPoly,
    tau: QPoly,
    lambda_is_gen: bool,
}

impl FieldModule {
    pub fn new(field: Arc<NumberField>, lambda: QPoly, tau: QPoly) -> Self {
        let lambda = field.reduce(&lambda);
        let tau = field.reduce(&tau);
        let lambda_is_gen = field.degree() > 1 && lambda == QPoly::new(vec![Rational::zero(), Rational::one()]);
        FieldModule { field, lambda, tau, lambda_is_gen }
    }
}

impl DigitModule for FieldModule {
    type Elem = QPoly;
    fn zero(&self) -> QPoly {
        QPoly::zero()
    }
    fn digit(&self, a: i64, b: i64) -> QPoly {
        let a = QPoly::constant(Rational::from_integer(a.into()));
        &a + &self.tau.scale(&Rational::from_integer(b.into()))
    }
    fn shift(&self, x: &QPoly) -> QPoly {
        if self.lambda_is_gen {
            self.field.mul_gen(x)
        } else {
            self.field.mul(x, &self.lambda)
        }
    }
    fn add(&self, x: &QPoly, y: &QPoly) -> QPoly {
        x + y
    }
}

/// Keeps the Y₁ and Y₂ parts apart: the value P₁(λ) + τP₂(λ) for a free symbol τ.
pub struct PairModule<M>(pub M);

impl<M: DigitModule> DigitModule for PairModule<M> {
    type Elem = (M::Elem, M::Elem);
    fn zero(&self) -> Self::Elem {
        (self.0.zero(), self.0.zero())
    }
    fn digit(&self, a: i64, b: i64) -> Self::Elem {
        (self.0.digit(a, 0), self.0.digit(b, 0))
    }
    fn shift(&self, x: &Self::Elem) -> Self::Elem {
        (self.0.shift(&x.0), self.0.shift(&x.1))
    }
    fn add(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem {
        (self.0.add(&x.0, &y.0), self.0.add(&x.1, &y.1))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Reduction {
    None,
    /// Keep the first l coefficients.
    Truncate(usize),
    /// Remainder modulo a fixed polynomial.
    Modulo(QPoly),
}

impl Reduction {
    fn apply(&self, p: QPoly) -> QPoly {
        match self {
            Reduction::None => p,
            Reduction::Truncate(l) => p.truncate(*l),
            Reduction::Modulo(m) => {
                if p.degree() >= m.degree() {
                    p.rem(m)
                } else {
                    p
                }
            }
        }
    }
}

/// Symbolic λ = X: the value of a digit string is P₁·y₁ + P₂·y₂ in Q[X], reduced.
pub struct PolyModule {
    y1: QPoly,
    y2: QPoly,
    reduction: Reduction,
}

impl PolyModule {
    pub fn new(y1: QPoly, y2: QPoly, reduction: Reduction) -> Self {
        let y1 = reduction.apply(y1);
        let y2 = reduction.apply(y2);
        PolyModule { y1, y2, reduction }
    }
}

impl DigitModule for PolyModule {
    type Elem = QPoly;
    fn zero(&self) -> QPoly {
        QPoly::zero()
    }
    fn digit(&self, a: i64, b: i64) -> QPoly {
        let s = &self.y1.scale(&Rational::from_integer(a.into())) + &self.y2.scale(&Rational::from_integer(b.into()));
        self.reduction.apply(s)
    }
    fn shift(&self, x: &QPoly) -> QPoly {
        self.reduction.apply(x.shift_up(1))
    }
    fn add(&self, x: &QPoly, y: &QPoly) -> QPoly {
        x + y
    }
}

/// Symbolic λ with algebraic τ: polynomials in X over Q(τ), coefficients as remainders.
pub struct PolyOverFieldModule {
    field: Arc<NumberField>,
    tau: QPoly,
}

impl PolyOverFieldModule {
    pub fn new(field: Arc<NumberField>, tau: QPoly) -> Self {
        let tau = field.reduce(&tau);
        PolyOverFieldModule { field, tau }
    }
}

fn trim(mut v: Vec<QPoly>) -> Vec<QPoly> {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    v
}

impl DigitModule for PolyOverFieldModule {
    type Elem = Vec<QPoly>;
    fn zero(&self) -> Vec<QPoly> {
        Vec::new()
    }
    fn digit(&self, a: i64, b: i64) -> Vec<QPoly> {
        let a = QPoly::constant(Rational::from_integer(a.into()));
        let c = self.field.reduce(&(&a + &self.tau.scale(&Rational::from_integer(b.into()))));
        trim(vec![c])
    }
    fn shift(&self, x: &Vec<QPoly>) -> Vec<QPoly> {
        if x.is_empty() {
            return Vec::new();
        }
        let mut v = Vec::with_capacity(x.len() + 1);
        v.push(QPoly::zero());
        v.extend(x.iter().cloned());
        v
    }
    fn add(&self, x: &Vec<QPoly>, y: &Vec<QPoly>) -> Vec<QPoly> {
        let n = x.len().max(y.len());
        let zero = QPoly::zero();
        trim((0..n).map(|k| x.get(k).unwrap_or(&zero) + y.get(k).unwrap_or(&zero)).collect())
    }
}

/// Resource ceilings for enumeration.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Maximum number of merged atoms at any level.
    pub atoms: usize,
    /// Maximum number m^n of raw digit strings.
    pub raw_strings: u128,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { atoms: crate::measures::DEFAULT_ATOM_LIMIT, raw_strings: 4_782_969 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RunOptions {
    pub levels: usize,
    /// Stop after the first level at which two strings merge.
    pub stop_at_first_collision: bool,
}

/// Two distinct digit strings of the same value, both encoded in base m.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Collision {
    pub level: usize,
    pub first: u128,
    pub second: u128,
}

#[derive(Clone, Debug)]
pub struct RunOutput {
    /// H(A^(k)) for k = 1..=levels_done.
    pub entropies: Vec<f64>,
    pub first_collision: Option<Collision>,
    /// (smallest string, integer mass) per atom of the last level, sorted by string.
    pub atoms: Vec<(u128, BigInt)>,
    /// D^levels_done.
    pub denominator: BigInt,
    pub levels_done: usize,
}

struct Atom<E> {
    key: E,
    mass: BigInt,
    rep: u128,
}

struct Cell {
    mass: BigInt,
    first: u128,
    second: Option<u128>,
}

impl Cell {
    fn push(&mut self, r: u128) {
        if r < self.first {
            self.second = Some(self.first);
            self.first = r;
        } else if r != self.first && self.second.is_none_or(|s| r < s) {
            self.second = Some(r);
        }
    }

    fn absorb(&mut self, other: Cell) {
        self.mass += other.mass;
        self.push(other.first);
        if let Some(s) = other.second {
            self.push(s);
        }
    }
}

/// Integer numerators of the weights over their least common denominator.
pub fn integer_weights(weights: &[Rational]) -> (Vec<BigInt>, BigInt) {
    let d = weights
        .iter()
        .fold(BigInt::one(), |acc, w| num_integer::Integer::lcm(&acc, w.denom()));
    let nums = weights.iter().map(|w| (w * Rational::from_integer(d.clone())).to_integer()).collect();
    (nums, d)
}

pub fn raw_count(m: usize, n: usize, limits: &Limits) -> Result<u128> {
    let count = (m as u128).checked_pow(n as u32);
    match count {
        Some(c) if c <= limits.raw_strings => Ok(c),
        _ => Err(Error::GuardrailExceeded {
            what: "raw digit strings",
            needed: count.unwrap_or(u128::MAX),
            limit: limits.raw_strings,
        }),
    }
}

/// Digits ξ₀..ξ_{n−1} of an encoded string.
pub fn decode(mut rep: u128, m: usize, n: usize) -> Vec<usize> {
    let mut out = vec![0; n];
    for k in (0..n).rev() {
        out[k] = (rep % m as u128) as usize;
        rep /= m as u128;
    }
    out
}

pub fn encode(digits: &[usize], m: usize) -> u128 {
    digits.iter().fold(0u128, |acc, &d| acc * m as u128 + d as u128)
}

fn step<M: DigitModule>(
    module: &M,
    digits: &[M::Elem],
    w: &[BigInt],
    atoms: &[Atom<M::Elem>],
    place: u128,
) -> HashMap<M::Elem, Cell> {
    let chunk = (atoms.len() / (4 * rayon::current_num_threads().max(1))).max(256);
    atoms
        .par_chunks(chunk)
        .map(|part| {
            let mut map: HashMap<M::Elem, Cell> = HashMap::with_capacity(part.len() * digits.len());
            for a in part {
                let s = module.shift(&a.key);
                for (j, d) in digits.iter().enumerate() {
                    let cell = Cell { mass: &a.mass * &w[j], first: j as u128 * place + a.rep, second: None };
                    match map.entry(module.add(d, &s)) {
                        std::collections::hash_map::Entry::Occupied(mut e) => e.get_mut().absorb(cell),
                        std::collections::hash_map::Entry::Vacant(e) => {
                            e.insert(cell);
                        }
                    }
                }
            }
            map
        })
        .reduce(HashMap::new, |mut a, b| {
            let (mut big, small) = if a.len() >= b.len() { (std::mem::take(&mut a), b) } else { (b, a) };
            for (k, c) in small {
                match big.entry(k) {
                    std::collections::hash_map::Entry::Occupied(mut e) => e.get_mut().absorb(c),
                    std::collections::hash_map::Entry::Vacant(e) => {
                        e.insert(c);
                    }
                }
            }
            big
        })
}

/// Runs the recursion for `opts.levels` levels over the given forms and weights.
pub fn run<M: DigitModule>(
    module: &M,
    forms: &[(i64, i64)],
    weights: &[Rational],
    opts: RunOptions,
    limits: &Limits,
) -> Result<RunOutput> {
    let m = forms.len();
    let digits: Vec<M::Elem> = forms.iter().map(|&(a, b)| module.digit(a, b)).collect();
    let (w, d) = integer_weights(weights);
    let mut atoms = vec![Atom { key: module.zero(), mass: BigInt::one(), rep: 0 }];
    let mut denominator = BigInt::one();
    let mut entropies = Vec::with_capacity(opts.levels);
    let mut first_collision = None;
    let mut place: u128 = 1;
    for level in 1..=opts.levels {
        raw_count(m, level, limits)?;
        let cells = step(module, &digits, &w, &atoms, place);
        if cells.len() > limits.atoms {
            return Err(Error::GuardrailExceeded {
                what: "distribution atoms",
                needed: cells.len() as u128,
                limit: limits.atoms as u128,
            });
        }
        denominator *= &d;
        place *= m as u128;
        if first_collision.is_none() {
            first_collision = cells
                .values()
                .filter_map(|c| c.second.map(|s| (c.first, s)))
                .min()
                .map(|(first, second)| Collision { level, first, second });
        }
        atoms = cells.into_iter().map(|(key, c)| Atom { key, mass: c.mass, rep: c.first }).collect();
        entropies.push(entropy_of_integer_masses(atoms.iter().map(|a| &a.mass), &denominator));
        if opts.stop_at_first_collision && first_collision.is_some() {
            break;
        }
    }
    let levels_done = entropies.len();
    let mut out: Vec<(u128, BigInt)> = atoms.into_iter().map(|a| (a.rep, a.mass)).collect();
    out.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(RunOutput { entropies, first_collision, atoms: out, denominator, levels_done })
}

/// Every class of the level-n partition with at least two strings, each sorted ascending.
pub fn collision_classes<M: DigitModule>(
    module: &M,
    forms: &[(i64, i64)],
    n: usize,
    limits: &Limits,
) -> Result<Vec<Vec<u128>>> {
    let m = forms.len();
    let total = raw_count(m, n, limits)?;
    let digits: Vec<M::Elem> = forms.iter().map(|&(a, b)| module.digit(a, b)).collect();
    let keys: Vec<(M::Elem, u128)> = (0..total)
        .into_par_iter()
        .map(|rep| {
            let mut acc = module.zero();
            for &j in decode(rep, m, n).iter().rev() {
                acc = module.add(&digits[j], &module.shift(&acc));
            }
            (acc, rep)
        })
        .collect();
    let mut by_key: HashMap<M::Elem, Vec<u128>> = HashMap::new();
    for (k, rep) in keys {
        by_key.entry(k).or_default().push(rep);
    }
    let mut classes: Vec<Vec<u128>> = by_key.into_values().filter(|v| v.len() > 1).collect();
    for c in &mut classes {
        c.sort_unstable();
    }
    classes.sort();
    Ok(classes)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rational::{int, rat};

    fn standard() -> (Vec<(i64, i64)>, Vec<Rational>) {
        (vec![(0, 0), (1, 0), (0, 1)], vec![rat(1, 3); 3])
    }

    #[test]
    fn rational_point_level_two() {
        let (f, w) = standard();
        let m = RationalModule { lambda: rat(1, 2), tau: int(2) };
        let out = run(&m, &f, &w, RunOptions { levels: 2, stop_at_first_collision: false }, &Limits::default()).unwrap();
        let mut masses: Vec<i64> = out.atoms.iter().map(|a| i64::try_from(&a.1).unwrap()).collect();
        masses.sort();
        assert_eq!(masses, vec![1, 1, 1, 1, 1, 2, 2]);
        assert_eq!(out.denominator, BigInt::from(9));
        let c = out.first_collision.unwrap();
        assert_eq!((c.level, decode(c.first, 3, 2), decode(c.second, 3, 2)), (2, vec![0, 2], vec![1, 0]));
    }

    #[test]
    fn symbolic_pair_is_free() {
        let (f, w) = standard();
        let m = PairModule(PolyModule::new(QPoly::constant(int(1)), QPoly::zero(), Reduction::None));
        let out = run(&m, &f, &w, RunOptions { levels: 3, stop_at_first_collision: false }, &Limits::default()).unwrap();
        assert_eq!(out.atoms.len(), 27);
        assert!(out.first_collision.is_none());
        assert!((out.entropies[2] - 3.0 * 3f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn classes_agree_with_run() {
        let (f, _) = standard();
        let m = RationalModule { lambda: rat(1, 2), tau: int(2) };
        let classes = collision_classes(&m, &f, 2, &Limits::default()).unwrap();
        assert_eq!(classes, vec![vec![encode(&[0, 2], 3), encode(&[1, 0], 3)], vec![encode(&[1, 2], 3), encode(&[2, 0], 3)]]);
    }

    #[test]
    fn guardrails() {
        let (f, w) = standard();
        let m = RationalModule { lambda: rat(1, 7), tau: rat(1, 11) };
        let tight = Limits { atoms: 10, raw_strings: 1000 };
        let e = run(&m, &f, &w, RunOptions { levels: 3, stop_at_first_collision: false }, &tight);
        assert!(matches!(e, Err(Error::GuardrailExceeded { what: "distribution atoms", .. })));
        let e = run(&m, &f, &w, RunOptions { levels: 7, stop_at_first_collision: false }, &Limits { atoms: 10_000, raw_strings: 1000 });
        assert!(matches!(e, Err(Error::GuardrailExceeded { what: "raw digit strings", .. })));
    }

    #[test]
    fn codec_roundtrip() {
        let ds = vec![2, 0, 1, 1, 2];
        assert_eq!(decode(encode(&ds, 3), 3, 5), ds);
    }
}
