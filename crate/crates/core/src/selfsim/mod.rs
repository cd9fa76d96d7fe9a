//! Digit-sum distributions of homogeneous self-similar systems: entropies, entropy
//! rates, exact-overlap witnesses, the two-relation set X^(n), curve entropies,
//! restricted measures and dimension bounds.

pub mod kernel;
mod spec;

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactnum::sturm::SturmSequence;
use crate::exactnum::{AlgebraicNumber, QPoly, Rational};
use crate::measures::DiscreteDistribution;
use kernel::{
    collision_classes, decode, run, Collision, DigitModule, FieldModule, PairModule, PolyModule,
    PolyOverFieldModule, RationalModule, Reduction, RunOptions, RunOutput,
};

pub use kernel::Limits;
pub use spec::{CurveSpec, DigitPair, IfsSpec, Parameter};

/// The value module chosen for a parameter mode.
enum Engine {
    Rational(RationalModule),
    Field(FieldModule),
    RationalPair(PairModule<RationalModule>),
    FieldPair(PairModule<FieldModule>),
    Poly(PolyModule),
    PolyOverField(PolyOverFieldModule),
    /// λ and τ independent symbols: digit strings never merge.
    Free(PairModule<PolyModule>),
}

macro_rules! with_engine {
    ($e:expr, $m:ident => $body:expr) => {
        match $e {
            Engine::Rational($m) => $body,
            Engine::Field($m) => $body,
            Engine::RationalPair($m) => $body,
            Engine::FieldPair($m) => $body,
            Engine::Poly($m) => $body,
            Engine::PolyOverField($m) => $body,
            Engine::Free($m) => $body,
        }
    };
}

fn qpoly(c: &[Rational]) -> QPoly {
    QPoly::new(c.to_vec())
}

fn x_poly() -> QPoly {
    QPoly::new(vec![Rational::zero(), Rational::one()])
}

fn one_poly() -> QPoly {
    QPoly::constant(Rational::one())
}

fn eval_lambda_poly(c: &[Rational], x: &Rational) -> Rational {
    c.iter().rev().fold(Rational::zero(), |acc, k| acc * x + k)
}

/// Whether two real algebraic numbers with the same minimal polynomial coincide.
fn same_real_root(a: &AlgebraicNumber, b: &AlgebraicNumber) -> bool {
    if a.min_poly() != b.min_poly() || !a.is_real() || !b.is_real() {
        return false;
    }
    let (a0, a1) = a.re_interval();
    let (b0, b1) = b.re_interval();
    let lo = a0.max(b0).clone();
    let hi = a1.min(b1).clone();
    lo < hi && SturmSequence::new(&a.min_poly().to_qpoly()).count_open(&lo, &hi) > 0
}

impl Engine {
    fn point(lambda: &Parameter, tau: &Parameter) -> Result<Engine> {
        use Parameter as P;
        let unsupported = || {
            Error::Unsupported("λ and τ algebraic over different fields; give τ as a lambda_poly in λ".into())
        };
        if let (P::Algebraic(a), _) = (lambda, tau) {
            if let Some(q) = a.as_rational() {
                return Engine::point(&P::Rational(q), tau);
            }
        }
        if let (_, P::Algebraic(b)) = (lambda, tau) {
            if let Some(q) = b.as_rational() {
                return Engine::point(lambda, &P::Rational(q));
            }
        }
        Ok(match (lambda, tau) {
            (P::Rational(l), P::Rational(t)) => Engine::Rational(RationalModule { lambda: l.clone(), tau: t.clone() }),
            (P::Rational(l), P::LambdaPoly(c)) => {
                Engine::Rational(RationalModule { lambda: l.clone(), tau: eval_lambda_poly(c, l) })
            }
            (P::Rational(l), P::Algebraic(b)) => {
                Engine::Field(FieldModule::new(b.field(), QPoly::constant(l.clone()), x_poly()))
            }
            (P::Rational(l), P::Transcendental(_)) => {
                Engine::RationalPair(PairModule(RationalModule { lambda: l.clone(), tau: Rational::zero() }))
            }
            (P::Algebraic(a), P::Rational(t)) => Engine::Field(FieldModule::new(a.field(), x_poly(), QPoly::constant(t.clone()))),
            (P::Algebraic(a), P::LambdaPoly(c)) => Engine::Field(FieldModule::new(a.field(), x_poly(), qpoly(c))),
            (P::Algebraic(a), P::Algebraic(b)) => {
                if same_real_root(a, b) {
                    Engine::Field(FieldModule::new(a.field(), x_poly(), x_poly()))
                } else {
                    return Err(unsupported());
                }
            }
            (P::Algebraic(a), P::Transcendental(_)) => {
                Engine::FieldPair(PairModule(FieldModule::new(a.field(), x_poly(), QPoly::zero())))
            }
            (P::Transcendental(_), P::Rational(t)) => {
                Engine::Poly(PolyModule::new(one_poly(), QPoly::constant(t.clone()), Reduction::None))
            }
            (P::Transcendental(_), P::LambdaPoly(c)) => Engine::Poly(PolyModule::new(one_poly(), qpoly(c), Reduction::None)),
            (P::Transcendental(_), P::Algebraic(b)) => Engine::PolyOverField(PolyOverFieldModule::new(b.field(), x_poly())),
            (P::Transcendental(s), P::Transcendental(t)) => {
                if s == t {
                    Engine::Poly(PolyModule::new(one_poly(), x_poly(), Reduction::None))
                } else {
                    Engine::Free(PairModule(PolyModule::new(one_poly(), QPoly::zero(), Reduction::None)))
                }
            }
            (P::LambdaPoly(_), _) => return Err(Error::invalid("λ cannot be given as a polynomial in itself")),
        })
    }

    fn curve(curve: &CurveSpec) -> Result<Engine> {
        curve.validate()?;
        Ok(match curve {
            CurveSpec::NonDegenerate(r) => {
                Engine::Poly(PolyModule::new(r.den().to_qpoly(), r.num().to_qpoly(), Reduction::None))
            }
            CurveSpec::Degenerate(lambda0) => match lambda0.as_rational() {
                Some(q) => Engine::RationalPair(PairModule(RationalModule { lambda: q, tau: Rational::zero() })),
                None => match lambda0 {
                    Parameter::Algebraic(a) => {
                        Engine::FieldPair(PairModule(FieldModule::new(a.field(), x_poly(), QPoly::zero())))
                    }
                    _ => Engine::Free(PairModule(PolyModule::new(one_poly(), QPoly::zero(), Reduction::None))),
                },
            },
        })
    }

    fn run(&self, spec: &IfsSpec, opts: RunOptions) -> Result<RunOutput> {
        with_engine!(self, m => run(m, spec.forms(), spec.weights(), opts, spec.limits()))
    }
}

fn check_level(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::invalid("level n must be at least 1"));
    }
    Ok(())
}

/// An exact overlap: two distinct level-n strings with equal value.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Overlap {
    pub n: usize,
    /// Q = P₁Y₁ + P₂Y₂, difference of the two strings, sign-normalized.
    pub witness: DigitPair,
    /// The two digit strings ξ₀…ξ_{n−1}, zero-based map indices.
    pub strings: (Vec<usize>, Vec<usize>),
}

fn overlap_from(spec: &IfsSpec, c: Collision) -> Overlap {
    let a = decode(c.first, spec.m(), c.level);
    let b = decode(c.second, spec.m(), c.level);
    let witness = DigitPair::from_digits(spec.forms(), &a)
        .sub(&DigitPair::from_digits(spec.forms(), &b))
        .normalized();
    Overlap { n: c.level, witness, strings: (a, b) }
}

/// H(A^(k)) for every k ≤ n together with the first overlap, from one enumeration.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LevelProfile {
    pub entropies: Vec<f64>,
    pub overlap: Option<Overlap>,
}

impl LevelProfile {
    /// min over k of H(A^(k))/k.
    pub fn rate_upper(&self) -> f64 {
        self.entropies
            .iter()
            .enumerate()
            .map(|(k, h)| h / (k + 1) as f64)
            .fold(f64::INFINITY, f64::min)
    }
}

pub fn level_profile(spec: &IfsSpec, n: usize) -> Result<LevelProfile> {
    check_level(n)?;
    let engine = Engine::point(spec.lambda(), spec.tau())?;
    free_or_run(spec, &engine, n)
}

fn free_or_run(spec: &IfsSpec, engine: &Engine, n: usize) -> Result<LevelProfile> {
    if let Engine::Free(_) = engine {
        // distinct forms give distinct coefficient pairs at the first differing digit
        kernel::raw_count(spec.m(), n, spec.limits())?;
        let h = spec.weight_entropy();
        return Ok(LevelProfile { entropies: (1..=n).map(|k| k as f64 * h).collect(), overlap: None });
    }
    let out = engine.run(spec, RunOptions { levels: n, stop_at_first_collision: false })?;
    Ok(LevelProfile { entropies: out.entropies, overlap: out.first_collision.map(|c| overlap_from(spec, c)) })
}

/// The law of A^(n), one atom per collision class labelled by its smallest digit string.
pub fn enumerate_level(spec: &IfsSpec, n: usize) -> Result<DiscreteDistribution<DigitPair>> {
    check_level(n)?;
    let engine = Engine::point(spec.lambda(), spec.tau())?;
    let out = engine.run(spec, RunOptions { levels: n, stop_at_first_collision: false })?;
    let atoms = out
        .atoms
        .into_iter()
        .map(|(rep, mass)| {
            let key = DigitPair::from_digits(spec.forms(), &decode(rep, spec.m(), n));
            (key, Rational::new(mass, out.denominator.clone()))
        })
        .collect();
    Ok(DiscreteDistribution::from_map_unchecked(atoms))
}

pub fn garsia_entropy(spec: &IfsSpec, n: usize) -> Result<f64> {
    Ok(*level_profile(spec, n)?.entropies.last().unwrap())
}

/// min over 1 ≤ k ≤ n of H(A^(k))/k, an upper bound for the entropy rate.
pub fn entropy_rate_upper(spec: &IfsSpec, n: usize) -> Result<f64> {
    Ok(level_profile(spec, n)?.rate_upper())
}

/// Smallest n ≤ n_max with an exact overlap, and a witness Q with Q(λ,1,τ) = 0.
pub fn find_overlap(spec: &IfsSpec, n_max: usize) -> Result<Option<Overlap>> {
    check_level(n_max)?;
    let engine = Engine::point(spec.lambda(), spec.tau())?;
    if let Engine::Free(_) = engine {
        return Ok(None);
    }
    let out = engine.run(spec, RunOptions { levels: n_max, stop_at_first_collision: true })?;
    Ok(out.first_collision.map(|c| overlap_from(spec, c)))
}

/// Witnesses Q, Q̃ ∈ Q^(n) vanishing at (λ, 1, τ) with P₂(λ) ≠ 0 and P₁P̃₂ − P₂P̃₁ ≠ 0.
pub fn xn_membership(spec: &IfsSpec, n: usize) -> Result<Option<(DigitPair, DigitPair)>> {
    check_level(n)?;
    let engine = Engine::point(spec.lambda(), spec.tau())?;
    let classes = match &engine {
        Engine::Rational(m) => collision_classes(m, spec.forms(), n, spec.limits())?,
        Engine::Field(m) => collision_classes(m, spec.forms(), n, spec.limits())?,
        _ => return Err(Error::Unsupported("X^(n) membership needs exact algebraic λ and τ".into())),
    };
    let p2_vanishes = |q: &DigitPair| -> bool {
        match spec.lambda() {
            Parameter::Algebraic(a) if a.as_rational().is_none() => a.is_root_of(&q.p2) || q.p2.is_zero(),
            other => q.p2.eval(&other.as_rational().expect("exact λ")).is_zero(),
        }
    };
    let pair = |rep: u128| DigitPair::from_digits(spec.forms(), &decode(rep, spec.m(), n));
    let strings: Vec<Vec<DigitPair>> = classes.iter().map(|c| c.iter().map(|&r| pair(r)).collect()).collect();
    let anchors: Vec<DigitPair> = strings
        .iter()
        .flat_map(|c| c[1..].iter().map(move |s| s.sub(&c[0])))
        .collect();
    for class in &strings {
        for i in 0..class.len() {
            for j in i + 1..class.len() {
                let q = class[j].sub(&class[i]);
                if p2_vanishes(&q) {
                    continue;
                }
                if let Some(a) = anchors.iter().find(|a| !q.cross(a).is_zero()) {
                    return Ok(Some((q.normalized(), a.clone().normalized())));
                }
            }
        }
    }
    Ok(None)
}

/// H(A_γ^(n)) for a curve γ; the parameters of `spec` are ignored.
pub fn curve_entropy(spec: &IfsSpec, curve: &CurveSpec, n: usize) -> Result<f64> {
    check_level(n)?;
    let engine = Engine::curve(curve)?;
    Ok(*free_or_run(spec, &engine, n)?.entropies.last().unwrap())
}

/// The law of Σ_{j∈I} T_{ξ_j}(1,τ)λ^j for rational λ and τ.
pub fn restricted_measure(spec: &IfsSpec, positions: &BTreeSet<usize>) -> Result<DiscreteDistribution<Rational>> {
    let (lambda, tau) = match Engine::point(spec.lambda(), spec.tau())? {
        Engine::Rational(m) => (m.lambda, m.tau),
        _ => return Err(Error::Unsupported("restricted measures need rational λ and τ".into())),
    };
    let mut acc = DiscreteDistribution::dirac(Rational::zero());
    for &j in positions {
        let scale = num_traits::pow(lambda.clone(), j);
        let law = DiscreteDistribution::new(spec.forms().iter().zip(spec.weights()).map(|(&(a, b), p)| {
            let v = (Rational::from_integer(a.into()) + &tau * Rational::from_integer(b.into())) * &scale;
            (v, p.clone())
        }))?;
        acc = acc.convolve_limited(&law, spec.limits().atoms)?;
    }
    Ok(acc)
}

/// min{1, H(A^(n)) / (n log λ⁻¹)}.
pub fn dim_upper_bound(spec: &IfsSpec, n: usize) -> Result<f64> {
    let ln_inv = spec.lambda().ln_inverse()?;
    Ok((garsia_entropy(spec, n)? / (n as f64 * ln_inv)).min(1.0))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SimilarityDimension {
    /// min{1, H(p)/log λ⁻¹}.
    pub capped: f64,
    pub uncapped: f64,
}

pub fn similarity_dimension(spec: &IfsSpec) -> Result<SimilarityDimension> {
    let uncapped = spec.weight_entropy() / spec.lambda().ln_inverse()?;
    Ok(SimilarityDimension { capped: uncapped.min(1.0), uncapped })
}

/// Exact test Q(λ, 1, τ) = 0 in the value module of the parameter mode.
pub fn vanishes_at(q: &DigitPair, lambda: &Parameter, tau: &Parameter) -> Result<bool> {
    let engine = Engine::point(lambda, tau)?;
    Ok(with_engine!(&engine, m => pair_vanishes(m, q)))
}

fn pair_vanishes<M: DigitModule>(m: &M, q: &DigitPair) -> bool {
    let n = q.p1.len().max(q.p2.len());
    let mut acc = m.zero();
    for k in (0..n).rev() {
        let c = (to_i64(&q.p1.coeff(k)), to_i64(&q.p2.coeff(k)));
        acc = m.add(&m.digit(c.0, c.1), &m.shift(&acc));
    }
    acc == m.zero()
}

fn to_i64(x: &BigInt) -> i64 {
    i64::try_from(x).expect("coefficient fits in i64")
}

#[cfg(test)]
mod tests;
