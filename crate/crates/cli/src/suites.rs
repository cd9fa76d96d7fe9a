//! Seeded lemma sweeps. Instances are drawn sequentially from one generator and
//! evaluated in parallel; results are folded in draw order.

use std::collections::{BTreeMap, BTreeSet};

use num_complex::Complex64;
use clap::ValueEnum;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use selfsim_entropy::derivs::{b_state_direct, b_state_recursion, DerivSystem};
use selfsim_entropy::dioph::{
    dimitrov_construct, dimitrov_construct_far, dimitrov_test, jensen_root_count_check, power_sum_multiset_check,
    separation_sweep, turan_bound, value_lower_bound_check, Verdict,
};
use selfsim_entropy::exactnum::rational::{int, rat, to_f64};
use selfsim_entropy::exactnum::{format_rational, AlgebraicNumber, IntPolynomial, Rational, RationalMap};
use selfsim_entropy::ffield::ff_dim_lower_sequence;
use selfsim_entropy::measures::{kv_inequality_gap, scale_entropy_between, DiscreteDistribution};
use selfsim_entropy::selfsim::{IfsSpec, Parameter};
use selfsim_entropy::Error;

use crate::args::Suite;
use crate::CliError;

const TOL: f64 = 1e-9;

pub enum Outcome {
    Certified,
    HypothesesFail,
    Violated(Value),
}

impl Outcome {
    fn from_verdict(v: Verdict, instance: impl FnOnce() -> Value) -> Self {
        match v {
            Verdict::Certified => Outcome::Certified,
            Verdict::HypothesesFail => Outcome::HypothesesFail,
            Verdict::Violated => Outcome::Violated(instance()),
        }
    }

    fn check(ok: bool, instance: impl FnOnce() -> Value) -> Self {
        if ok {
            Outcome::Certified
        } else {
            Outcome::Violated(instance())
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteSummary {
    pub suite: String,
    pub seed: u64,
    pub checked: usize,
    pub certified: usize,
    pub hypotheses_fail: usize,
    pub violations: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_violation: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<Value>,
}

fn suite_name(s: Suite) -> String {
    s.to_possible_value().expect("no skipped variants").get_name().to_string()
}

fn tally<I: Sync>(
    suite: Suite,
    seed: u64,
    instances: Vec<I>,
    eval: impl Fn(&I) -> Result<Outcome, Error> + Sync,
) -> Result<SuiteSummary, CliError> {
    let outcomes: Vec<Outcome> = instances.par_iter().map(&eval).collect::<Result<_, _>>()?;
    let mut s = SuiteSummary {
        suite: suite_name(suite),
        seed,
        checked: outcomes.len(),
        certified: 0,
        hypotheses_fail: 0,
        violations: 0,
        first_violation: None,
        detail: None,
    };
    for o in outcomes {
        match o {
            Outcome::Certified => s.certified += 1,
            Outcome::HypothesesFail => s.hypotheses_fail += 1,
            Outcome::Violated(v) => {
                s.violations += 1;
                s.first_violation.get_or_insert(v);
            }
        }
    }
    Ok(s)
}

pub fn run_suite(suite: Suite, seed: u64, count: usize, n: usize) -> Result<SuiteSummary, CliError> {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    let rng = &mut r;
    match suite {
        Suite::Separation => {
            let sweep = separation_sweep(n, 1)?;
            Ok(SuiteSummary {
                suite: suite_name(suite),
                seed,
                checked: sweep.distinct_roots * sweep.distinct_roots.saturating_sub(1) / 2,
                certified: sweep.distinct_roots * sweep.distinct_roots.saturating_sub(1) / 2 - sweep.violations,
                hypotheses_fail: 0,
                violations: sweep.violations,
                first_violation: None,
                detail: Some(serde_json::to_value(&sweep).unwrap()),
            })
        }
        Suite::Jensen => {
            let inst: Vec<_> = (0..count)
                .map(|_| {
                    let l = rng.gen_range(1..=3u64);
                    (nonzero_poly(rng, 10, l as i64), l, rng.gen_range(1..=8usize))
                })
                .collect();
            tally(suite, seed, inst, |(p, l, k)| {
                let c = jensen_root_count_check(p, *l, *k)?;
                Ok(Outcome::from_verdict(c.verdict(), || serde_json::to_value(c.report(p)).unwrap()))
            })
        }
        Suite::ValueBound => {
            let inst: Vec<_> = (0..count)
                .map(|_| {
                    let n = rng.gen_range(1..=6usize);
                    let l = rng.gen_range(1..=2u64);
                    (nonzero_poly(rng, n, l as i64), n, l, random_eta(rng))
                })
                .collect();
            tally(suite, seed, inst, |(p, n, l, lambda)| match value_lower_bound_check(p, *n, *l, lambda) {
                Ok(v) => Ok(Outcome::from_verdict(v.verdict, || serde_json::to_value(v.report(p, *n, *l, lambda)).unwrap())),
                Err(Error::HypothesisViolated(_)) => Ok(Outcome::HypothesesFail),
                Err(e) => Err(e),
            })
        }
        Suite::Dimitrov => {
            let inst: Vec<_> = (0..count)
                .map(|i| {
                    let eta = random_eta(rng);
                    let g = loop {
                        let g = nonzero_poly(rng, 3, 2);
                        if !eta.is_root_of(&g) {
                            break g;
                        }
                    };
                    let k = rng.gen_range(2..=3usize);
                    // cycle: constructed at order k+1, order k−1, far from η
                    let (order, far) = [(k + 1, false), (k - 1, false), (k + 1, true)][i % 3];
                    (eta, g, k, order, far, rng.gen_range(0..=2usize))
                })
                .collect();
            tally(suite, seed, inst, |(eta, g, k, order, far, pad)| {
                let d = if *far { dimitrov_construct_far(eta, g, *k, *order, *pad)? } else { dimitrov_construct(eta, g, *k, *order, *pad)? };
                let out = dimitrov_test(&d)?;
                Ok(if out.violated() {
                    Outcome::Violated(serde_json::to_value(out.report(&d)).unwrap())
                } else if out.holds() {
                    Outcome::Certified
                } else {
                    Outcome::HypothesesFail
                })
            })
        }
        Suite::Turan => {
            let inst: Vec<_> = (0..count).map(|_| turan_instance(rng)).collect();
            tally(suite, seed, inst, |(z, b, m, d1, d2)| match turan_bound(z, b, *m, *d1, *d2) {
                Ok(rep) => Ok(Outcome::check(rep.holds, || serde_json::to_value(rep.report(z, b, *d1, *d2)).unwrap())),
                Err(Error::HypothesisViolated(_)) => Ok(Outcome::HypothesesFail),
                Err(e) => Err(e),
            })
        }
        Suite::PowerSum => {
            let inst: Vec<_> = (0..count).map(|_| power_sum_instance(rng)).collect();
            tally(suite, seed, inst, |(u, w, m, delta, eps)| {
                let c = power_sum_multiset_check(u, w, *m, *delta, *eps)?;
                Ok(Outcome::from_verdict(c.verdict, || {
                    json!({ "u": pairs(u), "w": pairs(w), "report": c.report(*m, *eps) })
                }))
            })
        }
        Suite::Kv => {
            let inst: Vec<_> = (0..count).map(|_| (int_law(rng), int_law(rng), rng.gen_range(1..=4usize))).collect();
            tally(suite, seed, inst, |(mu, nu, n)| {
                let (lhs, rhs) = kv_inequality_gap(mu, nu, *n)?;
                Ok(Outcome::check(lhs <= rhs + TOL, || {
                    json!({ "mu": mu.to_json_atoms(), "nu": nu.to_json_atoms(), "n": n, "lhs": lhs, "rhs": rhs })
                }))
            })
        }
        Suite::ScaleEntropy => {
            let inst: Vec<_> = (0..count)
                .map(|_| {
                    let nu = rational_law(rng);
                    let (a, b) = (rat(rng.gen_range(1..=250), 50), rat(rng.gen_range(1..=250), 50));
                    (nu, a.clone().min(b.clone()), a.max(b))
                })
                .collect();
            tally(suite, seed, inst, |(nu, r1, r2)| {
                let d = scale_entropy_between(nu, r1, r2)?;
                let cap = 2.0 * (to_f64(r2).ln() - to_f64(r1).ln());
                Ok(Outcome::check(d >= -TOL && d <= cap + TOL, || {
                    json!({ "nu": nu.to_json_atoms(), "r1": format_rational(r1), "r2": format_rational(r2), "difference": d, "cap": cap })
                }))
            })
        }
        Suite::MonotoneFf => {
            let spec = IfsSpec::standard(Parameter::Rational(rat(1, 2)), Parameter::Rational(int(0)))?;
            let inst: Vec<_> = (0..count).map(|_| series_map(rng, 1)).collect();
            tally(suite, seed, inst, |map| {
                let seq = ff_dim_lower_sequence(map, &spec, 6)?;
                Ok(Outcome::check(seq.windows(2).all(|w| w[1] >= w[0] - TOL), || json!({ "r": map, "sequence": seq })))
            })
        }
        Suite::RecursionOracle => {
            let mut inst = Vec::with_capacity(count);
            while inst.len() < count {
                let forms: Vec<(i64, i64)> = {
                    let m = rng.gen_range(2..=4);
                    let mut s = BTreeSet::new();
                    while s.len() < m {
                        s.insert((rng.gen_range(-3..=3), rng.gen_range(-3..=3)));
                    }
                    s.into_iter().collect()
                };
                let lambda = rat(rng.gen_range(1..20), 20);
                let spec = IfsSpec::uniform(forms.clone(), Parameter::Rational(lambda.clone()), Parameter::Rational(int(0)))?;
                let map = series_map(rng, 3);
                let k = rng.gen_range(1..=4);
                let digits: Vec<usize> = (0..rng.gen_range(1..=8)).map(|_| rng.gen_range(0..forms.len())).collect();
                if let Ok(sys) = DerivSystem::new(map, Parameter::Rational(lambda), k, spec) {
                    inst.push((sys, digits));
                }
            }
            tally(suite, seed, inst, |(sys, digits)| {
                let rec = b_state_recursion(sys, digits)?;
                let direct = b_state_direct(sys, digits)?;
                Ok(Outcome::check(rec == direct, || {
                    let fmt = |v: &[Rational]| v.iter().map(format_rational).collect::<Vec<_>>();
                    json!({ "r": sys.map(), "k": sys.k(), "digits": digits, "recursion": fmt(&rec), "direct": fmt(&direct) })
                }))
            })
        }
    }
}

fn pairs(v: &[Complex64]) -> Vec<[f64; 2]> {
    v.iter().map(|c| [c.re, c.im]).collect()
}

fn nonzero_poly(rng: &mut ChaCha8Rng, max_len: usize, c: i64) -> IntPolynomial {
    loop {
        let len = rng.gen_range(1..=max_len);
        let p = IntPolynomial::from_i64s(&(0..len).map(|_| rng.gen_range(-c..=c)).collect::<Vec<_>>());
        if !p.is_zero() {
            return p;
        }
    }
}

fn series_map(rng: &mut ChaCha8Rng, c: i64) -> RationalMap {
    loop {
        let num = nonzero_poly(rng, 4, c);
        let den = nonzero_poly(rng, 4, c);
        if den.valuation() == Some(0) {
            return RationalMap::from_polys(num, den).unwrap();
        }
    }
}

/// A random real algebraic number in (1/20, 19/20): rational or a quadratic irrational.
fn random_eta(rng: &mut ChaCha8Rng) -> AlgebraicNumber {
    if rng.gen_bool(0.3) {
        let q = rng.gen_range(3..=12);
        return AlgebraicNumber::rational(rat(rng.gen_range(1..q), q));
    }
    loop {
        let (a, b, c) = (rng.gen_range(1..=5i64), rng.gen_range(-6..=6i64), rng.gen_range(-6..=6i64));
        let disc = b * b - 4 * a * c;
        let root = (disc as f64).sqrt().round() as i64;
        if disc <= 0 || root * root == disc {
            continue;
        }
        let inside = [-1.0, 1.0]
            .iter()
            .map(|s| (-b as f64 + s * (disc as f64).sqrt()) / (2.0 * a as f64))
            .filter(|x| (0.05..0.95).contains(x))
            .count();
        if inside == 1 {
            return AlgebraicNumber::real_root_in(&IntPolynomial::from_i64s(&[c, b, a]), rat(1, 20), rat(19, 20)).unwrap();
        }
    }
}

type TuranInstance = (Vec<Complex64>, Vec<Complex64>, usize, f64, f64);

fn turan_instance(rng: &mut ChaCha8Rng) -> TuranInstance {
    let n = rng.gen_range(1..=5);
    let mut z: Vec<Complex64> = (0..n)
        .map(|_| Complex64::from_polar(rng.gen_range(0.2..2.0), rng.gen_range(0.0..std::f64::consts::TAU)))
        .collect();
    let z0 = z[0];
    z[1..].sort_by(|a, b| (z0 - a).norm().total_cmp(&(z0 - b).norm()));
    let b = (0..n).map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect();
    let m = rng.gen_range(0..=5);
    let d1 = rng.gen_range(0.01..1.0) * n as f64 / (m + n + 1) as f64;
    let d2 = rng.gen_range(0.01..1.0) * d1;
    (z, b, m, d1, d2)
}

type PowerSumInstance = (Vec<Complex64>, Vec<Complex64>, usize, f64, f64);

fn power_sum_instance(rng: &mut ChaCha8Rng) -> PowerSumInstance {
    let m = rng.gen_range(1..=4);
    let draw = |rng: &mut ChaCha8Rng| -> Vec<Complex64> {
        let k = rng.gen_range(1..=m);
        (0..k).map(|_| Complex64::from_polar(rng.gen_range(1.0..3.0), rng.gen_range(0.0..std::f64::consts::TAU))).collect()
    };
    let u = draw(rng);
    let eps = rng.gen_range(0.01..0.5);
    if rng.gen_bool(0.5) {
        let mut w = u.clone();
        w.shuffle(rng);
        (u, w, m, 0.0, eps)
    } else {
        let w = draw(rng);
        (u, w, m, 1e-3, eps)
    }
}

fn int_law(rng: &mut ChaCha8Rng) -> DiscreteDistribution<Rational> {
    let mut atoms: BTreeMap<i64, i64> = BTreeMap::new();
    for _ in 0..rng.gen_range(1..=4) {
        *atoms.entry(rng.gen_range(-5..=5)).or_default() += rng.gen_range(1..=9);
    }
    let total: i64 = atoms.values().sum();
    DiscreteDistribution::new(atoms.into_iter().map(|(x, w)| (int(x), rat(w, total)))).unwrap()
}

fn rational_law(rng: &mut ChaCha8Rng) -> DiscreteDistribution<Rational> {
    let mut atoms: BTreeMap<Rational, i64> = BTreeMap::new();
    for _ in 0..rng.gen_range(1..=6) {
        *atoms.entry(rat(rng.gen_range(-40..=40), rng.gen_range(1..=20))).or_default() += rng.gen_range(1..=9);
    }
    let total: i64 = atoms.values().sum();
    DiscreteDistribution::new(atoms.into_iter().map(|(x, w)| (x, rat(w, total)))).unwrap()
}
