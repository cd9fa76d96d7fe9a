//! The derivative system: B^(n) = (A(λ), A′(λ), …, A^{(K−1)}(λ)) for
//! A = Σ T_{ξ_k}(1,R)X^k, its recursion B^(n) = Θ(λ,K)·B̃^(n−1) + v_{ξ₀}, and the
//! entropies of its finite-level laws.
//!
//! Two digit strings give the same B^(n) exactly when P₁·den(R) + P₂·num(R) vanishes
//! to order K at λ, i.e. when the difference is divisible by m^K for the minimal
//! polynomial m of λ. Keys are remainders modulo m^K, so the test is one exact
//! division per merge.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exactnum::rational::{self, format_rational};
use crate::exactnum::{vanishing_order, AlgebraicNumber, IntPolynomial, QPoly, Rational, RationalMap};
use crate::selfsim::kernel::{run, PolyModule, Reduction, RunOptions};
use crate::selfsim::{DigitPair, IfsSpec, Parameter};

/// A square exact-rational matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivMatrix {
    rows: Vec<Vec<Rational>>,
}

impl Serialize for DerivMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<Vec<String>> = self.rows.iter().map(|r| r.iter().map(format_rational).collect()).collect();
        rows.serialize(s)
    }
}

impl DerivMatrix {
    pub fn size(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<Rational>] {
        &self.rows
    }

    pub fn entry(&self, i: usize, j: usize) -> &Rational {
        &self.rows[i][j]
    }

    pub fn apply(&self, v: &[Rational]) -> Vec<Rational> {
        self.rows
            .iter()
            .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// Eigenvalues of a triangular matrix: its diagonal.
    pub fn eigenvalues(&self) -> Vec<Rational> {
        (0..self.size()).map(|i| self.rows[i][i].clone()).collect()
    }
}

/// Θ(λ,K): λ on the diagonal, 1, 2, …, K−1 below it.
pub fn theta(lambda: &Rational, k: usize) -> Result<DerivMatrix> {
    if k == 0 {
        return Err(Error::invalid("K must be at least 1"));
    }
    let mut rows = vec![vec![Rational::zero(); k]; k];
    for (a, row) in rows.iter_mut().enumerate() {
        row[a] = lambda.clone();
        if a > 0 {
            row[a - 1] = Rational::from_integer(BigInt::from(a));
        }
    }
    Ok(DerivMatrix { rows })
}

/// A rational map R, an exact λ that is not a pole, a depth K and a digit system.
#[derive(Clone, Debug, PartialEq)]
pub struct DerivSystem {
    r: RationalMap,
    lambda: Parameter,
    k: usize,
    spec: IfsSpec,
}

impl DerivSystem {
    /// The parameters λ, τ of `spec` are ignored; only its forms, weights and limits are used.
    pub fn new(r: RationalMap, lambda: Parameter, k: usize, spec: IfsSpec) -> Result<Self> {
        if k == 0 {
            return Err(Error::invalid("K must be at least 1"));
        }
        let pole = match &lambda {
            Parameter::Rational(q) => r.den().eval(q).is_zero(),
            Parameter::Algebraic(a) => a.is_root_of(r.den()),
            _ => return Err(Error::Unsupported("the derivative system needs an exact λ".into())),
        };
        if pole {
            return Err(Error::Pole);
        }
        Ok(DerivSystem { r, lambda, k, spec })
    }

    pub fn map(&self) -> &RationalMap {
        &self.r
    }

    pub fn lambda(&self) -> &Parameter {
        &self.lambda
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn spec(&self) -> &IfsSpec {
        &self.spec
    }

    pub fn with_k(&self, k: usize) -> Result<Self> {
        Self::new(self.r.clone(), self.lambda.clone(), k, self.spec.clone())
    }

    fn rational_lambda(&self) -> Result<Rational> {
        self.lambda
            .as_rational()
            .ok_or_else(|| Error::Unsupported("exact B-vectors are computed for rational λ".into()))
    }

    fn min_poly(&self) -> IntPolynomial {
        match &self.lambda {
            Parameter::Algebraic(a) => a.min_poly().primitive_part(),
            other => AlgebraicNumber::rational(other.as_rational().expect("exact λ")).min_poly().primitive_part(),
        }
    }
}

/// First k Taylor coefficients at 0 of a/b for b(0) ≠ 0.
fn qseries_quotient(a: &QPoly, b: &QPoly, k: usize) -> Vec<Rational> {
    let b0_inv = b.coeff(0).recip();
    let mut out: Vec<Rational> = Vec::with_capacity(k);
    for j in 0..k {
        let mut acc = a.coeff(j);
        for i in 1..=j {
            acc -= b.coeff(i) * &out[j - i];
        }
        out.push(acc * &b0_inv);
    }
    out
}

fn factorial(a: usize) -> Rational {
    Rational::from_integer((1..=a).fold(BigInt::one(), |acc, i| acc * BigInt::from(i)))
}

/// (num/den)^{(a)}(λ) for a < k, exactly.
pub fn derivatives_at(num: &QPoly, den: &QPoly, lambda: &Rational, k: usize) -> Result<Vec<Rational>> {
    let d = den.taylor_shift(lambda);
    if d.coeff(0).is_zero() {
        return Err(Error::Pole);
    }
    let t = qseries_quotient(&num.taylor_shift(lambda), &d, k);
    Ok(t.into_iter().enumerate().map(|(a, c)| c * factorial(a)).collect())
}

/// v_j = (T_j(1,R(λ)), T_j(0,R′(λ)), …, T_j(0,R^{(K−1)}(λ))).
pub fn translation_vector(sys: &DerivSystem, j: usize) -> Result<Vec<Rational>> {
    let lambda = sys.rational_lambda()?;
    let &(a, b) = sys
        .spec
        .forms()
        .get(j)
        .ok_or_else(|| Error::invalid(format!("digit {j} out of range")))?;
    let rd = derivatives_at(&sys.r.num().to_qpoly(), &sys.r.den().to_qpoly(), &lambda, sys.k)?;
    let b = Rational::from_integer(b.into());
    Ok(rd
        .into_iter()
        .enumerate()
        .map(|(i, x)| {
            let base = if i == 0 { Rational::from_integer(a.into()) } else { Rational::zero() };
            base + &b * x
        })
        .collect())
}

fn check_digits(sys: &DerivSystem, digits: &[usize]) -> Result<()> {
    if digits.iter().any(|&d| d >= sys.spec.m()) {
        return Err(Error::invalid("digit out of range"));
    }
    Ok(())
}

/// B^(n) by the recursion B = Θ·B̃ + v_{ξ₀}, innermost digit first.
pub fn b_state_recursion(sys: &DerivSystem, digits: &[usize]) -> Result<Vec<Rational>> {
    check_digits(sys, digits)?;
    let lambda = sys.rational_lambda()?;
    let th = theta(&lambda, sys.k)?;
    let vs: Vec<Vec<Rational>> = (0..sys.spec.m()).map(|j| translation_vector(sys, j)).collect::<Result<_>>()?;
    let mut b = vec![Rational::zero(); sys.k];
    for &d in digits.iter().rev() {
        b = th.apply(&b).into_iter().zip(&vs[d]).map(|(x, v)| x + v).collect();
    }
    Ok(b)
}

/// B^(n) by differentiating (P₁·den + P₂·num)/den at λ directly.
pub fn b_state_direct(sys: &DerivSystem, digits: &[usize]) -> Result<Vec<Rational>> {
    check_digits(sys, digits)?;
    let lambda = sys.rational_lambda()?;
    let q = DigitPair::from_digits(sys.spec.forms(), digits);
    let num = &(&q.p1 * sys.r.den()) + &(&q.p2 * sys.r.num());
    derivatives_at(&num.to_qpoly(), &sys.r.den().to_qpoly(), &lambda, sys.k)
}

/// B^(n); both routes are computed and must agree exactly.
pub fn b_state(sys: &DerivSystem, digits: &[usize]) -> Result<Vec<Rational>> {
    let rec = b_state_recursion(sys, digits)?;
    let direct = b_state_direct(sys, digits)?;
    assert_eq!(rec, direct, "recursion and direct differentiation disagree");
    Ok(rec)
}

fn level_entropies(sys: &DerivSystem, n: usize) -> Result<Vec<f64>> {
    if n == 0 {
        return Err(Error::invalid("n must be at least 1"));
    }
    let modulus = sys.min_poly().pow(sys.k as u32).to_qpoly();
    let module = PolyModule::new(sys.r.den().to_qpoly(), sys.r.num().to_qpoly(), Reduction::Modulo(modulus));
    let spec = &sys.spec;
    let out = run(&module, spec.forms(), spec.weights(), RunOptions { levels: n, stop_at_first_collision: false }, spec.limits())?;
    Ok(out.entropies)
}

/// H(B^(n)).
pub fn deriv_entropy(sys: &DerivSystem, n: usize) -> Result<f64> {
    Ok(*level_entropies(sys, n)?.last().unwrap())
}

/// min over k ≤ n of H(B^(k))/k.
pub fn deriv_entropy_rate_upper(sys: &DerivSystem, n: usize) -> Result<f64> {
    Ok(level_entropies(sys, n)?
        .iter()
        .enumerate()
        .map(|(k, h)| h / (k + 1) as f64)
        .fold(f64::INFINITY, f64::min))
}

/// An upper bound for the dimension of the self-affine measure, which is not itself computed.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SelfAffineDimBound {
    pub rate_upper: f64,
    pub log_inv_lambda: f64,
    /// rate_upper / log λ⁻¹.
    pub dim_upper: f64,
}

pub fn self_affine_dim_bound(sys: &DerivSystem, n: usize) -> Result<SelfAffineDimBound> {
    let rate_upper = deriv_entropy_rate_upper(sys, n)?;
    let log_inv_lambda = sys.lambda.ln_inverse()?;
    Ok(SelfAffineDimBound { rate_upper, log_inv_lambda, dim_upper: rate_upper / log_inv_lambda })
}

/// Evaluation of the multiplicity lemma on one instance.
///
/// With F = X^{−v}(P₁·den + P₂·num), |f_j| ≤ 2Nl²(j+1) whenever the valuation v is
/// below N, and Jensen's formula on the disk of radius ρ = 1 − ε/2 gives
/// o·log(ρ/λ) ≤ log(8Nl²/ε²) for the order o of the zero at λ. Hence any order
/// o ≥ K* − 1 with K* = ⌊log(8Nl²/ε²)/log(ρ/(1−ε))⌋ + 2 forces v ≥ N.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MultiplicityReport {
    pub k_star: usize,
    /// Order of vanishing at λ; None for the zero function.
    pub order: Option<usize>,
    /// Valuation of P₁ + P₂R at 0; None for the zero series.
    pub valuation: Option<usize>,
    pub hypothesis_holds: bool,
    /// log(8Nl²/ε²) and o·log(ρ/λ) when v < N.
    pub jensen_lhs: Option<f64>,
    pub jensen_rhs: f64,
    pub conclusion_holds: bool,
}

impl MultiplicityReport {
    pub fn violated(&self) -> bool {
        (self.hypothesis_holds && !self.conclusion_holds) || self.jensen_lhs.is_some_and(|l| l > self.jensen_rhs + 1e-9)
    }
}

/// K* for given ε, N, l.
pub fn multiplicity_k_star(eps: f64, n: usize, l: u64) -> usize {
    let rhs = (8.0 * n as f64 * (l as f64).powi(2) / (eps * eps)).ln();
    let step = ((1.0 - eps / 2.0) / (1.0 - eps)).ln();
    (rhs / step).floor() as usize + 2
}

pub fn multiplicity_check(
    p1: &IntPolynomial,
    p2: &IntPolynomial,
    r: &RationalMap,
    lambda: &Rational,
    eps: f64,
    n: usize,
    l: u64,
) -> Result<MultiplicityReport> {
    if !(eps > 0.0 && eps < 0.5) || n == 0 || l == 0 {
        return Err(Error::invalid("need 0 < ε < 1/2, N ≥ 1, l ≥ 1"));
    }
    let lam = rational::to_f64(lambda);
    if !(lam > eps && lam < 1.0 - eps) {
        return Err(Error::HypothesisViolated(format!("λ = {lambda} outside (ε, 1−ε)")));
    }
    if !r.is_power_series() {
        return Err(Error::NotPowerSeries);
    }
    let bound = BigInt::from(l);
    for (name, p) in [("P1", p1), ("P2", p2), ("num(R)", r.num()), ("den(R)", r.den())] {
        if p.max_abs_coeff() > bound {
            return Err(Error::HypothesisViolated(format!("{name} has a coefficient above l = {l}")));
        }
    }
    if r.den().eval(lambda).is_zero() {
        return Err(Error::Pole);
    }
    let f = &(p1 * r.den()) + &(p2 * r.num());
    let k_star = multiplicity_k_star(eps, n, l);
    let jensen_rhs = (8.0 * n as f64 * (l as f64).powi(2) / (eps * eps)).ln();
    if f.is_zero() {
        return Ok(MultiplicityReport {
            k_star,
            order: None,
            valuation: None,
            hypothesis_holds: true,
            jensen_lhs: None,
            jensen_rhs,
            conclusion_holds: true,
        });
    }
    let order = vanishing_order(&f, &AlgebraicNumber::rational(lambda.clone()));
    let valuation = f.valuation().unwrap();
    let rho = 1.0 - eps / 2.0;
    let jensen_lhs = (valuation < n).then(|| order as f64 * (rho / lam).ln());
    debug_assert!(r.series_prefix(n).is_ok());
    // the first N coefficients of (P₁·den + P₂·num)/den vanish iff those of the numerator do
    let conclusion_holds = crate::exactnum::series_quotient(&f, r.den(), n).iter().all(|c| c.is_zero());
    debug_assert_eq!(conclusion_holds, valuation >= n);
    Ok(MultiplicityReport {
        k_star,
        order: Some(order),
        valuation: Some(valuation),
        hypothesis_holds: order + 1 >= k_star,
        jensen_lhs,
        jensen_rhs,
        conclusion_holds,
    })
}
