//! Root separation, root counts near 0, close roots, value lower bounds and the
//! multiplicity test for nearby algebraic numbers.

use std::f64::consts::LN_2;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;
use serde_json::json;

use super::roots::{mahler_enclosure, roots, roots_of_coprime_family, ComplexRational, Disk, MAX_BITS};
use super::{coprime_base, LemmaReport, Verdict};
use crate::error::{Error, Result};
use crate::exactnum::rational;
use crate::exactnum::{vanishing_order, AlgebraicNumber, IntPolynomial, Rational};

const SLACK: f64 = 1e-12;

fn lnf(x: f64) -> f64 {
    if x > 0.0 {
        x.ln()
    } else {
        f64::NEG_INFINITY
    }
}

/// log of 2^{-n-1} n^{-5n} l^{-4n}.
pub fn root_separation_ln_bound(n: usize, l: u64) -> f64 {
    let nf = n as f64;
    -(nf + 1.0) * LN_2 - 5.0 * nf * nf.ln() - 4.0 * nf * (l as f64).ln()
}

/// 2^{-n-1} n^{-5n} l^{-4n}: distinct roots of members of P_l^(n) are at least this far apart.
pub fn root_separation_bound(n: usize, l: u64) -> f64 {
    root_separation_ln_bound(n, l).exp()
}

/// A disk containing the algebraic number, of radius about 2^{-bits}.
pub fn algebraic_disk(a: &AlgebraicNumber, bits: u32) -> Result<Disk> {
    if let Some(q) = a.as_rational() {
        return Ok(Disk::point(ComplexRational::new(q, Rational::zero())));
    }
    if a.is_real() {
        let (lo, hi) = a.real_enclosure(bits);
        let two = Rational::from_integer(BigInt::from(2));
        let half = (&hi - &lo) / &two;
        return Ok(Disk { center: ComplexRational::new((lo + hi) / two, Rational::zero()), radius_sq: &half * &half });
    }
    let precision = (-(bits.min(900) as f64) * LN_2).exp();
    let rs = roots(a.min_poly(), precision)?;
    let (re, im) = (a.re_interval(), a.im_interval());
    let (re0, re1) = (rational::to_f64(&re.0), rational::to_f64(&re.1));
    let (im0, im1) = (rational::to_f64(&im.0), rational::to_f64(&im.1));
    let hits: Vec<&Disk> = rs
        .roots()
        .iter()
        .map(|r| &r.disk)
        .filter(|d| {
            let c = d.center_f64();
            let r = d.radius() + 1e-12 * (c.norm() + 1.0);
            c.re + r >= re0 && c.re - r <= re1 && c.im + r >= im0 && c.im - r <= im1
        })
        .collect();
    match hits.as_slice() {
        [d] => Ok((*d).clone()),
        _ => Err(Error::Unsupported("box does not isolate a root of the minimal polynomial".into())),
    }
}

fn approx_json(a: &AlgebraicNumber) -> serde_json::Value {
    let z = a.approx();
    json!({ "min_poly": a.min_poly(), "re": z.re, "im": z.im })
}

/// Certifies |η − η′| ≥ 2^{-n-1} n^{-5n} l^{-4n} for distinct algebraic numbers of degree < n.
pub fn root_separation_check(eta: &AlgebraicNumber, eta2: &AlgebraicNumber, n: usize, l: u64) -> Result<LemmaReport> {
    if n == 0 || l == 0 {
        return Err(Error::invalid("need n, l ≥ 1"));
    }
    if eta.degree() >= n || eta2.degree() >= n {
        return Err(Error::HypothesisViolated(format!("an input has degree ≥ n = {n}")));
    }
    let rhs = root_separation_ln_bound(n, l);
    let inputs = json!({ "eta": approx_json(eta), "eta_prime": approx_json(eta2), "n": n, "l": l });
    let mut bits = 64;
    loop {
        let (lo, hi) = algebraic_disk(eta, bits)?.gap_bounds(&algebraic_disk(eta2, bits)?);
        let verdict = if lo > 0.0 && lo.ln() >= rhs {
            Some(Verdict::Certified)
        } else if lnf(hi) < rhs {
            Some(Verdict::Violated)
        } else {
            None
        };
        if let Some(verdict) = verdict {
            return Ok(LemmaReport {
                lemma: "root-separation".into(),
                inputs,
                hypothesis_status: "holds".into(),
                lhs: lnf(lo),
                rhs,
                verdict,
            });
        }
        bits *= 2;
        if bits > MAX_BITS {
            return Err(if lo == 0.0 {
                Error::IndistinguishableRoots { bits: MAX_BITS }
            } else {
                Error::PrecisionExhausted { bits: MAX_BITS }
            });
        }
    }
}

/// Every nonzero member of P_l^(n), up to sign.
pub fn bounded_polynomials(n: usize, l: u64) -> Vec<IntPolynomial> {
    let l = l as i64;
    let base = (2 * l + 1) as u64;
    let total = base.pow(n as u32);
    let mut out = Vec::new();
    for code in 1..total {
        let mut c = code;
        let coeffs: Vec<i64> = (0..n)
            .map(|_| {
                let d = (c % base) as i64 - l;
                c /= base;
                d
            })
            .collect();
        let p = IntPolynomial::from_i64s(&coeffs);
        if p.leading().is_some_and(|x| *x > BigInt::zero()) {
            out.push(p);
        }
    }
    out
}

/// Exhaustive check of the separation bound over all root pairs of P_l^(n).
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SeparationSweep {
    pub n: usize,
    pub l: u64,
    pub polynomials: usize,
    pub base_size: usize,
    pub distinct_roots: usize,
    /// Lower bound of the smallest gap between distinct roots.
    pub min_gap: f64,
    pub bound: f64,
    pub ln_bound: f64,
    pub violations: usize,
}

pub fn separation_sweep(n: usize, l: u64) -> Result<SeparationSweep> {
    let polys = bounded_polynomials(n, l);
    let base = coprime_base(&polys);
    let ln_bound = root_separation_ln_bound(n, l);
    let precision = (ln_bound - 14.0).exp().clamp(1e-290, 1e-30);
    let all = roots_of_coprime_family(&base, precision)?;
    let mut min_gap = f64::INFINITY;
    let mut violations = 0;
    for i in 0..all.len() {
        for j in i + 1..all.len() {
            let (lo, hi) = all[i].disk.gap_bounds(&all[j].disk);
            min_gap = min_gap.min(lo);
            if lnf(hi) < ln_bound {
                violations += 1;
            } else if lnf(lo) < ln_bound {
                return Err(Error::PrecisionExhausted { bits: MAX_BITS });
            }
        }
    }
    Ok(SeparationSweep {
        n,
        l,
        polynomials: polys.len(),
        base_size: base.len(),
        distinct_roots: all.len(),
        min_gap,
        bound: ln_bound.exp(),
        ln_bound,
        violations,
    })
}

/// a(k) = k/(k+1) · (k+1)^{-1/k}.
pub fn jensen_radius(k: usize) -> f64 {
    let kf = k as f64;
    kf / (kf + 1.0) * (kf + 1.0).powf(-1.0 / kf)
}

/// k(1 + log l / log(k+1)).
pub fn jensen_bound(k: usize, l: u64) -> f64 {
    let kf = k as f64;
    kf * (1.0 + (l as f64).ln() / (kf + 1.0).ln())
}

/// Nonzero roots of modulus below a(k), counted with multiplicity.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct JensenCount {
    pub k: usize,
    pub l: u64,
    pub radius: f64,
    /// Roots certainly inside the disk.
    pub count: usize,
    /// Roots possibly inside the disk.
    pub count_upper: usize,
    pub bound: f64,
}

impl JensenCount {
    pub fn verdict(&self) -> Verdict {
        if self.count_upper as f64 <= self.bound {
            Verdict::Certified
        } else {
            Verdict::Violated
        }
    }

    pub fn report(&self, p: &IntPolynomial) -> LemmaReport {
        LemmaReport {
            lemma: "jensen-root-count".into(),
            inputs: json!({ "p": p, "k": self.k, "l": self.l }),
            hypothesis_status: "holds".into(),
            lhs: self.count_upper as f64,
            rhs: self.bound,
            verdict: self.verdict(),
        }
    }
}

pub fn jensen_root_count_check(p: &IntPolynomial, l: u64, k: usize) -> Result<JensenCount> {
    if p.is_zero() || k == 0 || l == 0 {
        return Err(Error::invalid("need P ≠ 0, k ≥ 1, l ≥ 1"));
    }
    if p.max_abs_coeff() > BigInt::from(l) {
        return Err(Error::HypothesisViolated(format!("coefficient above l = {l}")));
    }
    let v = p.valuation().unwrap();
    let q = IntPolynomial::new(p.coeffs()[v..].to_vec());
    let radius = jensen_radius(k);
    let bound = jensen_bound(k, l);
    let mut precision = 1e-12;
    loop {
        let (mut count, mut count_upper) = (0, 0);
        if q.degree().unwrap() > 0 {
            for r in roots(&q, precision)?.roots() {
                let (lo, hi) = r.disk.modulus_bounds();
                if hi < radius {
                    count += r.multiplicity;
                }
                if lo < radius {
                    count_upper += r.multiplicity;
                }
            }
        }
        let decided = count_upper as f64 <= bound || count as f64 > bound;
        if decided || precision < 1e-200 {
            return Ok(JensenCount { k, l, radius, count, count_upper, bound });
        }
        precision *= 1e-40;
    }
}

/// The root of P nearest to λ and how it compares with (2^n ε^{-n} r)^{c/log l}.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CloseRoot {
    pub root: AlgebraicNumber,
    pub distance_upper: f64,
    /// (2^n ε^{-n} r)^{c/log l}.
    pub radius: f64,
    pub c: f64,
    /// Largest exponent c for which the found root lies within the radius.
    pub c_star: f64,
    pub within: bool,
}

impl CloseRoot {
    pub fn report(&self, p: &IntPolynomial, n: usize, l: u64, eps: f64) -> LemmaReport {
        LemmaReport {
            lemma: "close-root".into(),
            inputs: json!({ "p": p, "n": n, "l": l, "eps": eps, "c": self.c }),
            hypothesis_status: "holds".into(),
            lhs: self.distance_upper,
            rhs: self.radius,
            verdict: if self.within { Verdict::Certified } else { Verdict::Violated },
        }
    }
}

pub fn close_root(
    p: &IntPolynomial,
    n: usize,
    l: u64,
    lambda: &ComplexRational,
    r: &Rational,
    eps: f64,
    c: f64,
) -> Result<CloseRoot> {
    let fail = |s: &str| Err(Error::HypothesisViolated(s.to_string()));
    if p.is_zero() || !p.in_bounded_class(&BigInt::from(l), n) {
        return fail("P is not a nonzero member of P_l^(n)");
    }
    if l < 3 {
        return fail("l < 3");
    }
    if !(eps > 0.0 && eps < 1.0) || !(c > 0.0) {
        return Err(Error::invalid("need 0 < ε < 1 and c > 0"));
    }
    let nf = n as f64;
    let ln_cap = nf * (eps.ln() - LN_2);
    if *r <= Rational::zero() || rational::ln_rational(r) >= ln_cap {
        return fail("r is not in (0, ε^n 2^{-n})");
    }
    let modulus = rational::to_f64(&lambda.norm_sqr()).sqrt();
    if modulus < eps * (1.0 + SLACK) || modulus > (1.0 - eps) * (1.0 - SLACK) {
        return fail("|λ| is not in [ε, 1−ε]");
    }
    let value = super::eval_exact(p, lambda);
    if value.norm_sqr() > r * r {
        return fail("|P(λ)| > r");
    }
    let ln_base = nf * LN_2 - nf * eps.ln() + rational::ln_rational(r);
    let ln_l = (l as f64).ln();
    let radius = (c * ln_base / ln_l).exp();
    let mut rs = roots(p, (radius * 1e-6).clamp(1e-280, 1e-12))?;
    if let Some(i) = rs.nearest(lambda) {
        let d = rs.roots()[i].disk.distance_bounds(lambda).1;
        if d > 0.0 {
            rs = roots(p, (d * 1e-9).clamp(1e-280, 1e-12))?;
        }
    }
    let (root, distance_upper) = if value.is_zero() {
        let root = if lambda.im.is_zero() {
            AlgebraicNumber::rational(lambda.re.clone())
        } else {
            let (re, im) = (lambda.re.clone(), lambda.im.clone());
            AlgebraicNumber::from_box(p.clone(), (re.clone(), re), (im.clone(), im))
        };
        (root, 0.0)
    } else {
        let i = rs.nearest(lambda).expect("P has a root");
        (rs.algebraic(i)?, rs.roots()[i].disk.distance_bounds(lambda).1)
    };
    let c_star = if distance_upper == 0.0 { f64::INFINITY } else { ln_l * distance_upper.ln() / ln_base };
    Ok(CloseRoot { root, distance_upper, radius, c, c_star, within: distance_upper <= radius })
}

/// Bounds on ln|P(λ)|; (−∞, −∞) for an exact zero.
fn ln_value_bounds(p: &IntPolynomial, lambda: &AlgebraicNumber, bits: u32) -> Result<(f64, f64)> {
    if let Some(q) = lambda.as_rational() {
        let v = p.eval(&q);
        if v.is_zero() {
            return Ok((f64::NEG_INFINITY, f64::NEG_INFINITY));
        }
        let lv = rational::ln_rational(&num_traits::Signed::abs(&v));
        return Ok((lv - SLACK, lv + SLACK));
    }
    if lambda.is_root_of(p) {
        return Ok((f64::NEG_INFINITY, f64::NEG_INFINITY));
    }
    let disk = algebraic_disk(lambda, bits)?;
    let v = rational::to_f64(&super::eval_exact(p, &disk.center).norm_sqr()).sqrt();
    let c = disk.modulus_bounds().1;
    let r = disk.radius();
    // |z^k − c^k| ≤ k r (|c| + r)^{k−1}
    let err: f64 = p
        .coeffs()
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, a)| a.to_f64().unwrap_or(f64::INFINITY).abs() * k as f64 * r * (c + r).powi(k as i32 - 1))
        .sum::<f64>()
        * (1.0 + SLACK);
    Ok((lnf(v * (1.0 - SLACK) - err), lnf(v * (1.0 + SLACK) + err)))
}

/// |P(λ)| against (ln)^{-deg λ} M(λ)^{-n}, and against (ln)^{-2n} when the minimal
/// polynomial of λ itself lies in P_l^(n).
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ValueBound {
    pub zero: bool,
    pub ln_value: (f64, f64),
    pub ln_bound: f64,
    pub ln_variant_bound: Option<f64>,
    pub verdict: Verdict,
}

impl ValueBound {
    pub fn report(&self, p: &IntPolynomial, n: usize, l: u64, lambda: &AlgebraicNumber) -> LemmaReport {
        LemmaReport {
            lemma: "value-lower-bound".into(),
            inputs: json!({ "p": p, "n": n, "l": l, "lambda": approx_json(lambda) }),
            hypothesis_status: "holds".into(),
            lhs: self.ln_value.0,
            rhs: self.ln_variant_bound.map_or(self.ln_bound, |v| v.max(self.ln_bound)),
            verdict: self.verdict,
        }
    }
}

pub fn value_lower_bound_check(p: &IntPolynomial, n: usize, l: u64, lambda: &AlgebraicNumber) -> Result<ValueBound> {
    let lb = BigInt::from(l);
    if !p.in_bounded_class(&lb, n) {
        return Err(Error::HypothesisViolated(format!("P is not in P_{l}^({n})")));
    }
    let m = mahler_enclosure(lambda.min_poly())?;
    let d = lambda.degree() as f64;
    let ln_ln = ((l * n as u64) as f64).ln();
    // the largest admissible bound, from the smallest admissible M(λ)
    let ln_bound = -d * ln_ln - n as f64 * m.lower.ln();
    let ln_bound_low = -d * ln_ln - n as f64 * m.upper.ln();
    let ln_variant_bound = lambda.min_poly().in_bounded_class(&lb, n).then(|| -2.0 * n as f64 * ln_ln);
    let target = ln_variant_bound.map_or(ln_bound, |v| v.max(ln_bound));
    let target_low = ln_variant_bound.map_or(ln_bound_low, |v| v.max(ln_bound_low));
    let mut bits = 64;
    loop {
        let (lo, hi) = ln_value_bounds(p, lambda, bits)?;
        if hi == f64::NEG_INFINITY {
            return Ok(ValueBound { zero: true, ln_value: (lo, hi), ln_bound, ln_variant_bound, verdict: Verdict::Certified });
        }
        let verdict = if lo >= target {
            Some(Verdict::Certified)
        } else if hi < target_low {
            Some(Verdict::Violated)
        } else {
            None
        };
        if let Some(verdict) = verdict {
            return Ok(ValueBound { zero: false, ln_value: (lo, hi), ln_bound, ln_variant_bound, verdict });
        }
        bits *= 2;
        if bits > MAX_BITS {
            return Err(Error::PrecisionExhausted { bits: MAX_BITS });
        }
    }
}

/// Inputs of the multiplicity test: P ∈ P_l^(n′), real λ and η in [0,1], deg η ≤ n.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DimitrovInstance {
    pub p: IntPolynomial,
    pub n_prime: usize,
    pub l: u64,
    pub lambda: AlgebraicNumber,
    pub eta: AlgebraicNumber,
    pub n: usize,
    pub k: usize,
    pub alpha: f64,
}

/// ((n(k+1)+(k+2)) log n′ + (n+1) log l + log 2)/n′.
pub fn dimitrov_ln_alpha_threshold(n: usize, n_prime: usize, l: u64, k: usize) -> f64 {
    let (nf, kf, npf) = (n as f64, k as f64, n_prime as f64);
    ((nf * (kf + 1.0) + kf + 2.0) * npf.ln() + (nf + 1.0) * (l as f64).ln() + LN_2) / npf
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DimitrovVerdict {
    HypothesesHold,
    HypothesesFail(String),
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DimitrovOutcome {
    pub verdict: DimitrovVerdict,
    /// Exact order of vanishing of P at η.
    pub order: usize,
    pub k: usize,
    pub ln_alpha_threshold: f64,
    pub ln_distance: (f64, f64),
    pub ln_window_lower: f64,
    pub ln_window_upper: f64,
}

impl DimitrovOutcome {
    pub fn holds(&self) -> bool {
        self.verdict == DimitrovVerdict::HypothesesHold
    }

    /// Hypotheses certified but the order is below k.
    pub fn violated(&self) -> bool {
        self.holds() && self.order < self.k
    }

    pub fn report(&self, inst: &DimitrovInstance) -> LemmaReport {
        let (status, verdict) = match &self.verdict {
            DimitrovVerdict::HypothesesHold if self.order >= self.k => ("holds".to_string(), Verdict::Certified),
            DimitrovVerdict::HypothesesHold => ("holds".to_string(), Verdict::Violated),
            DimitrovVerdict::HypothesesFail(s) => (s.clone(), Verdict::HypothesesFail),
        };
        LemmaReport {
            lemma: "dimitrov".into(),
            inputs: serde_json::to_value(inst).unwrap_or_default(),
            hypothesis_status: status,
            lhs: self.order as f64,
            rhs: self.k as f64,
            verdict,
        }
    }
}

fn in_unit_interval(a: &AlgebraicNumber) -> bool {
    use std::cmp::Ordering::*;
    a.is_real() && a.cmp_rational(&Rational::zero()) != Less && a.cmp_rational(&Rational::one()) != Greater
}

fn distance_enclosure(a: &AlgebraicNumber, b: &AlgebraicNumber) -> Result<Option<(f64, f64)>> {
    let mut bits = 64;
    loop {
        let (lo, hi) = algebraic_disk(a, bits)?.gap_bounds(&algebraic_disk(b, bits)?);
        if lo > 0.0 && hi.ln() - lo.ln() < 1e-9 {
            return Ok(Some((lo.ln(), hi.ln())));
        }
        bits *= 2;
        if bits > MAX_BITS {
            return Ok(None);
        }
    }
}

/// Evaluates the hypotheses conservatively, in log space; anything not certified
/// counts as a failure. The exact order of P at η is always computed.
pub fn dimitrov_test(inst: &DimitrovInstance) -> Result<DimitrovOutcome> {
    let DimitrovInstance { p, n_prime, l, lambda, eta, n, k, alpha } = inst;
    let (n_prime, l, n, k) = (*n_prime, *l, *n, *k);
    if k == 0 || n == 0 || n_prime == 0 || l == 0 || !(*alpha > 0.0) {
        return Err(Error::invalid("need k, n, n′, l ≥ 1 and α > 0"));
    }
    let order = if p.is_zero() { usize::MAX } else { vanishing_order(p, eta) };
    let threshold = dimitrov_ln_alpha_threshold(n, n_prime, l, k);
    let mut out = DimitrovOutcome {
        verdict: DimitrovVerdict::HypothesesHold,
        order,
        k,
        ln_alpha_threshold: threshold,
        ln_distance: (f64::NAN, f64::NAN),
        ln_window_lower: f64::NAN,
        ln_window_upper: f64::NAN,
    };
    let fail = |mut out: DimitrovOutcome, s: &str| {
        out.verdict = DimitrovVerdict::HypothesesFail(s.to_string());
        Ok(out)
    };
    if p.is_zero() || !p.in_bounded_class(&BigInt::from(l), n_prime) {
        return fail(out, "P is not a nonzero member of P_l^(n′)");
    }
    if !in_unit_interval(lambda) || !in_unit_interval(eta) {
        return fail(out, "λ or η outside [0,1]");
    }
    if eta.degree() > n {
        return fail(out, "deg η > n");
    }
    let ln_alpha = alpha.ln();
    if ln_alpha <= threshold + SLACK * (threshold.abs() + 1.0) {
        return fail(out, "log α does not exceed the threshold");
    }
    let Some((d_lo, d_hi)) = distance_enclosure(lambda, eta)? else {
        return fail(out, "η = λ or indistinguishable");
    };
    out.ln_distance = (d_lo, d_hi);
    let ln_m = mahler_enclosure(eta.min_poly())?.upper.ln();
    let (lo_p, hi_p) = ln_value_bounds(p, lambda, 128)?;
    let _ = lo_p;
    let (npf, kf) = (n_prime as f64, k as f64);
    out.ln_window_lower = (npf / kf) * (ln_alpha + ln_m) + hi_p / kf;
    out.ln_window_upper = -npf * (ln_alpha + ln_m);
    let tol = SLACK * (d_lo.abs() + 1.0);
    if out.ln_window_lower > d_lo - tol {
        return fail(out, "|λ−η| below the lower window");
    }
    if d_hi > out.ln_window_upper - tol {
        return fail(out, "|λ−η| above the upper window");
    }
    Ok(out)
}

/// Builds P = m_η^order · G with λ rational, just right of η, at the largest distance
/// 2^{-j} below (αM(η))^{-n′} for which the hypotheses are certified; if none is
/// found within 32 halvings by 2^8, returns the last candidate.
pub fn dimitrov_construct(eta: &AlgebraicNumber, g: &IntPolynomial, k: usize, order: usize, pad: usize) -> Result<DimitrovInstance> {
    dimitrov_place(eta, g, k, order, pad, false)
}

/// As `dimitrov_construct` with λ placed 4·(αM(η))^{-n′} from η, outside the window.
pub fn dimitrov_construct_far(eta: &AlgebraicNumber, g: &IntPolynomial, k: usize, order: usize, pad: usize) -> Result<DimitrovInstance> {
    dimitrov_place(eta, g, k, order, pad, true)
}

fn dimitrov_place(eta: &AlgebraicNumber, g: &IntPolynomial, k: usize, order: usize, pad: usize, far: bool) -> Result<DimitrovInstance> {
    if k == 0 || g.is_zero() {
        return Err(Error::invalid("need k ≥ 1 and G ≠ 0"));
    }
    let p = &eta.min_poly().pow(order as u32) * g;
    let n = eta.degree();
    let n_prime = p.degree().unwrap() + 1 + pad;
    let l = p.max_abs_coeff().to_u64().ok_or_else(|| Error::invalid("coefficients too large"))?;
    let threshold = dimitrov_ln_alpha_threshold(n, n_prime, l, k);
    let alpha = (threshold + 0.05).exp();
    let ln_m = mahler_enclosure(eta.min_poly())?.upper.ln();
    let ln_target = -(n_prime as f64) * (alpha.ln() + ln_m);
    let mut j = if far { (-(ln_target + 4f64.ln()) / LN_2).floor() as u32 } else { (-ln_target / LN_2).ceil() as u32 + 1 };
    let mut last = None;
    for _ in 0..if far { 1 } else { 32 } {
        let d = Rational::new(BigInt::one(), BigInt::one() << j);
        let (lo, _) = eta.real_enclosure(j + 40);
        let lambda = AlgebraicNumber::rational(lo + d);
        let inst = DimitrovInstance { p: p.clone(), n_prime, l, lambda, eta: eta.clone(), n, k, alpha };
        if far || dimitrov_test(&inst)?.holds() {
            return Ok(inst);
        }
        last = Some(inst);
        j += 8;
    }
    Ok(last.unwrap())
}
