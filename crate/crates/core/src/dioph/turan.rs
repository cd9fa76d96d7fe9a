//! Turán's lower bound for power sums and the power-sum comparison of multisets.

use std::f64::consts::{E, LN_2};

use num_complex::Complex64;
use serde::Serialize;
use serde_json::json;

use super::{LemmaReport, Verdict};
use crate::error::{Error, Result};

const SLACK: f64 = 1e-9;

/// Outcome of Turán's bound at one instance.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TuranReport {
    pub n: usize,
    pub m: usize,
    pub h: usize,
    /// max over j ∈ {m+1, …, m+n} of |Σ b_i z_i^j|.
    pub max_power_sum: f64,
    /// Best j for the normalized comparison.
    pub j: usize,
    /// max_j log(|Σ b_i z_i^j| / |z₁|^j).
    pub ln_lhs: f64,
    /// log(2((δ₁−δ₂)/12e)^n |b₁+…+b_h|).
    pub ln_rhs: f64,
    pub holds: bool,
}

impl TuranReport {
    pub fn report(&self, z: &[Complex64], b: &[Complex64], d1: f64, d2: f64) -> LemmaReport {
        let pairs = |v: &[Complex64]| v.iter().map(|c| [c.re, c.im]).collect::<Vec<_>>();
        LemmaReport {
            lemma: "turan".into(),
            inputs: json!({ "z": pairs(z), "b": pairs(b), "m": self.m, "delta1": d1, "delta2": d2 }),
            hypothesis_status: "holds".into(),
            lhs: self.ln_lhs,
            rhs: self.ln_rhs,
            verdict: if self.holds { Verdict::Certified } else { Verdict::Violated },
        }
    }
}

/// Checks that some j ∈ {m+1, …, m+n} has
/// |b₁z₁^j + … + b_nz_n^j| ≥ 2((δ₁−δ₂)/12e)^n |b₁+…+b_h| |z₁|^j.
pub fn turan_bound(z: &[Complex64], b: &[Complex64], m: usize, d1: f64, d2: f64) -> Result<TuranReport> {
    let n = z.len();
    let fail = |s: &str| Err(Error::HypothesisViolated(s.to_string()));
    if n == 0 || b.len() != n {
        return Err(Error::invalid("z and b must be nonempty and of equal length"));
    }
    if z[0] == Complex64::new(0.0, 0.0) {
        return fail("z₁ = 0");
    }
    let dist: Vec<f64> = z.iter().map(|zi| (z[0] - zi).norm()).collect();
    if dist.windows(2).skip(1).any(|w| w[0] > w[1]) {
        return fail("z₂, …, z_n not sorted by distance to z₁");
    }
    let nf = n as f64;
    if !(0.0 < d2 && d2 < d1 && d1 < nf / (m as f64 + nf + 1.0)) {
        return fail("need 0 < δ₂ < δ₁ < n/(m+n+1)");
    }
    let r1 = z[0].norm();
    let h = dist.iter().take_while(|&&d| d < r1 * d2).count();
    if h < n && dist[h] <= r1 * d1 {
        return fail("gap condition |z₁ − z_{h+1}| > |z₁|δ₁ fails");
    }
    let bsum: Complex64 = b[..h].iter().sum();
    let ln_rhs = LN_2 + nf * ((d1 - d2) / (12.0 * E)).ln() + bsum.norm().ln();
    let mut best = (f64::NEG_INFINITY, m + 1);
    let mut max_power_sum = 0.0f64;
    for j in m + 1..=m + n {
        let s: Complex64 = z.iter().zip(b).map(|(zi, bi)| bi * zi.powu(j as u32)).sum();
        max_power_sum = max_power_sum.max(s.norm());
        let v = s.norm().ln() - j as f64 * r1.ln();
        if v > best.0 {
            best = (v, j);
        }
    }
    let holds = ln_rhs == f64::NEG_INFINITY || best.0 >= ln_rhs - SLACK * (ln_rhs.abs() + 1.0);
    Ok(TuranReport { n, m, h, max_power_sum, j: best.1, ln_lhs: best.0, ln_rhs, holds })
}

/// log δ(ε, M) with δ = (ε₀ / (2^{2M+2}·12e))^{2M}, ε₀ = min(1/3, ε/2^{M+2}).
pub fn power_sum_ln_delta(eps: f64, m: usize) -> f64 {
    let mf = m as f64;
    let eps0 = (1.0f64 / 3.0).min(eps / 2f64.powf(mf + 2.0));
    2.0 * mf * (eps0.ln() - (2.0 * mf + 2.0) * LN_2 - (12.0 * E).ln())
}

/// Evaluation of the power-sum lemma at one pair of multisets.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PowerSumCheck {
    /// max over j ≤ 2M of |Σ u^j − Σ w^j|.
    pub max_difference: f64,
    pub delta: f64,
    pub ln_delta_regime: f64,
    pub hypothesis_holds: bool,
    /// δ ≤ δ(ε, M), where the lemma applies.
    pub in_regime: bool,
    pub same_size: bool,
    /// |1 − ∏u/∏w| when the sizes agree.
    pub product_gap: Option<f64>,
    pub verdict: Verdict,
}

impl PowerSumCheck {
    pub fn report(&self, m: usize, eps: f64) -> LemmaReport {
        let status = if !self.hypothesis_holds {
            "power sums differ by more than δ".to_string()
        } else if !self.in_regime {
            "δ above δ(ε, M)".to_string()
        } else {
            "holds".to_string()
        };
        LemmaReport {
            lemma: "power-sums".into(),
            inputs: json!({ "m": m, "eps": eps, "delta": self.delta }),
            hypothesis_status: status,
            lhs: self.product_gap.unwrap_or(f64::INFINITY),
            rhs: eps,
            verdict: self.verdict,
        }
    }
}

fn canonical(v: &[Complex64]) -> Vec<Complex64> {
    let mut v = v.to_vec();
    v.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    v
}

/// Power sums are taken over canonically sorted multisets, so a permutation gives
/// bitwise equal sums.
pub fn power_sum_multiset_check(u: &[Complex64], w: &[Complex64], m: usize, delta: f64, eps: f64) -> Result<PowerSumCheck> {
    if u.len() > m || w.len() > m {
        return Err(Error::HypothesisViolated(format!("a multiset has more than M = {m} elements")));
    }
    if u.iter().chain(w).any(|x| x.norm() < 1.0) {
        return Err(Error::HypothesisViolated("an element has modulus below 1".into()));
    }
    if !(eps > 0.0) || !(delta >= 0.0) {
        return Err(Error::invalid("need ε > 0 and δ ≥ 0"));
    }
    let (u, w) = (canonical(u), canonical(w));
    let max_difference = (1..=2 * m as u32)
        .map(|j| {
            let su: Complex64 = u.iter().map(|x| x.powu(j)).sum();
            let sw: Complex64 = w.iter().map(|x| x.powu(j)).sum();
            (su - sw).norm()
        })
        .fold(0.0, f64::max);
    let ln_delta_regime = power_sum_ln_delta(eps, m);
    let hypothesis_holds = max_difference <= delta;
    let in_regime = delta == 0.0 || delta.ln() <= ln_delta_regime;
    let same_size = u.len() == w.len();
    let product_gap = same_size.then(|| {
        let pu: Complex64 = u.iter().product();
        let pw: Complex64 = w.iter().product();
        (Complex64::new(1.0, 0.0) - pu / pw).norm()
    });
    let verdict = if !(hypothesis_holds && in_regime) {
        Verdict::HypothesesFail
    } else if same_size && product_gap.is_some_and(|g| g <= eps) {
        Verdict::Certified
    } else {
        Verdict::Violated
    };
    Ok(PowerSumCheck { max_difference, delta, ln_delta_regime, hypothesis_holds, in_regime, same_size, product_gap, verdict })
}
