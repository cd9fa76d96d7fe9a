//! Sturm sequences for exact real-root counting and isolation.

use num_traits::{Signed, Zero};

use super::qpoly::QPoly;
use super::rational::Rational;

pub struct SturmSequence {
    chain: Vec<QPoly>,
}

impl SturmSequence {
    pub fn new(p: &QPoly) -> Self {
        let mut chain = vec![p.clone()];
        let d = p.derivative();
        if !d.is_zero() {
            chain.push(d);
            loop {
                let n = chain.len();
                let r = chain[n - 2].rem(&chain[n - 1]);
                if r.is_zero() {
                    break;
                }
                chain.push(-&r);
            }
        }
        SturmSequence { chain }
    }

    fn variations(&self, x: &Rational) -> usize {
        let mut count = 0;
        let mut prev: Option<bool> = None;
        for p in &self.chain {
            let v = p.eval(x);
            if v.is_zero() {
                continue;
            }
            let pos = v.is_positive();
            if prev.is_some_and(|s| s != pos) {
                count += 1;
            }
            prev = Some(pos);
        }
        count
    }

    /// Distinct real roots in the half-open interval (a, b].
    pub fn count(&self, a: &Rational, b: &Rational) -> usize {
        self.variations(a).saturating_sub(self.variations(b))
    }

    /// Distinct real roots in the open interval (a, b).
    pub fn count_open(&self, a: &Rational, b: &Rational) -> usize {
        let c = self.count(a, b);
        if self.chain[0].eval(b).is_zero() {
            c - 1
        } else {
            c
        }
    }
}

/// Cauchy bound: every complex root has modulus < bound.
pub fn cauchy_bound(p: &QPoly) -> Rational {
    let lc = p.leading().expect("nonzero polynomial").abs();
    let m = p.coeffs().iter().map(|c| c.abs()).max().unwrap();
    Rational::from_integer(1.into()) + m / lc
}

/// Isolating data for one real root: either an exact rational root or an open
/// interval with rational endpoints containing exactly one root.
#[derive(Clone, Debug, PartialEq)]
pub enum RealRootInterval {
    Exact(Rational),
    Open(Rational, Rational),
}

/// Isolates all distinct real roots of `p` in increasing order.
pub fn isolate_real_roots(p: &QPoly) -> Vec<RealRootInterval> {
    let mut out = Vec::new();
    if p.degree().unwrap_or(0) == 0 {
        return out;
    }
    let sturm = SturmSequence::new(p);
    let b = cauchy_bound(p);
    let lo = -b.clone();
    isolate_rec(p, &sturm, lo, b, &mut out);
    out
}

fn isolate_rec(p: &QPoly, s: &SturmSequence, lo: Rational, hi: Rational, out: &mut Vec<RealRootInterval>) {
    let n = s.count_open(&lo, &hi);
    if n == 0 {
        return;
    }
    if n == 1 {
        // endpoints must not be roots so that refinement can track the sign change
        let (mut lo, mut hi) = (lo, hi);
        let two = Rational::from_integer(2.into());
        while p.eval(&lo).is_zero() || p.eval(&hi).is_zero() {
            let mid = (&lo + &hi) / &two;
            if s.count_open(&lo, &mid) == 1 {
                hi = mid;
            } else if s.count_open(&mid, &hi) == 1 {
                lo = mid;
            } else {
                out.push(RealRootInterval::Exact(mid));
                return;
            }
        }
        out.push(RealRootInterval::Open(lo, hi));
        return;
    }
    let mid = (&lo + &hi) / Rational::from_integer(2.into());
    isolate_rec(p, s, lo, mid.clone(), out);
    if p.eval(&mid).is_zero() {
        out.push(RealRootInterval::Exact(mid.clone()));
    }
    isolate_rec(p, s, mid, hi, out);
}

/// Bisects an isolating open interval until its width is at most `width`.
/// Requires a sign change of the square-free `p` across the interval.
pub fn refine_interval(p: &QPoly, iv: &RealRootInterval, width: &Rational) -> RealRootInterval {
    let (mut lo, mut hi) = match iv {
        RealRootInterval::Exact(_) => return iv.clone(),
        RealRootInterval::Open(lo, hi) => (lo.clone(), hi.clone()),
    };
    let two = Rational::from_integer(2.into());
    let mut sign_lo = p.eval(&lo).is_positive();
    while &hi - &lo > *width {
        let mid = (&lo + &hi) / &two;
        let v = p.eval(&mid);
        if v.is_zero() {
            return RealRootInterval::Exact(mid);
        }
        if v.is_positive() == sign_lo {
            lo = mid;
            sign_lo = v.is_positive();
        } else {
            hi = mid;
        }
    }
    RealRootInterval::Open(lo, hi)
}
