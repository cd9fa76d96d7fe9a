//! Certified complex roots of integer polynomials.
//!
//! Each square-free factor of the input is solved by Aberth iteration in f64, then
//! polished by Weierstrass steps in exact dyadic arithmetic. With Weierstrass
//! corrections W_i the polynomial is the characteristic polynomial of diag(z) − W·1ᵀ,
//! so Gershgorin gives disks D(z_i − W_i, (d−1)|W_i|); pairwise disjoint disks hold
//! exactly one root each.

use num_bigint::BigInt;
use num_complex::{Complex, Complex64};
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exactnum::rational::{self, from_f64, round_dyadic};
use crate::exactnum::{AlgebraicNumber, IntPolynomial, Rational};

pub type ComplexRational = Complex<Rational>;

/// Hard cap on working precision.
pub const MAX_BITS: u32 = 4096;
const START_BITS: u32 = 64;
const SLACK: f64 = 1e-12;

/// A closed disk with exact center and exact squared radius.
#[derive(Clone, Debug, PartialEq)]
pub struct Disk {
    pub center: ComplexRational,
    pub radius_sq: Rational,
}

impl Disk {
    pub fn point(center: ComplexRational) -> Self {
        Disk { center, radius_sq: Rational::zero() }
    }

    pub fn is_exact(&self) -> bool {
        self.radius_sq.is_zero()
    }

    pub fn center_f64(&self) -> Complex64 {
        Complex64::new(rational::to_f64(&self.center.re), rational::to_f64(&self.center.im))
    }

    /// An f64 upper bound for the radius.
    pub fn radius(&self) -> f64 {
        if self.radius_sq.is_zero() {
            return 0.0;
        }
        let r = rational::to_f64(&self.radius_sq).sqrt() * (1.0 + SLACK);
        if r > 0.0 {
            r
        } else {
            f64::MIN_POSITIVE
        }
    }

    /// Exact test that the closed disks do not meet.
    pub fn disjoint(&self, other: &Disk) -> bool {
        let diff = &self.center - &other.center;
        let s = diff.norm_sqr() - &self.radius_sq - &other.radius_sq;
        if !s.is_positive() {
            return false;
        }
        let four = Rational::from_integer(BigInt::from(4));
        &s * &s > four * &self.radius_sq * &other.radius_sq
    }

    /// Cheap f64 test, conservative: true only when the disks are certainly disjoint.
    fn clearly_disjoint(&self, other: &Disk) -> bool {
        let (a, b) = (self.center_f64(), other.center_f64());
        let d = (a - b).norm();
        let scale = a.norm() + b.norm() + 1.0;
        d > (self.radius() + other.radius()) * (1.0 + 1e-6) + 1e-9 * scale
    }

    /// Bounds on |z| over the disk.
    pub fn modulus_bounds(&self) -> (f64, f64) {
        let c = self.center_f64().norm();
        let r = self.radius();
        (((c * (1.0 - SLACK)) - r).max(0.0), c * (1.0 + SLACK) + r)
    }

    /// Bounds on |z − w| for z in the disk.
    pub fn distance_bounds(&self, w: &ComplexRational) -> (f64, f64) {
        let diff = &self.center - w;
        let d = rational::to_f64(&diff.norm_sqr()).sqrt();
        let r = self.radius();
        ((d * (1.0 - SLACK) - r).max(0.0), d * (1.0 + SLACK) + r)
    }

    /// Bounds on the distance between points of two disks.
    pub fn gap_bounds(&self, other: &Disk) -> (f64, f64) {
        let (lo, hi) = Disk { center: other.center.clone(), radius_sq: Rational::zero() }.distance_bounds(&self.center);
        let r = self.radius() + other.radius();
        ((lo - r).max(0.0), hi + r)
    }

    fn meets_real_axis(&self) -> bool {
        &self.center.im * &self.center.im <= self.radius_sq
    }

    fn conjugate(&self) -> Disk {
        Disk { center: self.center.conj(), radius_sq: self.radius_sq.clone() }
    }
}

/// Exact evaluation at a Gaussian rational.
pub fn eval_exact(p: &IntPolynomial, z: &ComplexRational) -> ComplexRational {
    let mut acc = ComplexRational::zero();
    for c in p.coeffs().iter().rev() {
        acc = acc * z + ComplexRational::new(Rational::from_integer(c.clone()), Rational::zero());
    }
    acc
}

/// Square-free factorization: pairs (factor, multiplicity), factors primitive and coprime.
pub fn square_free_factors(p: &IntPolynomial) -> Vec<(IntPolynomial, usize)> {
    let f = p.to_qpoly();
    let fp = f.derivative();
    let a0 = f.gcd(&fp);
    let mut b = f.div_rem(&a0).0;
    let c = fp.div_rem(&a0).0;
    let mut d = &c - &b.derivative();
    let mut out = Vec::new();
    let mut i = 1;
    while b.degree().is_some_and(|k| k > 0) {
        let a = b.gcd(&d);
        let bn = b.div_rem(&a).0;
        let cn = d.div_rem(&a).0;
        if a.degree().is_some_and(|k| k > 0) {
            out.push((a.to_primitive_int(), i));
        }
        d = &cn - &bn.derivative();
        b = bn;
        i += 1;
    }
    out
}

fn scaled_f64_coeffs(p: &IntPolynomial) -> Vec<f64> {
    let bits = p.max_abs_coeff().bits();
    let shift = bits.saturating_sub(900);
    p.coeffs()
        .iter()
        .map(|c| {
            if shift == 0 {
                c.to_f64().unwrap()
            } else {
                rational::to_f64(&Rational::new(c.clone(), BigInt::one() << shift))
            }
        })
        .collect()
}

/// Aberth–Ehrlich iteration in f64 for a polynomial of degree ≥ 1.
pub fn aberth(p: &IntPolynomial) -> Vec<Complex64> {
    let a = scaled_f64_coeffs(p);
    let d = a.len() - 1;
    let lead = a[d];
    let monic: Vec<f64> = a.iter().map(|c| c / lead).collect();
    let radius = (0..d)
        .map(|i| monic[i].abs().powf(1.0 / (d - i) as f64))
        .fold(0.0f64, f64::max)
        .max(1e-3)
        * 2.0;
    let mut z: Vec<Complex64> = (0..d)
        .map(|j| Complex64::from_polar(radius, std::f64::consts::TAU * j as f64 / d as f64 + 0.4))
        .collect();
    let eval = |x: Complex64| {
        let mut v = Complex64::new(0.0, 0.0);
        let mut dv = Complex64::new(0.0, 0.0);
        for &c in monic.iter().rev() {
            dv = dv * x + v;
            v = v * x + c;
        }
        (v, dv)
    };
    for _ in 0..2000 {
        let mut moved = 0.0f64;
        for i in 0..d {
            let (v, dv) = eval(z[i]);
            if v.norm() == 0.0 {
                continue;
            }
            let ratio = v / dv;
            let s: Complex64 = (0..d).filter(|&j| j != i).map(|j| (z[i] - z[j]).inv()).sum();
            let w = ratio / (Complex64::new(1.0, 0.0) - ratio * s);
            if w.is_finite() {
                z[i] -= w;
                moved = moved.max(w.norm() / (1.0 + z[i].norm()));
            }
        }
        if moved < 1e-15 {
            break;
        }
    }
    z
}

fn to_dyadic(z: Complex64, bits: u32) -> ComplexRational {
    ComplexRational::new(round_dyadic(&from_f64(z.re), bits), round_dyadic(&from_f64(z.im), bits))
}

fn round_c(z: &ComplexRational, bits: u32) -> ComplexRational {
    ComplexRational::new(round_dyadic(&z.re, bits), round_dyadic(&z.im, bits))
}

/// Gershgorin disks from Weierstrass corrections; None if two approximations coincide.
fn weierstrass_disks(p: &IntPolynomial, z: &[ComplexRational]) -> Option<Vec<Disk>> {
    let d = z.len();
    let lead = ComplexRational::new(Rational::from_integer(p.leading().unwrap().clone()), Rational::zero());
    let dm1 = Rational::from_integer(BigInt::from(d - 1));
    let mut out = Vec::with_capacity(d);
    for i in 0..d {
        let mut den = lead.clone();
        for j in 0..d {
            if j != i {
                let diff = &z[i] - &z[j];
                if diff.is_zero() {
                    return None;
                }
                den = den * diff;
            }
        }
        let w = eval_exact(p, &z[i]) / den;
        let radius_sq = &dm1 * &dm1 * w.norm_sqr();
        out.push(Disk { center: &z[i] - &w, radius_sq });
    }
    Some(out)
}

fn pairwise_disjoint(disks: &[&Disk]) -> bool {
    for i in 0..disks.len() {
        for j in i + 1..disks.len() {
            if !disks[i].clearly_disjoint(disks[j]) && !disks[i].disjoint(disks[j]) {
                return false;
            }
        }
    }
    true
}

/// Disks for the roots of a square-free polynomial, each of squared radius ≤ `target_sq`.
fn certify_square_free(p: &IntPolynomial, target_sq: &Rational) -> Result<(Vec<Disk>, u32)> {
    let d = p.degree().unwrap();
    if d == 1 {
        let root = Rational::new(-p.coeff(0), p.coeff(1));
        return Ok((vec![Disk::point(ComplexRational::new(root, Rational::zero()))], 0));
    }
    let approx = aberth(p);
    let mut bits = START_BITS;
    let mut z: Vec<ComplexRational> = approx.iter().map(|&x| to_dyadic(x, bits)).collect();
    loop {
        // clustered roots converge linearly, so iterate while the radii keep shrinking
        let mut prev: Option<Rational> = None;
        for _ in 0..4 * bits {
            let disks = match weierstrass_disks(p, &z) {
                Some(disks) => disks,
                None => {
                    let eps = Rational::new(BigInt::one(), BigInt::one() << bits);
                    for (i, zi) in z.iter_mut().enumerate() {
                        let k = Rational::from_integer(BigInt::from(i + 1));
                        *zi = &*zi + ComplexRational::new(&eps * &k, &eps * &k);
                    }
                    continue;
                }
            };
            let refs: Vec<&Disk> = disks.iter().collect();
            if disks.iter().all(|dk| dk.radius_sq <= *target_sq) && pairwise_disjoint(&refs) {
                return Ok((disks, bits));
            }
            let worst = disks.iter().map(|dk| dk.radius_sq.clone()).max().unwrap();
            if prev.as_ref().is_some_and(|p| worst * Rational::from_integer(BigInt::from(2)) > *p) {
                break;
            }
            prev = Some(disks.iter().map(|dk| dk.radius_sq.clone()).max().unwrap());
            z = disks.iter().map(|dk| round_c(&dk.center, bits)).collect();
        }
        bits *= 2;
        if bits > MAX_BITS {
            return Err(Error::PrecisionExhausted { bits: MAX_BITS });
        }
        z = z.iter().map(|x| round_c(x, bits)).collect();
    }
}

/// One certified root.
#[derive(Clone, Debug, PartialEq)]
pub struct CertifiedRoot {
    pub disk: Disk,
    pub multiplicity: usize,
    /// The square-free factor of the source that has this root.
    pub factor: IntPolynomial,
}

impl CertifiedRoot {
    pub fn center(&self) -> Complex64 {
        self.disk.center_f64()
    }

    pub fn radius(&self) -> f64 {
        self.disk.radius()
    }
}

/// All complex roots of a nonzero polynomial, in certified pairwise disjoint disks.
#[derive(Clone, Debug, PartialEq)]
pub struct RootSet {
    source: IntPolynomial,
    roots: Vec<CertifiedRoot>,
    bits: u32,
}

impl Serialize for RootSet {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Row {
            re: f64,
            im: f64,
            radius: f64,
            multiplicity: usize,
        }
        let rows: Vec<Row> = self
            .roots
            .iter()
            .map(|r| Row { re: r.center().re, im: r.center().im, radius: r.radius(), multiplicity: r.multiplicity })
            .collect();
        let mut st = s.serialize_struct("RootSet", 2)?;
        st.serialize_field("source", &self.source)?;
        st.serialize_field("roots", &rows)?;
        st.end()
    }
}

impl RootSet {
    pub fn source(&self) -> &IntPolynomial {
        &self.source
    }

    pub fn roots(&self) -> &[CertifiedRoot] {
        &self.roots
    }

    /// Working precision reached, in bits.
    pub fn bits(&self) -> u32 {
        self.bits
    }

    /// Sum of multiplicities.
    pub fn degree(&self) -> usize {
        self.roots.iter().map(|r| r.multiplicity).sum()
    }

    /// Root centers repeated by multiplicity.
    pub fn approx(&self) -> Vec<Complex64> {
        self.roots.iter().flat_map(|r| std::iter::repeat_n(r.center(), r.multiplicity)).collect()
    }

    /// Certifies realness when the mirrored disk meets no other disk.
    pub fn is_real(&self, i: usize) -> bool {
        let d = &self.roots[i].disk;
        if d.center.im.is_zero() && d.is_exact() {
            return true;
        }
        if !d.meets_real_axis() {
            return false;
        }
        let m = d.conjugate();
        self.roots.iter().enumerate().all(|(j, r)| j == i || m.disjoint(&r.disk))
    }

    /// The i-th root as an algebraic number defined by its square-free factor.
    pub fn algebraic(&self, i: usize) -> Result<AlgebraicNumber> {
        let r = &self.roots[i];
        if r.disk.is_exact() && r.disk.center.im.is_zero() {
            return Ok(AlgebraicNumber::rational(r.disk.center.re.clone()));
        }
        let rad = from_f64(r.radius());
        let re = (&r.disk.center.re - &rad, &r.disk.center.re + &rad);
        if self.is_real(i) {
            return AlgebraicNumber::real_root_in(&r.factor, re.0, re.1);
        }
        let im = (&r.disk.center.im - &rad, &r.disk.center.im + &rad);
        Ok(AlgebraicNumber::from_box(r.factor.clone(), re, im))
    }

    /// Index of the root whose center is nearest to `z`.
    pub fn nearest(&self, z: &ComplexRational) -> Option<usize> {
        (0..self.roots.len()).min_by(|&a, &b| {
            let da = self.roots[a].disk.distance_bounds(z).1;
            let db = self.roots[b].disk.distance_bounds(z).1;
            da.total_cmp(&db)
        })
    }
}

/// Certified roots with every radius at most `precision`.
pub fn roots(p: &IntPolynomial, precision: f64) -> Result<RootSet> {
    if p.is_zero() {
        return Err(Error::invalid("roots of the zero polynomial"));
    }
    if !(precision > 0.0) {
        return Err(Error::invalid("precision must be positive"));
    }
    let factors = square_free_factors(p);
    let mut target = from_f64(precision);
    target = &target * &target;
    for _ in 0..8 {
        let mut all = Vec::new();
        let mut bits = 0;
        for (f, mult) in &factors {
            let (disks, b) = certify_square_free(f, &target)?;
            bits = bits.max(b);
            all.extend(disks.into_iter().map(|disk| CertifiedRoot { disk, multiplicity: *mult, factor: f.clone() }));
        }
        let refs: Vec<&Disk> = all.iter().map(|r| &r.disk).collect();
        if pairwise_disjoint(&refs) {
            return Ok(RootSet { source: p.clone(), roots: all, bits });
        }
        target = target / Rational::from_integer(BigInt::one() << 64u32);
    }
    Err(Error::PrecisionExhausted { bits: MAX_BITS })
}

/// Certified disks for the roots of pairwise coprime square-free polynomials,
/// checked disjoint across the whole family.
pub fn roots_of_coprime_family(polys: &[IntPolynomial], precision: f64) -> Result<Vec<CertifiedRoot>> {
    let mut target = from_f64(precision);
    target = &target * &target;
    for _ in 0..8 {
        let mut all = Vec::new();
        for f in polys.iter().filter(|f| f.degree().is_some_and(|d| d > 0)) {
            let (disks, _) = certify_square_free(f, &target)?;
            all.extend(disks.into_iter().map(|disk| CertifiedRoot { disk, multiplicity: 1, factor: f.clone() }));
        }
        let mut order: Vec<usize> = (0..all.len()).collect();
        order.sort_by(|&a, &b| all[a].center().re.total_cmp(&all[b].center().re));
        if sweep_disjoint(&all, &order) {
            return Ok(all);
        }
        target = target / Rational::from_integer(BigInt::one() << 64u32);
    }
    Err(Error::PrecisionExhausted { bits: MAX_BITS })
}

/// Disjointness of many disks, pruning pairs whose real projections are far apart.
fn sweep_disjoint(all: &[CertifiedRoot], order: &[usize]) -> bool {
    for (pos, &i) in order.iter().enumerate() {
        let ci = all[i].center();
        let ri = all[i].radius();
        for &j in &order[pos + 1..] {
            let cj = all[j].center();
            if cj.re - ci.re > (ri + all[j].radius()) * (1.0 + 1e-6) + 1e-9 * (ci.norm() + cj.norm() + 1.0) + 1.0 {
                break;
            }
            if !all[i].disk.clearly_disjoint(&all[j].disk) && !all[i].disk.disjoint(&all[j].disk) {
                return false;
            }
        }
    }
    true
}

/// Pairwise coprime square-free polynomials whose products recover the square-free
/// part of every input, up to units.
pub fn coprime_base(polys: &[IntPolynomial]) -> Vec<IntPolynomial> {
    let mut base: Vec<IntPolynomial> = Vec::new();
    let mut pending: Vec<IntPolynomial> = polys
        .iter()
        .filter(|p| !p.is_zero())
        .flat_map(|p| square_free_factors(p).into_iter().map(|(f, _)| f))
        .collect();
    while let Some(f) = pending.pop() {
        if f.degree().is_none_or(|d| d == 0) {
            continue;
        }
        let fq = f.to_qpoly();
        let hit = base.iter().position(|b| b.to_qpoly().gcd(&fq).degree().is_some_and(|d| d > 0));
        match hit {
            None => base.push(normalize_sign(f)),
            Some(i) => {
                let b = base.swap_remove(i).to_qpoly();
                let g = b.gcd(&fq);
                pending.push(g.to_primitive_int());
                pending.push(b.div_rem(&g).0.to_primitive_int());
                pending.push(fq.div_rem(&g).0.to_primitive_int());
            }
        }
    }
    base.sort_by(|a, b| a.coeffs().cmp(b.coeffs()));
    base
}

fn normalize_sign(p: IntPolynomial) -> IntPolynomial {
    if p.leading().is_some_and(|c| c.is_negative()) {
        -p
    } else {
        p
    }
}

/// Mahler measure with a certified enclosure, and the ℓ₁ norm for comparison.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct MahlerMeasure {
    pub value: f64,
    pub lower: f64,
    pub upper: f64,
    pub l1: f64,
}

impl MahlerMeasure {
    /// M(P) ≤ ℓ₁(P), certified from the enclosure.
    pub fn below_l1(&self) -> bool {
        self.lower <= self.l1 * (1.0 + SLACK)
    }
}

pub fn mahler_from_roots(rs: &RootSet) -> MahlerMeasure {
    let lead = rational::ln_bigint(&rs.source.leading().unwrap().abs());
    let (mut v, mut lo, mut hi) = (lead, lead, lead);
    for r in &rs.roots {
        let m = r.multiplicity as f64;
        let c = r.center().norm();
        let (a, b) = r.disk.modulus_bounds();
        v += m * c.max(1.0).ln();
        lo += m * a.max(1.0).ln();
        hi += m * b.max(1.0).ln();
    }
    let l1 = rs.source.l1_norm().to_f64().unwrap_or(f64::INFINITY);
    MahlerMeasure { value: v.exp(), lower: lo.exp() * (1.0 - SLACK), upper: hi.exp() * (1.0 + SLACK), l1 }
}

pub fn mahler_enclosure(p: &IntPolynomial) -> Result<MahlerMeasure> {
    Ok(mahler_from_roots(&roots(p, 1e-15)?))
}

/// M(P) = |a_n|·∏ max(1, |z|).
pub fn mahler_measure(p: &IntPolynomial) -> Result<f64> {
    Ok(mahler_enclosure(p)?.value)
}
