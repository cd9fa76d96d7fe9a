use super::*;
use crate::exactnum::rational::{int, rat};
use crate::exactnum::{IntPolynomial, RationalMap};
use crate::measures::scale_entropy_between;

fn ln(x: f64) -> f64 {
    x.ln()
}

fn golden() -> Parameter {
    let m = IntPolynomial::from_i64s(&[-1, 1, 1]);
    Parameter::Algebraic(AlgebraicNumber::real_root_in(&m, int(0), int(1)).unwrap())
}

fn half_two() -> IfsSpec {
    IfsSpec::standard(Parameter::Rational(rat(1, 2)), Parameter::Rational(int(2))).unwrap()
}

fn collapse() -> f64 {
    ln(3.0) - 2.0 / 3.0 * ln(2.0)
}

#[test]
fn enumerate_examples() {
    let d = enumerate_level(&half_two(), 2).unwrap();
    let want: Vec<Rational> = [1, 1, 1, 1, 1, 2, 2].iter().map(|&k| rat(k, 9)).collect();
    assert_eq!(d.sorted_probabilities(), want);

    let free = IfsSpec::standard(Parameter::symbol("l"), Parameter::symbol("t")).unwrap();
    let d = enumerate_level(&free, 3).unwrap();
    assert_eq!(d.len(), 27);
    assert!(d.iter().all(|(_, p)| *p == rat(1, 27)));

    let line = IfsSpec::standard(Parameter::symbol("l"), Parameter::Rational(int(1))).unwrap();
    let d = enumerate_level(&line, 2).unwrap();
    assert_eq!(d.sorted_probabilities(), vec![rat(1, 9), rat(2, 9), rat(2, 9), rat(4, 9)]);
}

#[test]
fn garsia_examples() {
    let distinct = IfsSpec::standard(Parameter::Rational(rat(1, 5)), Parameter::Rational(rat(1, 7))).unwrap();
    assert!((garsia_entropy(&distinct, 1).unwrap() - ln(3.0)).abs() < 1e-15);
    let h = garsia_entropy(&half_two(), 2).unwrap();
    assert!((h - (2.0 * ln(3.0) - 4.0 / 9.0 * ln(2.0))).abs() < 1e-14);
    let line = IfsSpec::standard(Parameter::symbol("l"), Parameter::Rational(int(1))).unwrap();
    assert!((garsia_entropy(&line, 5).unwrap() - 5.0 * collapse()).abs() < 1e-13);
    assert!(garsia_entropy(&line, 0).is_err());
}

#[test]
fn rate_examples() {
    let free = IfsSpec::standard(Parameter::symbol("l"), Parameter::symbol("t")).unwrap();
    for n in 1..5 {
        assert!((entropy_rate_upper(&free, n).unwrap() - ln(3.0)).abs() < 1e-14);
    }
    let r = entropy_rate_upper(&half_two(), 4).unwrap();
    assert!(r <= ln(3.0) - 2.0 / 9.0 * ln(2.0) + 1e-14);
    let line = IfsSpec::standard(Parameter::symbol("l"), Parameter::Rational(int(1))).unwrap();
    for n in 1..7 {
        assert!((entropy_rate_upper(&line, n).unwrap() - collapse()).abs() < 1e-14);
    }
}

#[test]
fn overlap_examples() {
    let o = find_overlap(&half_two(), 5).unwrap().unwrap();
    assert_eq!(o.n, 2);
    assert_eq!(o.witness, DigitPair::new(IntPolynomial::from_i64s(&[1]), IntPolynomial::from_i64s(&[0, -1])));
    assert!(vanishes_at(&o.witness, &Parameter::Rational(rat(1, 2)), &Parameter::Rational(int(2))).unwrap());

    let b = IfsSpec::bernoulli(golden()).unwrap();
    let o = find_overlap(&b, 6).unwrap().unwrap();
    assert_eq!(o.n, 3);
    assert_eq!(o.witness.p1, IntPolynomial::from_i64s(&[1, -1, -1]));
    assert!(o.witness.p2.is_zero());
    assert!(vanishes_at(&o.witness, &golden(), &Parameter::Rational(int(0))).unwrap());

    let free = IfsSpec::standard(Parameter::symbol("l"), Parameter::symbol("t")).unwrap();
    assert_eq!(find_overlap(&free, 40).unwrap(), None);
}

#[test]
fn xn_examples() {
    let quiet = IfsSpec::standard(Parameter::Rational(rat(1, 7)), Parameter::Rational(rat(1, 11))).unwrap();
    assert_eq!(find_overlap(&quiet, 3).unwrap(), None);
    assert_eq!(xn_membership(&quiet, 3).unwrap(), None);

    // τ = 3 lies on the single curve τλ = 1 at level 2
    let one_curve = IfsSpec::standard(Parameter::Rational(rat(1, 3)), Parameter::Rational(int(3))).unwrap();
    assert!(find_overlap(&one_curve, 2).unwrap().is_some());
    assert_eq!(xn_membership(&one_curve, 2).unwrap(), None);

    // σ = 1/η = 1 + η is killed by Y₁ − XY₂ and (1 + X)Y₁ − Y₂; they cross at X² + X − 1
    let both = IfsSpec::standard(golden(), Parameter::LambdaPoly(vec![int(1), int(1)])).unwrap();
    let (q, qt) = xn_membership(&both, 2).unwrap().unwrap();
    for w in [&q, &qt] {
        assert!(vanishes_at(w, both.lambda(), both.tau()).unwrap());
    }
    assert!(!q.cross(&qt).is_zero());
    assert!(!golden_is_root(&q.p2));
}

fn golden_is_root(p: &IntPolynomial) -> bool {
    match golden() {
        Parameter::Algebraic(a) => p.is_zero() || a.is_root_of(p),
        _ => unreachable!(),
    }
}

#[test]
fn curve_examples() {
    let spec = half_two();
    let r1 = CurveSpec::NonDegenerate(RationalMap::constant(1));
    assert!((curve_entropy(&spec, &r1, 4).unwrap() - 4.0 * collapse()).abs() < 1e-13);
    let vertical = CurveSpec::Degenerate(Parameter::symbol("l0"));
    assert!((curve_entropy(&spec, &vertical, 3).unwrap() - 3.0 * ln(3.0)).abs() < 1e-13);

    let b = IfsSpec::bernoulli(Parameter::Rational(rat(1, 3))).unwrap();
    let g = CurveSpec::Degenerate(golden());
    assert!((curve_entropy(&b, &g, 2).unwrap() - 2.0 * ln(2.0)).abs() < 1e-14);
    assert!(curve_entropy(&b, &g, 3).unwrap() < 3.0 * ln(2.0) - 1e-3);
}

#[test]
fn curve_dominates_points() {
    let spec = half_two();
    let r = RationalMap::from_i64s(&[1, 1], &[1, 0, -1]).unwrap();
    let curve = CurveSpec::NonDegenerate(r.clone());
    for lam in [rat(1, 2), rat(1, 3), rat(2, 5)] {
        let tau = r.eval_rational(&lam).unwrap();
        let point = spec.with_parameters(Parameter::Rational(lam), Parameter::Rational(tau)).unwrap();
        for n in 1..5 {
            assert!(curve_entropy(&spec, &curve, n).unwrap() >= garsia_entropy(&point, n).unwrap() - 1e-12);
        }
    }
}

#[test]
fn restricted_examples() {
    let spec = half_two();
    let empty = restricted_measure(&spec, &BTreeSet::new()).unwrap();
    assert_eq!(empty, DiscreteDistribution::dirac(int(0)));
    let both = restricted_measure(&spec, &BTreeSet::from([0, 1])).unwrap();
    let a = restricted_measure(&spec, &BTreeSet::from([0])).unwrap();
    let b = restricted_measure(&spec, &BTreeSet::from([1])).unwrap();
    assert_eq!(both, a.convolve(&b));

    let shifted = restricted_measure(&spec, &BTreeSet::from([1, 2])).unwrap();
    let (r1, r2) = (rat(1, 8), rat(1, 2));
    let lk = rat(1, 2);
    let lhs = scale_entropy_between(&both, &r1, &r2).unwrap();
    let rhs = scale_entropy_between(&shifted, &(&r1 * &lk), &(&r2 * &lk)).unwrap();
    assert!((lhs - rhs).abs() < 1e-12);
}

#[test]
fn dimension_examples() {
    let free = IfsSpec::standard(Parameter::Rational(rat(1, 2)), Parameter::symbol("t")).unwrap();
    assert_eq!(dim_upper_bound(&free, 3).unwrap(), 1.0);
    let d = dim_upper_bound(&half_two(), 2).unwrap();
    assert_eq!(d, 1.0);
    let raw = (2.0 * ln(3.0) - 4.0 / 9.0 * ln(2.0)) / (2.0 * ln(2.0));
    assert!((raw - 1.36274).abs() < 1e-5);
    let b = IfsSpec::bernoulli(Parameter::Rational(rat(1, 2))).unwrap();
    assert!((dim_upper_bound(&b, 1).unwrap() - 1.0).abs() < 1e-15);

    let third = IfsSpec::standard(Parameter::Rational(rat(1, 3)), Parameter::symbol("t")).unwrap();
    assert!((similarity_dimension(&third).unwrap().capped - 1.0).abs() < 1e-15);
    assert_eq!(similarity_dimension(&free).unwrap().capped, 1.0);
    let skew = IfsSpec::new(
        vec![(0, 0), (1, 0), (0, 1)],
        vec![rat(1, 2), rat(1, 4), rat(1, 4)],
        Parameter::Rational(rat(1, 2)),
        Parameter::symbol("t"),
    )
    .unwrap();
    let s = similarity_dimension(&skew).unwrap();
    assert_eq!(s.capped, 1.0);
    assert!((s.uncapped - 1.5).abs() < 1e-15);
    let golden_dim = dim_upper_bound(&IfsSpec::bernoulli(golden()).unwrap(), 6).unwrap();
    assert!(golden_dim <= 1.0);
}

#[test]
fn unsupported_mixed_fields() {
    let m = IntPolynomial::from_i64s(&[-2, 0, 1]);
    let sqrt2 = Parameter::Algebraic(AlgebraicNumber::real_root_in(&m, int(1), int(2)).unwrap());
    let spec = IfsSpec::standard(golden(), sqrt2).unwrap();
    assert!(matches!(garsia_entropy(&spec, 2), Err(Error::Unsupported(_))));
    let same = IfsSpec::standard(golden(), golden()).unwrap();
    assert!(garsia_entropy(&same, 3).is_ok());
}
