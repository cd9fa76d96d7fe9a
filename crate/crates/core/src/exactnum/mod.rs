//! Exact arithmetic substrate: big rationals, integer and rational polynomials,
//! number fields, real algebraic numbers and bounded rational maps.

mod algebraic;
mod numfield;
mod poly;
mod qpoly;
mod ratmap;
pub mod rational;
pub mod sturm;

pub use algebraic::AlgebraicNumber;
pub use numfield::{NumberField, NumberFieldElement};
pub use poly::IntPolynomial;
pub use qpoly::QPoly;
pub use ratmap::{series_quotient, vanishing_order, RationalMap};
pub use rational::{format_rational, parse_rational, Rational};

/// Exact evaluation of an integer polynomial at a rational point.
pub fn eval_poly(p: &IntPolynomial, x: &Rational) -> Rational {
    p.eval(x)
}
