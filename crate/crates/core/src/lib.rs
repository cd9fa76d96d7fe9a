//! Exact computations for self-similar measures with overlaps.
//!
//! The crate enumerates digit-sum distributions of homogeneous self-similar systems
//! `x ↦ λx + a_j + b_j τ` with exact collision detection, and measures their Shannon
//! entropy, entropy rates, overlap witnesses and curve entropies. Alongside it sit the
//! function-field analogue over Q[[X]], the derivative self-affine systems, and a
//! suite of certified Diophantine checks (Mahler measure, root separation, value bounds).
//!
//! Probabilities and collision decisions are exact. Floating point enters only
//! when logarithms are taken and in certified root finding.

pub mod derivs;
pub mod dioph;
pub mod error;
pub mod exactnum;
pub mod ffield;
pub mod measures;
pub mod selfsim;

pub use error::{Error, Result};
