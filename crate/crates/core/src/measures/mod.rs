//! Finite discrete distributions with exact probabilities, their Shannon entropy,
//! convolution, averaged scale entropy and the inequality checks built on them.

mod dist;
mod inequalities;
mod scale;

pub use dist::{
    entropy_of_integer_masses, entropy_of_probabilities, shannon_entropy, Additive, DiscreteDistribution, NeumaierSum, RationalAtom,
    DEFAULT_ATOM_LIMIT,
};
pub use inequalities::{kv_inequality_gap, weighted_log_bound};
pub use scale::{scale_entropy, scale_entropy_between, ScaleEntropyReport};
