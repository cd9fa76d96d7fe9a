//! Certified roots, Mahler measure, and checkers for the Diophantine lemma suite.

mod lemmas;
mod roots;
mod turan;

use serde::Serialize;

pub use lemmas::{
    algebraic_disk, bounded_polynomials, close_root, dimitrov_construct, dimitrov_construct_far,
    dimitrov_ln_alpha_threshold, dimitrov_test, jensen_bound, jensen_radius, jensen_root_count_check,
    root_separation_bound, root_separation_check, root_separation_ln_bound, separation_sweep, value_lower_bound_check,
    CloseRoot, DimitrovInstance, DimitrovOutcome, DimitrovVerdict, JensenCount, SeparationSweep, ValueBound,
};

pub use roots::{
    aberth, coprime_base, eval_exact, mahler_enclosure, mahler_from_roots, mahler_measure, roots,
    roots_of_coprime_family, square_free_factors, CertifiedRoot, ComplexRational, Disk, MahlerMeasure, RootSet,
    MAX_BITS,
};
pub use turan::{power_sum_ln_delta, power_sum_multiset_check, turan_bound, PowerSumCheck, TuranReport};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Certified,
    Violated,
    HypothesesFail,
}

/// Uniform JSON record of one lemma check.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LemmaReport {
    pub lemma: String,
    pub inputs: serde_json::Value,
    /// "holds" or the failing clause.
    pub hypothesis_status: String,
    pub lhs: f64,
    pub rhs: f64,
    pub verdict: Verdict,
}
