//! Two-sided evaluations of entropy inequalities used as executable checks.

use super::dist::{Additive, DiscreteDistribution, NeumaierSum};
use crate::error::{Error, Result};

/// Both sides of H(μ*ν^{*n}) − H(μ) ≤ n·(H(μ*ν) − H(μ)); the contract is lhs ≤ rhs.
pub fn kv_inequality_gap<K: Additive>(
    mu: &DiscreteDistribution<K>,
    nu: &DiscreteDistribution<K>,
    n: usize,
) -> Result<(f64, f64)> {
    if n == 0 {
        return Err(Error::invalid("n must be at least 1"));
    }
    let h_mu = mu.entropy();
    let lhs = mu.convolve(&nu.convolution_power(n)).entropy() - h_mu;
    let rhs = n as f64 * (mu.convolve(nu).entropy() - h_mu);
    Ok((lhs, rhs))
}

/// Both sides of Σ y_j log z_j⁻¹ ≥ Σ y_j log (y_j Z / Y)⁻¹ with Y = Σy, Z = Σz; lhs ≥ rhs.
pub fn weighted_log_bound(y: &[f64], z: &[f64]) -> Result<(f64, f64)> {
    if y.len() != z.len() || y.is_empty() {
        return Err(Error::invalid("y and z must be nonempty and of equal length"));
    }
    if y.iter().chain(z).any(|&v| !(v > 0.0) || !v.is_finite()) {
        return Err(Error::invalid("entries must be positive and finite"));
    }
    let big_y: f64 = y.iter().sum();
    let big_z: f64 = z.iter().sum();
    let mut lhs = NeumaierSum::default();
    let mut rhs = NeumaierSum::default();
    for (&yj, &zj) in y.iter().zip(z) {
        lhs.add(-yj * zj.ln());
        rhs.add(-yj * (yj * big_z / big_y).ln());
    }
    Ok((lhs.value(), rhs.value()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rational::int;

    #[test]
    fn kv_examples() {
        let mu = DiscreteDistribution::uniform([int(0), int(1)]).unwrap();
        let delta = DiscreteDistribution::dirac(int(0));
        let (l, r) = kv_inequality_gap(&mu, &delta, 3).unwrap();
        assert_eq!((l, r), (0.0, 0.0));

        let (l, r) = kv_inequality_gap(&mu, &mu, 2).unwrap();
        let h = |ps: &[f64]| ps.iter().map(|p| -p * p.ln()).sum::<f64>();
        let want_l = h(&[0.125, 0.375, 0.375, 0.125]) - 2f64.ln();
        let want_r = 2.0 * (h(&[0.25, 0.5, 0.25]) - 2f64.ln());
        assert!((l - want_l).abs() < 1e-14 && (r - want_r).abs() < 1e-14);
        assert!(l <= r);
    }

    #[test]
    fn weighted_log_examples() {
        let (l, r) = weighted_log_bound(&[0.3, 0.7], &[0.3, 0.7]).unwrap();
        assert!((l - r).abs() < 1e-15);
        let (l, r) = weighted_log_bound(&[1.0, 1.0], &[1.0, 3.0]).unwrap();
        assert!((l + 3f64.ln()).abs() < 1e-15);
        assert!((r + 2.0 * 2f64.ln()).abs() < 1e-15);
        assert!(l >= r);
        assert!(weighted_log_bound(&[1.0], &[0.0]).is_err());
        assert!(weighted_log_bound(&[1.0, 2.0], &[1.0]).is_err());
    }
}
