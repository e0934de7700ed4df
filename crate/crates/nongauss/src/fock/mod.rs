//! Exact dense computations on the full `2^N`-dimensional Fock space.
//!
//! Everything here is brute force and scales exponentially; the intended use
//! is `N <= 14` modes, where these routines serve as the ground-truth oracle
//! for the correlation-matrix and counting-statistics machinery.
//!
//! Basis convention: basis state `|mask>` occupies mode `j` (1-based) iff bit
//! `j - 1` of `mask` is set, with creation operators ordered by increasing
//! mode index. The particle number of `|mask>` is `mask.count_ones()`.

mod density;
mod vector;

pub use density::{gaussianify_density, thermal_gaussian_density, FockDensity, KERNEL_TOL};
pub use vector::FockVector;

use crate::{Error, Result};

/// Hard cap on the mode count for dense Fock-space work.
pub const MAX_ORACLE_MODES: usize = 14;

/// A single creation or annihilation operator.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModeOperator {
    Creation,
    Annihilation,
}

pub(crate) fn check_n_modes(n_modes: usize) -> Result<usize> {
    if n_modes == 0 {
        return Err(Error::Argument("need at least one mode".into()));
    }
    if n_modes > MAX_ORACLE_MODES {
        return Err(Error::Argument(format!(
            "{n_modes} modes exceeds the dense-oracle cap of {MAX_ORACLE_MODES}"
        )));
    }
    Ok(1usize << n_modes)
}

/// 1-based mode index to bit position.
pub(crate) fn check_mode(n_modes: usize, mode: usize) -> Result<usize> {
    if mode == 0 || mode > n_modes {
        return Err(Error::Argument(format!(
            "mode {mode} out of range 1..={n_modes}"
        )));
    }
    Ok(mode - 1)
}

/// Jordan-Wigner sign: parity of the occupied modes below `bit`.
#[inline]
pub(crate) fn jw_sign(mask: usize, bit: usize) -> f64 {
    if (mask & ((1usize << bit) - 1)).count_ones() % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

/// Probability distribution of the total particle number over the sectors
/// `q = 0..N`, together with its first two moments.
#[derive(Debug, Clone)]
pub struct ChargeDistribution {
    probs: Vec<f64>,
    mean: f64,
    variance: f64,
}

impl ChargeDistribution {
    /// Validate and normalize raw sector weights: entries may undershoot 0 or
    /// overshoot 1 by at most `1e-10` (they are clipped), and must sum to 1
    /// within `1e-10`.
    pub fn from_probs(probs: Vec<f64>) -> Result<Self> {
        if probs.is_empty() {
            return Err(Error::Argument("empty charge distribution".into()));
        }
        for (q, &p) in probs.iter().enumerate() {
            if !(-1e-10..=1.0 + 1e-10).contains(&p) {
                return Err(Error::Numerical(format!(
                    "sector {q} probability {p} outside [0, 1] beyond tolerance"
                )));
            }
        }
        let sum: f64 = probs.iter().sum();
        if (sum - 1.0).abs() > 1e-10 {
            return Err(Error::Numerical(format!(
                "charge probabilities sum to {sum}, not 1"
            )));
        }
        let probs: Vec<f64> = probs.into_iter().map(|p| p.clamp(0.0, 1.0)).collect();
        let mean: f64 = probs.iter().enumerate().map(|(q, &p)| q as f64 * p).sum();
        let second: f64 = probs
            .iter()
            .enumerate()
            .map(|(q, &p)| (q as f64) * (q as f64) * p)
            .sum();
        Ok(Self {
            probs,
            mean,
            variance: second - mean * mean,
        })
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    /// Largest sector index (equals the mode count for full distributions).
    pub fn max_charge(&self) -> usize {
        self.probs.len() - 1
    }

    pub fn mean(&self) -> f64 {
        self.mean
    }

    pub fn variance(&self) -> f64 {
        self.variance
    }

    /// `P[|q - mean| >= a]`.
    pub fn tail_at_least(&self, a: f64) -> f64 {
        self.tail_at_least_about(self.mean, a)
    }

    /// `P[|q - mean| > a]`.
    pub fn tail_greater(&self, a: f64) -> f64 {
        self.tail_greater_about(self.mean, a)
    }

    /// `P[|q - center| >= a]` for an explicit window center.
    pub fn tail_at_least_about(&self, center: f64, a: f64) -> f64 {
        self.probs
            .iter()
            .enumerate()
            .filter(|(q, _)| (*q as f64 - center).abs() >= a)
            .map(|(_, &p)| p)
            .sum::<f64>()
            .clamp(0.0, 1.0)
    }

    /// `P[|q - center| > a]` for an explicit window center.
    pub fn tail_greater_about(&self, center: f64, a: f64) -> f64 {
        self.probs
            .iter()
            .enumerate()
            .filter(|(q, _)| (*q as f64 - center).abs() > a)
            .map(|(_, &p)| p)
            .sum::<f64>()
            .clamp(0.0, 1.0)
    }

    /// Total-variation distance, `(1/2) sum_q |p_q - r_q|`.
    pub fn total_variation(&self, other: &ChargeDistribution) -> f64 {
        assert_eq!(
            self.probs.len(),
            other.probs.len(),
            "distributions must cover the same sectors"
        );
        0.5 * self
            .probs
            .iter()
            .zip(&other.probs)
            .map(|(&p, &r)| (p - r).abs())
            .sum::<f64>()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn moments_match_the_stored_probs() {
        let d = ChargeDistribution::from_probs(vec![0.25, 0.25, 0.25, 0.25]).unwrap();
        assert!((d.mean() - 1.5).abs() < 1e-12);
        assert!((d.variance() - 1.25).abs() < 1e-12);
    }

    #[test]
    fn invalid_probs_are_rejected() {
        assert!(ChargeDistribution::from_probs(vec![0.6, 0.6]).is_err());
        assert!(ChargeDistribution::from_probs(vec![1.1, -0.1]).is_err());
        assert!(ChargeDistribution::from_probs(vec![]).is_err());
    }

    #[test]
    fn tails_distinguish_strict_and_inclusive() {
        // mean = 1, so q = 0 and q = 2 sit exactly at distance 1
        let d = ChargeDistribution::from_probs(vec![0.25, 0.5, 0.25]).unwrap();
        assert!((d.tail_at_least(1.0) - 0.5).abs() < 1e-12);
        assert!(d.tail_greater(1.0).abs() < 1e-12);
    }
}
