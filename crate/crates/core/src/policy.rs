//! Shared numeric policy: tolerances, structural zeros, and product evaluation.

use crate::error::{Error, Result};

/// Largest dimension for which jump (permutation) enumeration runs by default.
pub const DEFAULT_JUMP_LIMIT: usize = 9;

/// Hard ceiling on the jump limit; `n!` must fit in a `u64`.
pub const MAX_JUMP_LIMIT: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NumericPolicy {
    /// Relative tolerance for comparing computed reals.
    pub rel_tol: f64,
    /// Entries `<=` this value are structural zeros (absent arcs).
    pub zero_threshold: f64,
    /// Products of more than this many factors are evaluated as `exp(sum ln)`.
    pub log_domain_above: usize,
    /// Maximum dimension accepted by jump enumeration.
    pub jump_limit: usize,
}

impl Default for NumericPolicy {
    fn default() -> Self {
        Self {
            rel_tol: 1e-9,
            zero_threshold: 0.0,
            log_domain_above: 16,
            jump_limit: DEFAULT_JUMP_LIMIT,
        }
    }
}

impl NumericPolicy {
    pub fn new(rel_tol: f64, zero_threshold: f64) -> Result<Self> {
        Self::default()
            .with_rel_tol(rel_tol)?
            .with_zero_threshold(zero_threshold)
    }

    pub fn with_rel_tol(mut self, rel_tol: f64) -> Result<Self> {
        if !(rel_tol > 0.0 && rel_tol.is_finite()) {
            return Err(Error::InvalidPolicy(format!(
                "rel_tol must be positive, got {rel_tol}"
            )));
        }
        self.rel_tol = rel_tol;
        Ok(self)
    }

    pub fn with_zero_threshold(mut self, zero_threshold: f64) -> Result<Self> {
        if !(zero_threshold >= 0.0 && zero_threshold.is_finite()) {
            return Err(Error::InvalidPolicy(format!(
                "zero_threshold must be nonnegative, got {zero_threshold}"
            )));
        }
        self.zero_threshold = zero_threshold;
        Ok(self)
    }

    pub fn with_jump_limit(mut self, jump_limit: usize) -> Result<Self> {
        if jump_limit == 0 || jump_limit > MAX_JUMP_LIMIT {
            return Err(Error::InvalidPolicy(format!(
                "jump_limit must be in 1..={MAX_JUMP_LIMIT}, got {jump_limit}"
            )));
        }
        self.jump_limit = jump_limit;
        Ok(self)
    }

    /// Whether an entry is an arc of the associated graph.
    #[inline]
    pub fn is_arc(&self, value: f64) -> bool {
        value > self.zero_threshold
    }

    /// Relative equality; two exact zeros compare equal.
    #[inline]
    pub fn approx_eq(&self, a: f64, b: f64) -> bool {
        a == b || (a - b).abs() <= self.rel_tol * a.abs().max(b.abs())
    }

    #[inline]
    pub fn approx_le(&self, a: f64, b: f64) -> bool {
        a <= b || self.approx_eq(a, b)
    }

    /// Product of the factors, switching to the log domain for long products.
    pub fn product(&self, factors: &[f64]) -> f64 {
        if factors.len() > self.log_domain_above {
            if factors.contains(&0.0) {
                return 0.0;
            }
            factors.iter().map(|f| f.ln()).sum::<f64>().exp()
        } else {
            factors.iter().product()
        }
    }

    pub(crate) fn check_jump_limit(&self, n: usize) -> Result<()> {
        if n > self.jump_limit {
            Err(Error::JumpLimitExceeded {
                n,
                limit: self.jump_limit,
            })
        } else {
            Ok(())
        }
    }
}

/// Geometric mean of positive factors, computed as `exp(mean ln)`.
pub fn geometric_mean(factors: &[f64]) -> f64 {
    if factors.is_empty() {
        return 0.0;
    }
    let s: f64 = factors.iter().map(|f| f.ln()).sum();
    (s / factors.len() as f64).exp()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults() {
        let p = NumericPolicy::default();
        assert_eq!(p.rel_tol, 1e-9);
        assert_eq!(p.zero_threshold, 0.0);
        assert_eq!(p.jump_limit, 9);
        assert!(p.is_arc(1e-300));
        assert!(!p.is_arc(0.0));
    }

    #[test]
    fn rejects_bad_values() {
        assert!(NumericPolicy::new(0.0, 0.0).is_err());
        assert!(NumericPolicy::new(1e-9, -1.0).is_err());
        assert!(NumericPolicy::default().with_jump_limit(21).is_err());
    }

    #[test]
    fn log_domain_product_avoids_overflow() {
        let p = NumericPolicy::default();
        let big = [1e300; 20];
        let q = [1e-300; 20];
        let mixed: Vec<f64> = big.iter().chain(q.iter()).copied().collect();
        let prod = p.product(&mixed);
        assert!((prod - 1.0).abs() < 1e-9);
        assert_eq!(p.product(&[2.0, 3.0, 4.0]), 24.0);
    }

    #[test]
    fn geometric_mean_of_integers() {
        assert!((geometric_mean(&[8.0, 2.0, 4.0]) - 4.0).abs() < 1e-12);
        assert!((geometric_mean(&[9.0, 1.0]) - 3.0).abs() < 1e-12);
    }
}
