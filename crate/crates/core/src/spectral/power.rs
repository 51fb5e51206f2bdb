use std::collections::VecDeque;

use super::{assemble, Eigenpair, Method};
use crate::error::{Error, Result};
use crate::matrix::{Matrix, Vector};
use crate::policy::NumericPolicy;

#[derive(Debug, Clone, PartialEq)]
pub struct PowerOptions {
    pub max_iter: usize,
    /// Relative tolerance for recognising a repeated normalised iterate.
    pub tol: f64,
    /// Starting vector; all-ones when absent.
    pub start: Option<Vector>,
}

impl Default for PowerOptions {
    fn default() -> Self {
        Self {
            max_iter: 100_000,
            tol: 1e-9,
            start: None,
        }
    }
}

fn same_direction(x: &[f64], y: &[f64], tol: f64) -> bool {
    x.iter()
        .zip(y)
        .all(|(a, b)| a == b || (a - b).abs() <= tol * a.abs().max(b.abs()))
}

/// `μ(A)` by max-times power iteration.
///
/// Iterates `x_{k+1} = A ⊗ x_k` scaled to max entry 1 while accumulating the
/// log of the scale factors. Once an iterate repeats one of the last `n²`
/// iterates (period `c`), `μ = exp((L_k - L_{k-c}) / c)`.
pub fn mu_power(a: &Matrix, options: &PowerOptions, policy: &NumericPolicy) -> Result<Eigenpair> {
    let n = a.n();
    let mut x = match &options.start {
        Some(s) => {
            if s.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: s.len(),
                });
            }
            s.normalized_max()
        }
        None => Vector::ones(n),
    };
    let window = (n * n).max(1);
    let mut history: VecDeque<(Vec<f64>, f64, usize)> = VecDeque::with_capacity(window + 1);
    let mut log_scale = 0.0;
    history.push_back((x.as_slice().to_vec(), 0.0, 0));

    for k in 1..=options.max_iter {
        let y = a.max_matvec(&x)?;
        let m = y.max_entry();
        if m == 0.0 {
            return assemble(a, 0.0, Method::Power, policy, None);
        }
        log_scale += m.ln();
        x = y.normalized_max();
        if let Some((_, prev_log, prev_k)) = history
            .iter()
            .rev()
            .find(|(h, _, _)| same_direction(h, x.as_slice(), options.tol))
        {
            let period = (k - prev_k) as f64;
            let mu = ((log_scale - prev_log) / period).exp();
            return assemble(a, mu, Method::Power, policy, None);
        }
        history.push_back((x.as_slice().to_vec(), log_scale, k));
        if history.len() > window {
            history.pop_front();
        }
    }
    Err(Error::NoConvergence {
        iterations: options.max_iter,
        last: x,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn diagonal_from_unit_vector() {
        let p = NumericPolicy::default();
        let a = Matrix::diagonal(&[2.5, 2.5, 2.5]).unwrap();
        let opts = PowerOptions {
            start: Some(Vector::unit(3, 0)),
            ..Default::default()
        };
        let pair = mu_power(&a, &opts, &p).unwrap();
        assert_eq!(pair.mu, 2.5);
        assert_eq!(pair.method, Method::Power);
    }

    #[test]
    fn periodic_sequence_period_two() {
        let p = NumericPolicy::default();
        let a = Matrix::from_rows(&[[0.0, 8.0, 1.0], [3.0, 0.0, 2.0], [4.0, 1.0, 1.0]]).unwrap();
        let pair = mu_power(&a, &PowerOptions::default(), &p).unwrap();
        assert!((pair.mu - 24f64.sqrt()).abs() < 1e-12 * 24f64.sqrt());
    }

    #[test]
    fn reports_non_convergence_with_last_iterate() {
        let p = NumericPolicy::default();
        // Two separate self-loops racing: the ratio keeps shrinking.
        let a = Matrix::from_rows(&[[2.0, 0.0], [0.0, 1.9]]).unwrap();
        let opts = PowerOptions {
            max_iter: 5,
            ..Default::default()
        };
        match mu_power(&a, &opts, &p) {
            Err(Error::NoConvergence { iterations, last }) => {
                assert_eq!(iterations, 5);
                assert_eq!(last.len(), 2);
            }
            other => panic!("expected non-convergence, got {other:?}"),
        }
    }

    #[test]
    fn rejects_wrong_start_length() {
        let a = Matrix::identity(2);
        let opts = PowerOptions {
            start: Some(Vector::ones(3)),
            ..Default::default()
        };
        assert!(mu_power(&a, &opts, &NumericPolicy::default()).is_err());
    }
}
