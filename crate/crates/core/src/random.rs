//! Seeded generators for test and benchmark matrices.
//!
//! Every generator takes the caller's RNG so a single seed drives a whole
//! stream; [`rng`] builds the ChaCha8 stream used throughout.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::matrix::Matrix;
use crate::policy::NumericPolicy;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Entries uniform in `[0.1, 10)`, each zeroed with probability `zero_prob`.
pub fn random_nonnegative<R: Rng>(rng: &mut R, n: usize, zero_prob: f64) -> Matrix {
    let data = (0..n * n)
        .map(|_| {
            if rng.random_bool(zero_prob.clamp(0.0, 1.0)) {
                0.0
            } else {
                rng.random_range(0.1..10.0)
            }
        })
        .collect();
    Matrix::from_row_major(n, data).expect("generated entries are finite and nonnegative")
}

/// Like [`random_nonnegative`], redrawn until the matrix is irreducible.
/// `zero_prob` is capped at 0.5 so the expected number of draws stays small.
pub fn random_irreducible<R: Rng>(rng: &mut R, n: usize, zero_prob: f64) -> Matrix {
    let policy = NumericPolicy::default();
    let zero_prob = zero_prob.min(0.5);
    loop {
        let a = random_nonnegative(rng, n, zero_prob);
        if a.is_irreducible(&policy) {
            return a;
        }
    }
}

/// Strictly positive weights, log-uniform in `[1/9, 9]`.
pub fn random_weights<R: Rng>(rng: &mut R, n: usize) -> Vec<f64> {
    let span = 9f64.ln();
    (0..n)
        .map(|_| rng.random_range(-span..=span).exp())
        .collect()
}

/// An SR matrix with upper entries log-uniform in `[1/9, 9]` and exact
/// reciprocals below the diagonal. Almost surely non-transitive for `n >= 3`.
pub fn random_sr<R: Rng>(rng: &mut R, n: usize) -> Matrix {
    let span = 9f64.ln();
    let mut rows = vec![vec![1.0; n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let v = rng.random_range(-span..=span).exp();
            rows[i][j] = v;
            rows[j][i] = 1.0 / v;
        }
    }
    Matrix::from_rows(&rows).expect("generated entries are positive")
}
