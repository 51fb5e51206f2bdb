//! Symmetrically reciprocal (SR) pairwise-comparison matrices.
//!
//! An SR matrix is entrywise positive with `a_ij a_ji = 1`; it is transitive
//! when `a_ij = w_i / w_j` for some positive weight vector `w`. The max
//! eigenvector of an SR matrix is a weight vector minimising the worst
//! relative error `e(w) = max |a_ik - w_i/w_k| / a_ik`, and `e = μ(A) - 1`.

mod tau;
mod weights;

pub use tau::{
    eigenvector_ratio_report, perturb_entry, perturb_tau, perturbation_arc, tau_scan, Clause,
    RatioReport, TauScan,
};
pub use weights::{
    error_bound, relative_error, transitive_from_weights, weight_vector, ErrorBound, WeightVector,
};

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::policy::NumericPolicy;
use crate::spectral::enumerate_jumps;

/// A matrix certified positive and reciprocal within `rel_tol`.
#[derive(Debug, Clone, PartialEq)]
pub struct SrMatrix {
    base: Matrix,
}

impl SrMatrix {
    pub fn base(&self) -> &Matrix {
        &self.base
    }

    pub fn n(&self) -> usize {
        self.base.n()
    }

    pub fn into_inner(self) -> Matrix {
        self.base
    }

    pub(crate) fn from_trusted(base: Matrix) -> Self {
        Self { base }
    }
}

impl AsRef<Matrix> for SrMatrix {
    fn as_ref(&self) -> &Matrix {
        &self.base
    }
}

/// Certifies `a` as SR. Fails on the first non-positive entry, otherwise on
/// the pair `(i, j)`, `i <= j`, whose product `a_ij a_ji` is furthest from 1.
pub fn validate_sr(a: &Matrix, policy: &NumericPolicy) -> Result<SrMatrix> {
    let n = a.n();
    for i in 0..n {
        for j in 0..n {
            let v = a.get(i, j);
            if v <= 0.0 {
                return Err(Error::NotPositive {
                    row: i,
                    col: j,
                    value: v,
                });
            }
        }
    }
    let mut worst: Option<(usize, usize, f64)> = None;
    for i in 0..n {
        for j in i..n {
            let product = a.get(i, j) * a.get(j, i);
            let dev = (product - 1.0).abs();
            if dev > policy.rel_tol && worst.is_none_or(|(_, _, p)| dev > (p - 1.0).abs()) {
                worst = Some((i, j, product));
            }
        }
    }
    match worst {
        Some((row, col, product)) => Err(Error::Reciprocity { row, col, product }),
        None => Ok(SrMatrix { base: a.clone() }),
    }
}

/// Whether every subordinate jump (one using a diagonal entry) of `a` has
/// product 1 within `rel_tol`. Takes a raw matrix so non-SR inputs can be
/// checked too.
///
/// For SR matrices this holds for `n <= 3`, where subordinate jumps are
/// built from reciprocal pairs and diagonal ones. From `n = 4` a jump such as
/// `(1 2 3)(4)` is subordinate and carries a 3-cycle product.
pub fn subordinate_jump_products(a: &Matrix, policy: &NumericPolicy) -> Result<bool> {
    Ok(enumerate_jumps(a, policy)?
        .filter(|j| !j.is_principal())
        .all(|j| policy.approx_eq(j.product(), 1.0)))
}

/// Whether `a` is transitive: every jump product equals 1 (jump route, for
/// `n <= jump_limit`), or `a_ij a_jk = a_ik` for all triples beyond it.
pub fn is_transitive(a: &SrMatrix, policy: &NumericPolicy) -> bool {
    let m = a.base();
    match enumerate_jumps(m, policy) {
        Ok(mut jumps) => jumps.all(|j| policy.approx_eq(j.product(), 1.0)),
        Err(_) => is_transitive_pairwise(m, policy),
    }
}

/// `a_ij a_jk = a_ik` for all `i, j, k`.
pub fn is_transitive_pairwise(a: &Matrix, policy: &NumericPolicy) -> bool {
    let n = a.n();
    (0..n).all(|i| {
        (0..n).all(|j| (0..n).all(|k| policy.approx_eq(a.get(i, j) * a.get(j, k), a.get(i, k))))
    })
}
