//! Structural shortcuts read off the jump products.

use super::jump::enumerate_jumps;
use crate::error::Result;
use crate::matrix::Matrix;
use crate::policy::NumericPolicy;

/// `Some(max a_ii)` when `∏ a_ii` exceeds `p(α)` for every non-diagonal jump
/// `α`, in which case `μ(A) = max a_ii`. `None` when the hypothesis fails.
pub fn diagonal_shortcut(a: &Matrix, policy: &NumericPolicy) -> Result<Option<f64>> {
    let n = a.n();
    let diag: Vec<f64> = (0..n).map(|i| a.get(i, i)).collect();
    let diag_product = policy.product(&diag);
    let mut dominates = true;
    for jump in enumerate_jumps(a, policy)? {
        if !jump.is_diagonal() && jump.product() >= diag_product {
            dominates = false;
            break;
        }
    }
    Ok(dominates.then(|| diag.iter().copied().fold(0.0, f64::max)))
}

/// True iff every all-nonzero cycle of every jump has product below 1,
/// which holds exactly when `μ(A) < 1`.
pub fn all_jumps_below_one(a: &Matrix, policy: &NumericPolicy) -> Result<bool> {
    for jump in enumerate_jumps(a, policy)? {
        for cycle in jump.arc_cycles(a, policy) {
            let entries: Vec<f64> = cycle.iter().map(|&i| a.get(i, jump.sigma()[i])).collect();
            if policy.product(&entries) >= 1.0 {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
