//! Reachability on the graph of a matrix.

use crate::matrix::Matrix;
use crate::policy::NumericPolicy;

/// Nodes reachable from `start`, following arcs forward (`j -> i` for `a_ij`)
/// or backward.
fn reachable(a: &Matrix, policy: &NumericPolicy, start: usize, forward: bool) -> Vec<bool> {
    let n = a.n();
    let mut seen = vec![false; n];
    let mut stack = vec![start];
    seen[start] = true;
    while let Some(u) = stack.pop() {
        for v in 0..n {
            let w = if forward { a.get(v, u) } else { a.get(u, v) };
            if !seen[v] && policy.is_arc(w) {
                seen[v] = true;
                stack.push(v);
            }
        }
    }
    seen
}

pub(crate) fn is_strongly_connected(a: &Matrix, policy: &NumericPolicy) -> bool {
    if a.n() == 1 {
        return true;
    }
    reachable(a, policy, 0, true).into_iter().all(|s| s)
        && reachable(a, policy, 0, false).into_iter().all(|s| s)
}
