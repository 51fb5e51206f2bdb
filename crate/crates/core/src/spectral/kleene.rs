//! Kleene closure, critical graph, and eigenvector construction.

use std::collections::BTreeSet;

use super::{eigen_residual, Eigenpair};
use crate::error::{Error, Result};
use crate::matrix::{Matrix, Vector};
use crate::policy::NumericPolicy;

/// `B* = I ⊕ B ⊕ B² ⊕ … ⊕ Bⁿ⁻¹` for a matrix with no cycle heavier than 1,
/// given as row-major data. Entry `(i, j)` is the best product of a chain of
/// entries `(i, k_1), (k_1, k_2), …, (k_m, j)`.
fn closure(n: usize, b: &[f64]) -> Vec<f64> {
    let mut c = b.to_vec();
    for k in 0..n {
        for i in 0..n {
            let cik = c[i * n + k];
            if cik == 0.0 {
                continue;
            }
            for j in 0..n {
                let via = cik * c[k * n + j];
                if via > c[i * n + j] {
                    c[i * n + j] = via;
                }
            }
        }
    }
    for i in 0..n {
        c[i * n + i] = c[i * n + i].max(1.0);
    }
    c
}

/// Max-times Kleene closure of `b`. Requires every cycle of `b` to weigh at most 1.
pub fn kleene_star(b: &Matrix) -> Matrix {
    let n = b.n();
    let c = closure(n, b.as_slice());
    Matrix::from_fn(n, |i, j| c[i * n + j])
}

fn scaled(a: &Matrix, mu: f64) -> Vec<f64> {
    a.as_slice().iter().map(|v| v / mu).collect()
}

/// Positions `(i, j)` lying on some cycle with geometric mean `mu` (within
/// `rel_tol`), as an `n x n` boolean table.
pub fn critical_arcs(a: &Matrix, mu: f64, policy: &NumericPolicy) -> Vec<Vec<bool>> {
    let n = a.n();
    let mut out = vec![vec![false; n]; n];
    if mu <= 0.0 {
        return out;
    }
    let b = scaled(a, mu);
    let star = closure(n, &b);
    let threshold = 1.0 - policy.rel_tol;
    for i in 0..n {
        for j in 0..n {
            if policy.is_arc(a.get(i, j)) && b[i * n + j] * star[j * n + i] >= threshold {
                out[i][j] = true;
            }
        }
    }
    out
}

pub(crate) fn critical_node_set(arcs: &[Vec<bool>]) -> BTreeSet<usize> {
    let mut nodes = BTreeSet::new();
    for (i, row) in arcs.iter().enumerate() {
        for (j, &c) in row.iter().enumerate() {
            if c {
                nodes.insert(i);
                nodes.insert(j);
            }
        }
    }
    nodes
}

/// Lexicographically smallest elementary cycle of the critical graph, with
/// its smallest node first.
pub(crate) fn smallest_critical_cycle(arcs: &[Vec<bool>]) -> Option<Vec<usize>> {
    let n = arcs.len();
    for s in 0..n {
        if arcs[s][s] {
            return Some(vec![s]);
        }
        let mut path = vec![s];
        let mut used = vec![false; n];
        used[s] = true;
        loop {
            let cur = *path.last().unwrap_or(&s);
            if path.len() > 1 && arcs[cur][s] {
                return Some(path);
            }
            let next =
                (s + 1..n).find(|&j| !used[j] && arcs[cur][j] && returns_to(arcs, j, s, &used));
            match next {
                Some(j) => {
                    used[j] = true;
                    path.push(j);
                }
                None => break,
            }
        }
    }
    None
}

/// Whether `from` reaches `target` through unused nodes above `target`.
fn returns_to(arcs: &[Vec<bool>], from: usize, target: usize, used: &[bool]) -> bool {
    let n = arcs.len();
    let mut seen = used.to_vec();
    seen[from] = true;
    let mut stack = vec![from];
    while let Some(u) = stack.pop() {
        if arcs[u][target] {
            return true;
        }
        for v in target + 1..n {
            if !seen[v] && arcs[u][v] {
                seen[v] = true;
                stack.push(v);
            }
        }
    }
    false
}

/// A matrix keeping only the entries on critical cycles.
#[derive(Debug, Clone, PartialEq)]
pub struct CriticalMatrix {
    pub base: Matrix,
    pub entries: Matrix,
}

impl CriticalMatrix {
    /// Positions of the retained entries in row-major order.
    pub fn support(&self) -> Vec<(usize, usize)> {
        let n = self.entries.n();
        (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .filter(|&(i, j)| self.entries.get(i, j) != 0.0)
            .collect()
    }
}

/// Keeps `a_ij` exactly where `(i, j)` lies on a cycle of geometric mean
/// `pair.mu`; every other entry becomes 0.
pub fn critical_matrix(a: &Matrix, pair: &Eigenpair, policy: &NumericPolicy) -> CriticalMatrix {
    let arcs = critical_arcs(a, pair.mu, policy);
    CriticalMatrix {
        base: a.clone(),
        entries: Matrix::from_fn(a.n(), |i, j| if arcs[i][j] { a.get(i, j) } else { 0.0 }),
    }
}

/// A max-eigenvector for `mu = μ(A)`: the column of `(A/μ)*` at the smallest
/// critical node, scaled so its largest entry is 1. The eigen-equation is
/// checked before returning.
pub fn max_eigenvector(
    a: &Matrix,
    mu: f64,
    critical_nodes: &BTreeSet<usize>,
    policy: &NumericPolicy,
) -> Result<Vector> {
    if mu.is_nan() || mu <= 0.0 {
        return Err(Error::ZeroEigenvalue);
    }
    let &j = critical_nodes.iter().next().ok_or(Error::NoCriticalNode)?;
    let n = a.n();
    if j >= n {
        return Err(Error::NoCriticalNode);
    }
    let star = closure(n, &scaled(a, mu));
    let column: Vec<f64> = (0..n).map(|i| star[i * n + j]).collect();
    let x = Vector::from_vec_unchecked(column).normalized_max();
    let (residual, row) = eigen_residual(a, mu, &x)?;
    if residual > policy.rel_tol {
        return Err(Error::EigenCheckFailed { row, residual });
    }
    Ok(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[f64]]) -> Matrix {
        Matrix::from_rows(rows).unwrap()
    }

    #[test]
    fn closure_of_chain() {
        let b = m(&[&[0.0, 0.5], &[0.0, 0.0]]);
        assert_eq!(kleene_star(&b), m(&[&[1.0, 0.5], &[0.0, 1.0]]));
    }

    #[test]
    fn smallest_cycle_prefers_prefix_then_small_nodes() {
        let mut arcs = vec![vec![false; 4]; 4];
        // 0 -> 2 -> 0 and 0 -> 1 -> 3 -> 0
        arcs[0][2] = true;
        arcs[2][0] = true;
        arcs[0][1] = true;
        arcs[1][3] = true;
        arcs[3][0] = true;
        assert_eq!(smallest_critical_cycle(&arcs), Some(vec![0, 1, 3]));
        arcs[1][0] = true;
        assert_eq!(smallest_critical_cycle(&arcs), Some(vec![0, 1]));
    }

    #[test]
    fn greedy_avoids_dead_ends() {
        let mut arcs = vec![vec![false; 4]; 4];
        // 1 -> 2 is a dead end; the cycle is 1 -> 3 -> 1.
        arcs[1][2] = true;
        arcs[1][3] = true;
        arcs[3][1] = true;
        assert_eq!(smallest_critical_cycle(&arcs), Some(vec![1, 3]));
    }

    #[test]
    fn eigenvector_rejects_zero_mu() {
        let a = Matrix::identity(2);
        let nodes: BTreeSet<usize> = [0].into();
        assert!(matches!(
            max_eigenvector(&a, 0.0, &nodes, &NumericPolicy::default()),
            Err(Error::ZeroEigenvalue)
        ));
        assert!(matches!(
            max_eigenvector(&a, 1.0, &BTreeSet::new(), &NumericPolicy::default()),
            Err(Error::NoCriticalNode)
        ));
    }

    #[test]
    fn eigenvector_rejects_wrong_mu() {
        let a = m(&[&[0.0, 8.0, 1.0], &[3.0, 0.0, 2.0], &[4.0, 1.0, 1.0]]);
        let nodes: BTreeSet<usize> = [0].into();
        assert!(matches!(
            max_eigenvector(&a, 4.0, &nodes, &NumericPolicy::default()),
            Err(Error::EigenCheckFailed { .. })
        ));
    }
}
