use super::{assemble, Eigenpair, Method};
use crate::error::Result;
use crate::matrix::Matrix;
use crate::policy::NumericPolicy;

/// `μ(A)` by Karp's maximum mean cycle algorithm on `ln a_ij`.
///
/// `D_k(i)` is the heaviest log-weight of a chain of exactly `k` entries
/// ending at row `i`, starting anywhere (`D_0 = 0`); then
/// `ln μ = max_i min_k (D_n(i) - D_k(i)) / (n - k)` over finite terms.
/// Structural zeros are absent arcs, never `-inf` weights. `O(n · m)`.
pub fn mu_karp(a: &Matrix, policy: &NumericPolicy) -> Result<Eigenpair> {
    let n = a.n();
    let arcs: Vec<Vec<(usize, f64)>> = (0..n)
        .map(|i| {
            (0..n)
                .filter(|&j| policy.is_arc(a.get(i, j)))
                .map(|j| (j, a.get(i, j).ln()))
                .collect()
        })
        .collect();

    let mut d = vec![vec![f64::NEG_INFINITY; n]; n + 1];
    d[0].iter_mut().for_each(|v| *v = 0.0);
    for k in 1..=n {
        for i in 0..n {
            let best = arcs[i]
                .iter()
                .map(|&(j, w)| d[k - 1][j] + w)
                .fold(f64::NEG_INFINITY, f64::max);
            d[k][i] = best;
        }
    }

    let mut log_mu: Option<f64> = None;
    for i in 0..n {
        if d[n][i] == f64::NEG_INFINITY {
            continue;
        }
        let worst = (0..n)
            .filter(|&k| d[k][i] > f64::NEG_INFINITY)
            .map(|k| (d[n][i] - d[k][i]) / (n - k) as f64)
            .fold(f64::INFINITY, f64::min);
        log_mu = Some(log_mu.map_or(worst, |m| m.max(worst)));
    }
    let mu = log_mu.map_or(0.0, f64::exp);
    assemble(a, mu, Method::Karp, policy, None)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let p = NumericPolicy::default();
        let a = Matrix::from_rows(&[[0.0, 9.0, 0.0], [1.0, 0.0, 0.0], [0.0, 0.0, 2.0]]).unwrap();
        assert!((mu_karp(&a, &p).unwrap().mu - 3.0).abs() < 1e-12);
        let ones = Matrix::from_rows(&[[1.0, 1.0], [1.0, 1.0]]).unwrap();
        assert_eq!(mu_karp(&ones, &p).unwrap().mu, 1.0);
        let strict = Matrix::from_rows(&[[0.0, 5.0], [0.0, 0.0]]).unwrap();
        let pair = mu_karp(&strict, &p).unwrap();
        assert_eq!(pair.mu, 0.0);
        assert!(!pair.has_cycle());
    }

    #[test]
    fn reducible_input_still_gets_global_mu() {
        let p = NumericPolicy::default();
        let a = Matrix::from_rows(&[[1.0, 7.0], [0.0, 3.0]]).unwrap();
        let pair = mu_karp(&a, &p).unwrap();
        assert!((pair.mu - 3.0).abs() < 1e-12);
        assert!(!pair.irreducible);
        assert!(pair.residual(&a).unwrap() <= 1e-12);
    }
}
