use super::SrMatrix;
use crate::error::{Error, Result};
use crate::matrix::{Matrix, Vector};
use crate::policy::NumericPolicy;
use crate::spectral::{enumerate_jumps, mu_karp};

/// A weight vector derived from an SR matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightVector {
    /// Strictly positive, largest entry exactly 1.
    pub w: Vector,
    pub mu: f64,
    /// `e(w)`.
    pub error: f64,
    /// The transitive matrix `b_ij = w_i / w_j`.
    pub induced: Matrix,
}

/// `b_ij = w_i / w_j`.
pub fn transitive_from_weights(w: &[f64]) -> Result<Matrix> {
    if w.is_empty() {
        return Err(Error::Empty);
    }
    for (index, &value) in w.iter().enumerate() {
        if !(value > 0.0 && value.is_finite()) {
            return Err(Error::NonPositiveWeight { index, value });
        }
    }
    Ok(Matrix::from_fn(w.len(), |i, j| w[i] / w[j]))
}

/// `e(w) = max_{i,k} |a_ik - w_i/w_k| / a_ik`.
pub fn relative_error(a: &SrMatrix, w: &Vector) -> Result<f64> {
    let m = a.base();
    let n = m.n();
    if w.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: w.len(),
        });
    }
    if let Some((index, &value)) = w.as_slice().iter().enumerate().find(|(_, v)| **v <= 0.0) {
        return Err(Error::NonPositiveWeight { index, value });
    }
    let mut worst = 0.0f64;
    for i in 0..n {
        for k in 0..n {
            let aik = m.get(i, k);
            worst = worst.max((aik - w[i] / w[k]).abs() / aik);
        }
    }
    Ok(worst)
}

/// Weights from the max eigenvector of `a`. The resulting `e(w)` equals
/// `μ(A) - 1`; a mismatch is reported as an error.
pub fn weight_vector(a: &SrMatrix, policy: &NumericPolicy) -> Result<WeightVector> {
    let pair = mu_karp(a.base(), policy)?;
    let w = pair.x.ok_or(Error::ZeroEigenvalue)?;
    let error = relative_error(a, &w)?;
    let expected = pair.mu - 1.0;
    if (error - expected).abs() > policy.rel_tol * pair.mu.max(1.0) {
        return Err(Error::CertificateMismatch { error, expected });
    }
    let induced = transitive_from_weights(w.as_slice())?;
    Ok(WeightVector {
        w,
        mu: pair.mu,
        error,
        induced,
    })
}

/// `c = (max_α p(α))^(1/k) - 1` with `k` the number of entries of the
/// maximising jump.
#[derive(Debug, Clone, PartialEq)]
pub struct ErrorBound {
    pub c: f64,
    pub max_product: f64,
    pub k: usize,
    /// First maximising jump in lexicographic order.
    pub sigma: Vec<usize>,
    /// Whether some principal jump attains the maximum.
    pub principal: bool,
}

impl ErrorBound {
    /// `1/(1+c) <= a_ij (w_j / w_i) <= 1+c` for all `i, j`.
    pub fn sandwich_holds(&self, a: &SrMatrix, w: &Vector, policy: &NumericPolicy) -> bool {
        let m = a.base();
        let n = m.n();
        let hi = 1.0 + self.c;
        (0..n).all(|i| {
            (0..n).all(|j| {
                let v = m.get(i, j) * w[j] / w[i];
                policy.approx_le(1.0 / hi, v) && policy.approx_le(v, hi)
            })
        })
    }
}

pub fn error_bound(a: &SrMatrix, policy: &NumericPolicy) -> Result<ErrorBound> {
    let mut best: Option<ErrorBound> = None;
    for jump in enumerate_jumps(a.base(), policy)? {
        let p = jump.product();
        match &mut best {
            Some(b) if policy.approx_eq(p, b.max_product) => {
                b.principal |= jump.is_principal();
                if p > b.max_product {
                    b.max_product = p;
                }
            }
            Some(b) if p < b.max_product => {}
            _ => {
                best = Some(ErrorBound {
                    c: 0.0,
                    max_product: p,
                    k: jump.nonzero_count(),
                    sigma: jump.sigma().to_vec(),
                    principal: jump.is_principal(),
                });
            }
        }
    }
    let mut b = best.ok_or(Error::Empty)?;
    b.c = (b.max_product.powf(1.0 / b.k as f64) - 1.0).max(0.0);
    Ok(b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ahp::validate_sr;

    fn sr(rows: &[&[f64]]) -> SrMatrix {
        validate_sr(&Matrix::from_rows(rows).unwrap(), &NumericPolicy::default()).unwrap()
    }

    fn three() -> SrMatrix {
        sr(&[&[1.0, 2.0, 2.0], &[0.5, 1.0, 2.0], &[0.5, 0.5, 1.0]])
    }

    #[test]
    fn relative_error_examples() {
        let a = sr(&[&[1.0, 2.0], &[0.5, 1.0]]);
        assert_eq!(relative_error(&a, &Vector::ones(2)).unwrap(), 1.0);
        let w = Vector::new(vec![4.0, 2.0, 1.0]).unwrap();
        let b = SrMatrix::from_trusted(transitive_from_weights(w.as_slice()).unwrap());
        assert_eq!(relative_error(&b, &w).unwrap(), 0.0);
        assert!(matches!(
            relative_error(&a, &Vector::new(vec![1.0, 0.0]).unwrap()),
            Err(Error::NonPositiveWeight { index: 1, .. })
        ));
    }

    #[test]
    fn weights_of_transitive_matrix() {
        let p = NumericPolicy::default();
        let b = SrMatrix::from_trusted(transitive_from_weights(&[4.0, 2.0, 1.0]).unwrap());
        let wv = weight_vector(&b, &p).unwrap();
        assert_eq!(wv.w.as_slice(), &[1.0, 0.5, 0.25]);
        assert!(wv.error.abs() < 1e-12);
        assert_eq!(wv.induced, *b.base());
    }

    #[test]
    fn weights_of_two_by_two() {
        let p = NumericPolicy::default();
        let wv = weight_vector(&sr(&[&[1.0, 5.0], &[0.2, 1.0]]), &p).unwrap();
        assert!((wv.w[0] - 1.0).abs() < 1e-15 && (wv.w[1] - 0.2).abs() < 1e-15);
        assert!(wv.error.abs() < 1e-12);
    }

    #[test]
    fn weights_of_non_transitive_three() {
        let p = NumericPolicy::default();
        let wv = weight_vector(&three(), &p).unwrap();
        let expected = 2f64.cbrt() - 1.0;
        assert!((wv.mu - 2f64.cbrt()).abs() < 1e-12);
        assert!((wv.error - expected).abs() < 1e-12);
        assert!((relative_error(&three(), &wv.w).unwrap() - expected).abs() < 1e-12);
    }

    #[test]
    fn bound_examples() {
        let p = NumericPolicy::default();
        let b = error_bound(&three(), &p).unwrap();
        assert_eq!(b.max_product, 2.0);
        assert_eq!(b.k, 3);
        assert!(b.principal);
        assert!((b.c - (2f64.cbrt() - 1.0)).abs() < 1e-12);
        let wv = weight_vector(&three(), &p).unwrap();
        assert!(b.sandwich_holds(&three(), &wv.w, &p));

        let t = SrMatrix::from_trusted(transitive_from_weights(&[3.0, 1.0, 2.0]).unwrap());
        assert!(error_bound(&t, &p).unwrap().c.abs() < 1e-12);
        assert_eq!(
            error_bound(&sr(&[&[1.0, 4.0], &[0.25, 1.0]]), &p)
                .unwrap()
                .c,
            0.0
        );
    }
}
