//! Dense nonnegative matrices and vectors over the max-times semiring.
//!
//! Addition is `max`, multiplication is ordinary `*`, the zero is `0` and
//! the unit is `1`. Entry `a_ij` is the weight of the arc `j -> i`.

use std::fmt;

use crate::error::{Error, Result};
use crate::policy::NumericPolicy;

fn check_entry(row: usize, col: usize, value: f64) -> Result<()> {
    if value.is_finite() && value >= 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidEntry { row, col, value })
    }
}

/// A nonnegative vector.
#[derive(Debug, Clone, PartialEq)]
pub struct Vector(Vec<f64>);

impl Vector {
    pub fn new(entries: Vec<f64>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::Empty);
        }
        for (index, &value) in entries.iter().enumerate() {
            if !(value.is_finite() && value >= 0.0) {
                return Err(Error::InvalidVectorEntry { index, value });
            }
        }
        Ok(Self(entries))
    }

    pub fn ones(n: usize) -> Self {
        Self(vec![1.0; n.max(1)])
    }

    /// The unit vector `e_i`.
    pub fn unit(n: usize, i: usize) -> Self {
        let mut v = vec![0.0; n.max(1)];
        v[i] = 1.0;
        Self(v)
    }

    pub(crate) fn from_vec_unchecked(entries: Vec<f64>) -> Self {
        debug_assert!(entries.iter().all(|v| v.is_finite() && *v >= 0.0));
        Self(entries)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.0
    }

    pub fn max_entry(&self) -> f64 {
        self.0.iter().copied().fold(0.0, f64::max)
    }

    /// `c x`, entrywise.
    pub fn scalar_mul(&self, c: f64) -> Result<Vector> {
        if !(c.is_finite() && c >= 0.0) {
            return Err(Error::NegativeScalar(c));
        }
        Ok(Self(self.0.iter().map(|v| c * v).collect()))
    }

    /// `x ⊕ y`, entrywise maximum.
    pub fn oplus(&self, other: &Vector) -> Result<Vector> {
        if self.len() != other.len() {
            return Err(Error::DimensionMismatch {
                expected: self.len(),
                found: other.len(),
            });
        }
        Ok(Self(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a.max(*b))
                .collect(),
        ))
    }

    /// Scaled so the largest entry is exactly 1. A zero vector is returned unchanged.
    pub fn normalized_max(&self) -> Vector {
        let m = self.max_entry();
        if m == 0.0 {
            return self.clone();
        }
        Self(self.0.iter().map(|v| v / m).collect())
    }

    /// Scaled so the entries sum to 1. A zero vector is returned unchanged.
    pub fn normalized_sum(&self) -> Vector {
        let s: f64 = self.0.iter().sum();
        if s == 0.0 {
            return self.clone();
        }
        Self(self.0.iter().map(|v| v / s).collect())
    }
}

impl std::ops::Index<usize> for Vector {
    type Output = f64;
    fn index(&self, i: usize) -> &f64 {
        &self.0[i]
    }
}

/// A dense `n x n` nonnegative matrix stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    n: usize,
    data: Vec<f64>,
}

impl Matrix {
    pub fn from_rows<R: AsRef<[f64]>>(rows: &[R]) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::Empty);
        }
        let mut data = Vec::with_capacity(n * n);
        for (i, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            if row.len() != n {
                return Err(Error::RaggedRow {
                    row: i,
                    expected: n,
                    found: row.len(),
                });
            }
            for (j, &v) in row.iter().enumerate() {
                check_entry(i, j, v)?;
            }
            data.extend_from_slice(row);
        }
        Ok(Self { n, data })
    }

    pub fn from_row_major(n: usize, data: Vec<f64>) -> Result<Self> {
        if n == 0 {
            return Err(Error::Empty);
        }
        if data.len() != n * n {
            return Err(Error::DimensionMismatch {
                expected: n * n,
                found: data.len(),
            });
        }
        for (k, &v) in data.iter().enumerate() {
            check_entry(k / n, k % n, v)?;
        }
        Ok(Self { n, data })
    }

    pub(crate) fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                data.push(f(i, j));
            }
        }
        debug_assert!(data.iter().all(|v| v.is_finite() && *v >= 0.0));
        Self { n, data }
    }

    pub fn zeros(n: usize) -> Self {
        Self::from_fn(n.max(1), |_, _| 0.0)
    }

    /// The max-times unit: 1 on the diagonal, 0 elsewhere.
    pub fn identity(n: usize) -> Self {
        Self::from_fn(n.max(1), |i, j| if i == j { 1.0 } else { 0.0 })
    }

    pub fn diagonal(d: &[f64]) -> Result<Self> {
        if d.is_empty() {
            return Err(Error::Empty);
        }
        for (i, &v) in d.iter().enumerate() {
            check_entry(i, i, v)?;
        }
        Ok(Self::from_fn(
            d.len(),
            |i, j| if i == j { d[i] } else { 0.0 },
        ))
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: f64) -> Result<()> {
        check_entry(i, j, value)?;
        self.data[i * self.n + j] = value;
        Ok(())
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn to_rows(&self) -> Vec<Vec<f64>> {
        (0..self.n).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Matrix {
        Self::from_fn(self.n, |i, j| self.get(j, i))
    }

    /// Every entry multiplied by `c >= 0`.
    pub fn scale(&self, c: f64) -> Result<Matrix> {
        if !(c.is_finite() && c >= 0.0) {
            return Err(Error::NegativeScalar(c));
        }
        Ok(Self::from_fn(self.n, |i, j| c * self.get(i, j)))
    }

    /// Permutation similarity `Pᵀ A P`: entry `(i, j)` becomes `a_{p(i) p(j)}`.
    pub fn permuted(&self, perm: &[usize]) -> Result<Matrix> {
        if perm.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: perm.len(),
            });
        }
        let mut seen = vec![false; self.n];
        for &p in perm {
            if p >= self.n || std::mem::replace(&mut seen[p], true) {
                return Err(Error::InvalidRange(format!(
                    "{perm:?} is not a permutation"
                )));
            }
        }
        Ok(Self::from_fn(self.n, |i, j| self.get(perm[i], perm[j])))
    }

    /// `(A ⊗ x)_i = max_j a_ij x_j`.
    pub fn max_matvec(&self, x: &Vector) -> Result<Vector> {
        if x.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: x.len(),
            });
        }
        Ok(Vector(
            (0..self.n)
                .map(|i| {
                    self.row(i)
                        .iter()
                        .zip(x.as_slice())
                        .map(|(a, b)| a * b)
                        .fold(0.0, f64::max)
                })
                .collect(),
        ))
    }

    /// `(A ⊗ B)_ij = max_k a_ik b_kj`.
    pub fn max_matmat(&self, other: &Matrix) -> Result<Matrix> {
        if other.n != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: other.n,
            });
        }
        let n = self.n;
        Ok(Self::from_fn(n, |i, j| {
            (0..n)
                .map(|k| self.get(i, k) * other.get(k, j))
                .fold(0.0, f64::max)
        }))
    }

    /// `A ⊕ B`, entrywise maximum.
    pub fn oplus(&self, other: &Matrix) -> Result<Matrix> {
        if other.n != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: other.n,
            });
        }
        Ok(Self::from_fn(self.n, |i, j| {
            self.get(i, j).max(other.get(i, j))
        }))
    }

    /// Whether every entry is strictly positive.
    pub fn is_positive(&self) -> bool {
        self.data.iter().all(|&v| v > 0.0)
    }

    /// True iff the graph with an arc `j -> i` for every `a_ij` above the
    /// zero threshold is strongly connected. A 1x1 matrix is irreducible.
    pub fn is_irreducible(&self, policy: &NumericPolicy) -> bool {
        crate::graph::is_strongly_connected(self, policy)
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.n {
            let row: Vec<String> = self.row(i).iter().map(|v| v.to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}
