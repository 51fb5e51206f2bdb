//! Algebraic laws of the max-times semiring on matrices and vectors.

use maxeig_core::{Matrix, Vector};
use proptest::prelude::*;

fn entry() -> impl Strategy<Value = f64> {
    prop_oneof![1 => Just(0.0), 3 => (1u32..=400).prop_map(|k| f64::from(k) / 8.0)]
}

fn matrix(n: usize) -> impl Strategy<Value = Matrix> {
    proptest::collection::vec(entry(), n * n)
        .prop_map(move |d| Matrix::from_row_major(n, d).unwrap())
}

fn vector(n: usize) -> impl Strategy<Value = Vector> {
    proptest::collection::vec(entry(), n).prop_map(|d| Vector::new(d).unwrap())
}

fn triple() -> impl Strategy<Value = (Matrix, Matrix, Matrix)> {
    (1usize..=5).prop_flat_map(|n| (matrix(n), matrix(n), matrix(n)))
}

fn close(a: &Matrix, b: &Matrix) -> bool {
    a.as_slice()
        .iter()
        .zip(b.as_slice())
        .all(|(x, y)| (x - y).abs() <= 1e-12 * x.abs().max(y.abs()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn matmat_is_associative((a, b, c) in triple()) {
        let left = a.max_matmat(&b).unwrap().max_matmat(&c).unwrap();
        let right = a.max_matmat(&b.max_matmat(&c).unwrap()).unwrap();
        prop_assert!(close(&left, &right));
    }

    #[test]
    fn matmat_distributes_over_oplus((a, b, c) in triple()) {
        let left = a.max_matmat(&b.oplus(&c).unwrap()).unwrap();
        let right = a.max_matmat(&b).unwrap().oplus(&a.max_matmat(&c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn oplus_is_idempotent_and_commutative((a, b, _) in triple()) {
        prop_assert_eq!(a.oplus(&a).unwrap(), a.clone());
        prop_assert_eq!(a.oplus(&b).unwrap(), b.oplus(&a).unwrap());
    }

    #[test]
    fn identity_is_neutral((a, _, _) in triple()) {
        let id = Matrix::identity(a.n());
        prop_assert_eq!(a.max_matmat(&id).unwrap(), a.clone());
        prop_assert_eq!(id.max_matmat(&a).unwrap(), a.clone());
        prop_assert_eq!(a.oplus(&Matrix::zeros(a.n())).unwrap(), a);
    }

    #[test]
    fn matvec_is_monotone_and_homogeneous(
        (a, x, y) in (1usize..=5).prop_flat_map(|n| (matrix(n), vector(n), vector(n))),
        c in 0.0f64..50.0,
    ) {
        let big = x.oplus(&y).unwrap();
        let ax = a.max_matvec(&x).unwrap();
        let ab = a.max_matvec(&big).unwrap();
        prop_assert!(ax.as_slice().iter().zip(ab.as_slice()).all(|(u, v)| u <= v));
        let scaled = a.max_matvec(&x.scalar_mul(c).unwrap()).unwrap();
        let expected = ax.scalar_mul(c).unwrap();
        for (u, v) in scaled.as_slice().iter().zip(expected.as_slice()) {
            prop_assert!((u - v).abs() <= 1e-12 * u.max(*v));
        }
    }

    #[test]
    fn matvec_matches_column_of_matmat((a, b, _) in triple(), col in 0usize..5) {
        let n = a.n();
        let col = col % n;
        let x = Vector::new((0..n).map(|i| b.get(i, col)).collect()).unwrap();
        let ax = a.max_matvec(&x).unwrap();
        let ab = a.max_matmat(&b).unwrap();
        for i in 0..n {
            prop_assert_eq!(ax[i], ab.get(i, col));
        }
    }
}

#[test]
fn two_by_two_worked_product() {
    let a = Matrix::from_rows(&[[2.0, 0.0], [11.0, 15.0]]).unwrap();
    let x = Vector::new(vec![10.0, 13.0]).unwrap();
    assert_eq!(a.max_matvec(&x).unwrap().as_slice(), &[20.0, 195.0]);
}
