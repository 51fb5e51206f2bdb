//! Structural facts about `μ`, the critical graph and the eigenvector.

use maxeig_core::random::{random_nonnegative, rng};
use maxeig_core::spectral::{
    all_jumps_below_one, critical_matrix, diagonal_shortcut, mu_jump, mu_karp,
};
use maxeig_core::{Matrix, NumericPolicy, Vector};
use proptest::prelude::*;

fn nonnegative(max_n: usize) -> impl Strategy<Value = Matrix> {
    (1usize..=max_n, any::<u64>(), 0.0f64..0.6)
        .prop_map(|(n, seed, z)| random_nonnegative(&mut rng(seed), n, z))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn diagonal_shortcut_agrees_with_karp(a in nonnegative(5), boost in 1.0f64..50.0) {
        let p = NumericPolicy::default();
        // Inflate the diagonal so the hypothesis holds reasonably often.
        let n = a.n();
        let mut rows = a.to_rows();
        for (i, row) in rows.iter_mut().enumerate() {
            row[i] = (row[i] + 0.1) * boost;
        }
        let b = Matrix::from_rows(&rows).unwrap();
        for m in [&a, &b] {
            if let Some(d) = diagonal_shortcut(m, &p).unwrap() {
                let mu = mu_karp(m, &p).unwrap().mu;
                prop_assert!((d - mu).abs() <= 1e-9 * mu, "n = {}: {} vs {}", n, d, mu);
            }
        }
    }

    #[test]
    fn below_one_iff_mu_below_one(a in nonnegative(5), c in 0.02f64..1.0) {
        let p = NumericPolicy::default();
        let b = a.scale(c).unwrap();
        let mu = mu_karp(&b, &p).unwrap().mu;
        prop_assume!((mu - 1.0).abs() > 1e-9);
        prop_assert_eq!(all_jumps_below_one(&b, &p).unwrap(), mu < 1.0);
    }

    #[test]
    fn critical_matrix_keeps_base_entries(a in nonnegative(6)) {
        let p = NumericPolicy::default();
        let pair = mu_jump(&a, &p).unwrap();
        let c = critical_matrix(&a, &pair, &p);
        for (i, j) in c.support() {
            prop_assert_eq!(c.entries.get(i, j).to_bits(), a.get(i, j).to_bits());
        }
        if let Some(cycle) = &pair.critical_cycle {
            for (i, j) in cycle.arcs() {
                prop_assert!(c.entries.get(i, j) > 0.0);
            }
        }
    }

    #[test]
    fn scaling_keeps_critical_structure(a in nonnegative(6), c in 0.05f64..20.0) {
        let p = NumericPolicy::default();
        let before = mu_jump(&a, &p).unwrap();
        let after = mu_jump(&a.scale(c).unwrap(), &p).unwrap();
        prop_assert!((after.mu - c * before.mu).abs() <= 1e-9 * after.mu.max(1e-300));
        prop_assert_eq!(
            before.critical_cycle.map(|x| x.nodes().to_vec()),
            after.critical_cycle.map(|x| x.nodes().to_vec())
        );
    }

    #[test]
    fn critical_nodes_carry_positive_weight(a in nonnegative(6)) {
        let p = NumericPolicy::default();
        let pair = mu_karp(&a, &p).unwrap();
        if let (Some(x), Some(c)) = (&pair.x, &pair.critical_cycle) {
            if c.len() >= 2 {
                for &v in c.nodes() {
                    prop_assert!(x[v] > 0.0);
                }
            }
        }
    }

    /// A unique critical self-loop at `i` whose column is otherwise empty
    /// gives exactly `e_i`.
    #[test]
    fn isolated_critical_loop_gives_unit_vector(a in nonnegative(5), pick in 0usize..5) {
        let p = NumericPolicy::default();
        let n = a.n();
        let i = pick % n;
        let mut rows = a.to_rows();
        for (k, row) in rows.iter_mut().enumerate() {
            row[i] = if k == i { 100.0 } else { 0.0 };
        }
        let b = Matrix::from_rows(&rows).unwrap();
        let pair = mu_karp(&b, &p).unwrap();
        prop_assert_eq!(pair.mu, 100.0);
        prop_assert_eq!(pair.x.unwrap(), Vector::unit(n, i));
    }
}

#[test]
fn loop_with_incoming_mass_is_not_a_unit_vector() {
    let p = NumericPolicy::default();
    let a = Matrix::from_rows(&[[2.0, 1.0], [1.0, 1.0]]).unwrap();
    let pair = mu_karp(&a, &p).unwrap();
    assert_eq!(pair.mu, 2.0);
    assert_eq!(pair.x.unwrap().as_slice(), &[1.0, 0.5]);
}

#[test]
fn equal_mean_cycles_both_survive() {
    let p = NumericPolicy::default();
    let a = Matrix::from_rows(&[[2.0, 2.0], [2.0, 0.0]]).unwrap();
    let pair = mu_jump(&a, &p).unwrap();
    let c = critical_matrix(&a, &pair, &p);
    assert_eq!(c.entries, a);
    assert_eq!(pair.critical_cycle.unwrap().nodes(), &[0]);
}
