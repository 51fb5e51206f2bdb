//! Maximum cycle geometric mean `μ(A)` and max-eigenvectors.
//!
//! Three independent routes compute `μ(A)`:
//!
//! * [`mu_jump`] enumerates every permutation ("jump") of the index set and
//!   takes the best geometric mean over the cycles of each permutation whose
//!   entries are all nonzero;
//! * [`mu_karp`] runs Karp's maximum mean cycle algorithm on log-weights;
//! * [`mu_power`] iterates `x ← A ⊗ x` until the normalised sequence becomes
//!   periodic and reads off the growth rate.
//!
//! All three share the eigenvector construction in [`max_eigenvector`]: a
//! column of the max-times Kleene closure of `A / μ` taken at a critical node.

mod cycle;
mod jump;
mod karp;
mod kleene;
mod power;
mod theorems;

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

pub use cycle::Cycle;
pub use jump::{
    enumerate_jump_range, enumerate_jumps, factorial, jump_partitions, literal_jump_mean, mu_jump,
    mu_jump_partial, Jump, JumpKind, JumpReduction, Jumps,
};
pub use karp::mu_karp;
pub use kleene::{critical_arcs, critical_matrix, kleene_star, max_eigenvector, CriticalMatrix};
pub use power::{mu_power, PowerOptions};
pub use theorems::{all_jumps_below_one, diagonal_shortcut};

use crate::error::{Error, Result};
use crate::matrix::{Matrix, Vector};
use crate::policy::NumericPolicy;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Jump,
    Karp,
    Power,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Jump => "jump",
            Method::Karp => "karp",
            Method::Power => "power",
        })
    }
}

/// The max eigenvalue of a matrix with an eigenvector and a critical cycle.
#[derive(Debug, Clone, PartialEq)]
pub struct Eigenpair {
    pub mu: f64,
    /// Normalised so its largest entry is exactly 1. `None` when `mu == 0`.
    pub x: Option<Vector>,
    /// Lexicographically smallest critical cycle. `None` when `A` has no cycle.
    pub critical_cycle: Option<Cycle>,
    /// Union of the nodes lying on some critical cycle.
    pub critical_nodes: BTreeSet<usize>,
    pub method: Method,
    pub irreducible: bool,
}

impl Eigenpair {
    /// False when `A` has no cycle with all-nonzero entries (`mu` is then 0).
    pub fn has_cycle(&self) -> bool {
        self.critical_cycle.is_some()
    }

    /// `max_i |(A ⊗ x)_i - μ x_i| / max((A ⊗ x)_i, μ x_i)`.
    pub fn residual(&self, a: &Matrix) -> Option<f64> {
        let x = self.x.as_ref()?;
        eigen_residual(a, self.mu, x).ok().map(|(r, _)| r)
    }
}

/// Worst relative residual of `A ⊗ x = μ x` and the row where it occurs.
pub(crate) fn eigen_residual(a: &Matrix, mu: f64, x: &Vector) -> Result<(f64, usize)> {
    let ax = a.max_matvec(x)?;
    let mut worst = (0.0, 0);
    for i in 0..a.n() {
        let lhs = ax[i];
        let rhs = mu * x[i];
        let scale = lhs.max(rhs);
        let r = if scale == 0.0 {
            0.0
        } else {
            (lhs - rhs).abs() / scale
        };
        if r > worst.0 {
            worst = (r, i);
        }
    }
    Ok(worst)
}

/// Builds an [`Eigenpair`] from `μ`. When the caller already knows the
/// critical structure (jump enumeration does), it is passed in; otherwise
/// it is read off the critical graph.
pub(crate) fn assemble(
    a: &Matrix,
    mu: f64,
    method: Method,
    policy: &NumericPolicy,
    known: Option<(Vec<usize>, BTreeSet<usize>)>,
) -> Result<Eigenpair> {
    let irreducible = a.is_irreducible(policy);
    if mu == 0.0 {
        return Ok(Eigenpair {
            mu,
            x: None,
            critical_cycle: None,
            critical_nodes: BTreeSet::new(),
            method,
            irreducible,
        });
    }
    let (nodes, critical_nodes) = match known {
        Some(k) => k,
        None => {
            let arcs = critical_arcs(a, mu, policy);
            let nodes = kleene::smallest_critical_cycle(&arcs).ok_or(Error::NoCriticalNode)?;
            (nodes, kleene::critical_node_set(&arcs))
        }
    };
    let cycle = Cycle::new(a, &nodes)?;
    // The cycle's own mean avoids the rounding of log-domain accumulation.
    let mu = if policy.approx_eq(cycle.geo_mean(), mu) {
        cycle.geo_mean()
    } else {
        mu
    };
    let x = max_eigenvector(a, mu, &critical_nodes, policy)?;
    Ok(Eigenpair {
        mu,
        x: Some(x),
        critical_cycle: Some(cycle),
        critical_nodes,
        method,
        irreducible,
    })
}
