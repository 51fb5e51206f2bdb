//! The reciprocal perturbation `A^τ` and the behaviour of `μ(A^τ)` in `τ`.
//!
//! `A^τ` multiplies one critical entry `a_ij` by `τ` and its mirror `a_ji` by
//! `1/τ`, so reciprocity is preserved. The cycles through `(i, j)` scale by
//! `τ` and those through `(j, i)` by `1/τ`; `μ(A^τ)` is therefore a
//! maximum of increasing, decreasing, and constant terms in `τ`.

use rayon::prelude::*;

use super::SrMatrix;
use crate::error::{Error, Result};
use crate::matrix::{Matrix, Vector};
use crate::policy::NumericPolicy;
use crate::spectral::{critical_arcs, mu_karp, Eigenpair};

/// The entry scaled by `τ`: the first arc of the reported critical cycle, or
/// the first off-diagonal critical arc in row-major order when that cycle is
/// a self-loop. `None` for 1x1 matrices.
pub fn perturbation_arc(
    a: &SrMatrix,
    pair: &Eigenpair,
    policy: &NumericPolicy,
) -> Option<(usize, usize)> {
    if let Some(c) = &pair.critical_cycle {
        if c.len() >= 2 {
            return Some((c.nodes()[0], c.nodes()[1]));
        }
    }
    let arcs = critical_arcs(a.base(), pair.mu, policy);
    let n = a.n();
    (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .find(|&(i, j)| i != j && arcs[i][j])
}

/// `a_ij ← a_ij τ`, `a_ji ← a_ji / τ`.
pub fn perturb_entry(a: &SrMatrix, arc: (usize, usize), tau: f64) -> Result<SrMatrix> {
    if !(tau > 0.0 && tau.is_finite()) {
        return Err(Error::NonPositiveTau(tau));
    }
    let (i, j) = arc;
    let n = a.n();
    if i >= n || j >= n {
        return Err(Error::InvalidRange(format!(
            "entry ({i}, {j}) outside {n}x{n}"
        )));
    }
    let mut m = a.base().clone();
    if i != j {
        m.set(i, j, m.get(i, j) * tau)?;
        m.set(j, i, m.get(j, i) / tau)?;
    }
    Ok(SrMatrix::from_trusted(m))
}

/// `A^τ` for the critical arc selected by [`perturbation_arc`].
pub fn perturb_tau(
    a: &SrMatrix,
    pair: &Eigenpair,
    tau: f64,
    policy: &NumericPolicy,
) -> Result<SrMatrix> {
    if !(tau > 0.0 && tau.is_finite()) {
        return Err(Error::NonPositiveTau(tau));
    }
    match perturbation_arc(a, pair, policy) {
        Some(arc) => perturb_entry(a, arc, tau),
        None => Ok(a.clone()),
    }
}

/// `μ(A^τ)` sampled on a geometric grid.
#[derive(Debug, Clone, PartialEq)]
pub struct TauScan {
    pub arc: Option<(usize, usize)>,
    pub taus: Vec<f64>,
    pub mus: Vec<f64>,
    /// Last grid point of the strictly decreasing stretch.
    pub tau1: f64,
    /// First grid point of the strictly increasing tail.
    pub tau2: f64,
    pub mu0: f64,
    /// Grid point where `mu0` is first attained.
    pub tau_min: f64,
    /// Grid steps `k -> k+1` that break the valley shape.
    pub violations: Vec<usize>,
}

impl TauScan {
    pub fn is_unimodal(&self) -> bool {
        self.violations.is_empty()
    }

    /// Ratio between neighbouring grid points.
    pub fn resolution(&self) -> f64 {
        if self.taus.len() < 2 {
            1.0
        } else {
            self.taus[1] / self.taus[0]
        }
    }
}

pub fn tau_scan(
    a: &SrMatrix,
    tau_min: f64,
    tau_max: f64,
    steps: usize,
    policy: &NumericPolicy,
) -> Result<TauScan> {
    if !(tau_min > 0.0 && tau_min < tau_max && tau_max.is_finite()) {
        return Err(Error::InvalidRange(format!(
            "need 0 < from < to, got [{tau_min}, {tau_max}]"
        )));
    }
    if steps < 3 {
        return Err(Error::InvalidRange(format!(
            "need at least 3 steps, got {steps}"
        )));
    }
    let pair = mu_karp(a.base(), policy)?;
    let arc = perturbation_arc(a, &pair, policy);
    let ratio = (tau_max / tau_min).ln();
    let taus: Vec<f64> = (0..steps)
        .map(|k| {
            if k == steps - 1 {
                tau_max
            } else {
                tau_min * (ratio * k as f64 / (steps - 1) as f64).exp()
            }
        })
        .collect();
    let mus: Vec<f64> = taus
        .par_iter()
        .map(|&t| {
            let perturbed = match arc {
                Some(arc) => perturb_entry(a, arc, t)?,
                None => a.clone(),
            };
            Ok(mu_karp(perturbed.base(), policy)?.mu)
        })
        .collect::<Result<_>>()?;

    let tol = policy.rel_tol;
    let decreasing = |k: usize| mus[k + 1] < mus[k] * (1.0 - tol);
    let increasing = |k: usize| mus[k + 1] > mus[k] * (1.0 + tol);
    let last = steps - 1;
    let i1 = (0..last).find(|&k| !decreasing(k)).unwrap_or(last);
    let mut i2 = last;
    while i2 > 0 && increasing(i2 - 1) {
        i2 -= 1;
    }
    let (argmin, mu0) =
        mus.iter()
            .copied()
            .enumerate()
            .fold(
                (0, f64::INFINITY),
                |(bi, bv), (k, v)| if v < bv { (k, v) } else { (bi, bv) },
            );
    let violations = (0..last)
        .filter(|&k| {
            if k < argmin {
                increasing(k)
            } else {
                decreasing(k)
            }
        })
        .collect();
    Ok(TauScan {
        arc,
        tau1: taus[i1],
        tau2: taus[i2.max(i1)],
        mu0,
        tau_min: taus[argmin],
        taus,
        mus,
        violations,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Clause {
    NotApplicable,
    Holds,
    Fails,
}

impl Clause {
    fn from_bool(applicable: bool, holds: bool) -> Self {
        match (applicable, holds) {
            (false, _) => Clause::NotApplicable,
            (true, true) => Clause::Holds,
            (true, false) => Clause::Fails,
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            Clause::NotApplicable => "n/a",
            Clause::Holds => "holds",
            Clause::Fails => "fails",
        }
    }
}

/// How the eigenvector moves between `A^{τ0}` and `A^{τ1}` for one scaled
/// entry `(p, q)`, with `r_i = y_i / x_i`:
///
/// * `increasing`: `μ(τ0) < μ(τ1)` implies `r_p > r_i` for `i != p`;
/// * `decreasing`: `μ(τ0) > μ(τ1)` implies `r_q < r_i` for `i != q`;
/// * `sandwich`: `μ(τ0) = μ(τ1)` implies `r_p >= r_i >= r_q` for all `i`.
#[derive(Debug, Clone, PartialEq)]
pub struct RatioReport {
    pub arc: (usize, usize),
    pub tau0: f64,
    pub tau1: f64,
    pub mu0: f64,
    pub mu1: f64,
    pub x: Vector,
    pub y: Vector,
    pub ratios: Vec<f64>,
    pub increasing: Clause,
    pub decreasing: Clause,
    pub sandwich: Clause,
}

impl RatioReport {
    pub fn any_failure(&self) -> bool {
        [self.increasing, self.decreasing, self.sandwich].contains(&Clause::Fails)
    }
}

pub fn eigenvector_ratio_report(
    a: &SrMatrix,
    tau0: f64,
    tau1: f64,
    arc: (usize, usize),
    policy: &NumericPolicy,
) -> Result<RatioReport> {
    if !(tau0 > 0.0 && tau0 <= tau1 && tau1.is_finite()) {
        return Err(Error::InvalidRange(format!(
            "need 0 < tau0 <= tau1, got {tau0}, {tau1}"
        )));
    }
    let (p, q) = arc;
    if p == q || p >= a.n() || q >= a.n() {
        return Err(Error::InvalidRange(format!(
            "entry ({p}, {q}) must be off-diagonal inside {n}x{n}",
            n = a.n()
        )));
    }
    let eig = |t: f64| -> Result<(f64, Vector)> {
        let m: Matrix = perturb_entry(a, arc, t)?.into_inner();
        let pair = mu_karp(&m, policy)?;
        Ok((pair.mu, pair.x.ok_or(Error::ZeroEigenvalue)?))
    };
    let (mu0, x) = eig(tau0)?;
    let (mu1, y) = eig(tau1)?;
    let ratios: Vec<f64> = (0..a.n()).map(|i| y[i] / x[i]).collect();
    let tol = policy.rel_tol;
    let equal = policy.approx_eq(mu0, mu1);
    let n = a.n();

    let increasing = Clause::from_bool(
        !equal && mu0 < mu1,
        (0..n)
            .filter(|&i| i != p)
            .all(|i| ratios[p] - ratios[i] > tol * ratios[p]),
    );
    let decreasing = Clause::from_bool(
        !equal && mu0 > mu1,
        (0..n)
            .filter(|&i| i != q)
            .all(|i| ratios[i] - ratios[q] > tol * ratios[i]),
    );
    let sandwich = Clause::from_bool(
        equal,
        (0..n).all(|i| {
            policy.approx_le(ratios[i], ratios[p]) && policy.approx_le(ratios[q], ratios[i])
        }),
    );
    Ok(RatioReport {
        arc,
        tau0,
        tau1,
        mu0,
        mu1,
        x,
        y,
        ratios,
        increasing,
        decreasing,
        sandwich,
    })
}
