//! Jumps: products of `n` entries taken from distinct rows and columns.
//!
//! A jump is identified with a permutation `σ` selecting the entries
//! `a_{i σ(i)}`. It is *principal* when it uses no diagonal entry and
//! *subordinate* otherwise. Enumeration walks `S_n` in lexicographic order;
//! the permutation space can be split into rank ranges so disjoint parts can
//! be reduced independently and combined with [`JumpReduction::merge`].

use std::collections::BTreeSet;
use std::ops::Range;

use rayon::prelude::*;

use super::{assemble, Eigenpair, Method};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::policy::NumericPolicy;

/// `n!`, for `n <= 20`.
pub fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum JumpKind {
    Principal,
    Subordinate,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Jump {
    sigma: Vec<usize>,
    cycles: Vec<Vec<usize>>,
    product: f64,
    nonzero: usize,
    kind: JumpKind,
}

impl Jump {
    pub fn from_permutation(a: &Matrix, sigma: &[usize], policy: &NumericPolicy) -> Result<Self> {
        let n = a.n();
        if sigma.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: sigma.len(),
            });
        }
        let mut seen = vec![false; n];
        for &s in sigma {
            if s >= n || std::mem::replace(&mut seen[s], true) {
                return Err(Error::InvalidRange(format!(
                    "{sigma:?} is not a permutation"
                )));
            }
        }
        Ok(Self::build(a, sigma, policy))
    }

    fn build(a: &Matrix, sigma: &[usize], policy: &NumericPolicy) -> Self {
        let nonzero_entries: Vec<f64> = sigma
            .iter()
            .enumerate()
            .map(|(i, &j)| a.get(i, j))
            .filter(|&v| policy.is_arc(v))
            .collect();
        let product = if nonzero_entries.is_empty() {
            1.0
        } else {
            policy.product(&nonzero_entries)
        };
        let kind = if sigma.iter().enumerate().all(|(i, &j)| i != j) {
            JumpKind::Principal
        } else {
            JumpKind::Subordinate
        };
        Self {
            sigma: sigma.to_vec(),
            cycles: decompose(sigma),
            product,
            nonzero: nonzero_entries.len(),
            kind,
        }
    }

    pub fn sigma(&self) -> &[usize] {
        &self.sigma
    }

    /// Disjoint cycles of `σ`, each starting at its smallest element, ordered by that element.
    pub fn cycles(&self) -> &[Vec<usize>] {
        &self.cycles
    }

    /// `p(α)`: product of the nonzero selected entries, 1 when there are none.
    pub fn product(&self) -> f64 {
        self.product
    }

    /// `S_α`: number of nonzero selected entries.
    pub fn nonzero_count(&self) -> usize {
        self.nonzero
    }

    pub fn kind(&self) -> JumpKind {
        self.kind
    }

    pub fn is_principal(&self) -> bool {
        self.kind == JumpKind::Principal
    }

    /// Whether this is the identity (all-diagonal) jump.
    pub fn is_diagonal(&self) -> bool {
        self.sigma.iter().enumerate().all(|(i, &j)| i == j)
    }

    /// `p(α)^(1 / S_α)`, or 0 when no selected entry is nonzero.
    pub fn literal_mean(&self) -> f64 {
        if self.nonzero == 0 {
            0.0
        } else {
            self.product.powf(1.0 / self.nonzero as f64)
        }
    }

    /// Cycles of `σ` whose entries are all nonzero in `a`.
    pub fn arc_cycles<'a>(
        &'a self,
        a: &'a Matrix,
        policy: &'a NumericPolicy,
    ) -> impl Iterator<Item = &'a [usize]> + 'a {
        self.cycles
            .iter()
            .filter(move |c| c.iter().all(|&i| policy.is_arc(a.get(i, self.sigma[i]))))
            .map(|c| c.as_slice())
    }
}

fn decompose(sigma: &[usize]) -> Vec<Vec<usize>> {
    let mut seen = vec![false; sigma.len()];
    let mut out = Vec::new();
    for start in 0..sigma.len() {
        if seen[start] {
            continue;
        }
        let mut cycle = Vec::new();
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            cycle.push(i);
            i = sigma[i];
        }
        out.push(cycle);
    }
    out
}

/// The permutation of rank `rank` in lexicographic order.
fn unrank(n: usize, mut rank: u64) -> Vec<usize> {
    let mut pool: Vec<usize> = (0..n).collect();
    let mut out = Vec::with_capacity(n);
    for k in (0..n).rev() {
        let f = factorial(k);
        let idx = (rank / f) as usize;
        rank %= f;
        out.push(pool.remove(idx));
    }
    out
}

fn next_permutation(p: &mut [usize]) -> bool {
    let n = p.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// Walks a rank range of `S_n` without allocating per permutation.
struct Cursor {
    perm: Vec<usize>,
    remaining: u64,
    started: bool,
}

impl Cursor {
    fn new(n: usize, range: Range<u64>) -> Self {
        let total = factorial(n);
        let start = range.start.min(total);
        let end = range.end.min(total);
        Self {
            perm: unrank(n, if start < total { start } else { 0 }),
            remaining: end.saturating_sub(start),
            started: false,
        }
    }

    fn advance(&mut self) -> Option<&[usize]> {
        if self.remaining == 0 {
            return None;
        }
        if self.started {
            next_permutation(&mut self.perm);
        }
        self.started = true;
        self.remaining -= 1;
        Some(&self.perm)
    }
}

/// Iterator over the jumps of a matrix.
pub struct Jumps<'a> {
    a: &'a Matrix,
    policy: NumericPolicy,
    cursor: Cursor,
}

impl Iterator for Jumps<'_> {
    type Item = Jump;

    fn next(&mut self) -> Option<Jump> {
        let a = self.a;
        let policy = self.policy;
        self.cursor.advance().map(|s| Jump::build(a, s, &policy))
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let r = self.cursor.remaining as usize;
        (r, Some(r))
    }
}

/// All `n!` jumps of `a` in lexicographic order of `σ`.
pub fn enumerate_jumps<'a>(a: &'a Matrix, policy: &NumericPolicy) -> Result<Jumps<'a>> {
    enumerate_jump_range(a, 0..factorial(a.n()), policy)
}

/// The jumps whose permutation rank lies in `range`.
pub fn enumerate_jump_range<'a>(
    a: &'a Matrix,
    range: Range<u64>,
    policy: &NumericPolicy,
) -> Result<Jumps<'a>> {
    policy.check_jump_limit(a.n())?;
    Ok(Jumps {
        a,
        policy: *policy,
        cursor: Cursor::new(a.n(), range),
    })
}

/// Splits `0..n!` into at most `parts` contiguous, disjoint, covering ranges.
pub fn jump_partitions(n: usize, parts: usize) -> Vec<Range<u64>> {
    let total = factorial(n);
    let parts = (parts.max(1) as u64).min(total);
    let chunk = total / parts;
    let extra = total % parts;
    let mut out = Vec::with_capacity(parts as usize);
    let mut start = 0;
    for k in 0..parts {
        let len = chunk + u64::from(k < extra);
        out.push(start..start + len);
        start += len;
    }
    out
}

/// Partial result of the jump reduction over some rank range.
///
/// Merging is associative and commutative up to `rel_tol` ties: the larger
/// mean wins, and on a tie the lexicographically smaller cycle is kept while
/// the critical node sets are united.
#[derive(Debug, Clone, PartialEq)]
pub struct JumpReduction {
    log_mu: f64,
    cycle: Option<Vec<usize>>,
    nodes: u64,
    tol: f64,
}

impl JumpReduction {
    fn empty(tol: f64) -> Self {
        Self {
            log_mu: f64::NEG_INFINITY,
            cycle: None,
            nodes: 0,
            tol,
        }
    }

    fn consider(&mut self, log_mean: f64, cycle: &[usize]) {
        let mask = cycle.iter().fold(0u64, |m, &i| m | (1 << i));
        if self.cycle.is_none() || log_mean > self.log_mu + self.tol {
            self.log_mu = log_mean;
            self.cycle = Some(cycle.to_vec());
            self.nodes = mask;
        } else if log_mean >= self.log_mu - self.tol {
            self.nodes |= mask;
            self.log_mu = self.log_mu.max(log_mean);
            if self.cycle.as_deref().is_some_and(|c| cycle < c) {
                self.cycle = Some(cycle.to_vec());
            }
        }
    }

    pub fn merge(self, other: JumpReduction) -> JumpReduction {
        let (Some(mine), Some(theirs)) = (&self.cycle, &other.cycle) else {
            return if self.cycle.is_some() { self } else { other };
        };
        if other.log_mu > self.log_mu + self.tol {
            other
        } else if self.log_mu > other.log_mu + self.tol {
            self
        } else {
            JumpReduction {
                log_mu: self.log_mu.max(other.log_mu),
                cycle: Some(if theirs < mine {
                    theirs.clone()
                } else {
                    mine.clone()
                }),
                nodes: self.nodes | other.nodes,
                tol: self.tol,
            }
        }
    }

    /// The best cycle geometric mean seen, 0 when no all-nonzero cycle was found.
    pub fn mu(&self) -> f64 {
        if self.cycle.is_some() {
            self.log_mu.exp()
        } else {
            0.0
        }
    }

    pub fn critical_cycle(&self) -> Option<&[usize]> {
        self.cycle.as_deref()
    }

    pub fn critical_nodes(&self) -> BTreeSet<usize> {
        (0..64).filter(|i| self.nodes & (1 << i) != 0).collect()
    }
}

fn log_matrix(a: &Matrix, policy: &NumericPolicy) -> Vec<f64> {
    a.as_slice()
        .iter()
        .map(|&v| {
            if policy.is_arc(v) {
                v.ln()
            } else {
                f64::NEG_INFINITY
            }
        })
        .collect()
}

/// Reduces the jumps with rank in `range` to their best all-nonzero cycle.
pub fn mu_jump_partial(
    a: &Matrix,
    range: Range<u64>,
    policy: &NumericPolicy,
) -> Result<JumpReduction> {
    policy.check_jump_limit(a.n())?;
    let n = a.n();
    let logs = log_matrix(a, policy);
    let mut best = JumpReduction::empty(policy.rel_tol);
    let mut cursor = Cursor::new(n, range);
    let mut seen = vec![false; n];
    let mut cycle = Vec::with_capacity(n);
    while let Some(sigma) = cursor.advance() {
        seen.iter_mut().for_each(|s| *s = false);
        for start in 0..n {
            if seen[start] {
                continue;
            }
            cycle.clear();
            let mut sum = 0.0;
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                cycle.push(i);
                sum += logs[i * n + sigma[i]];
                i = sigma[i];
            }
            if sum > f64::NEG_INFINITY {
                best.consider(sum / cycle.len() as f64, &cycle);
            }
        }
    }
    Ok(best)
}

/// `μ(A)` by jump enumeration.
///
/// Each permutation contributes only those of its cycles whose entries are
/// all nonzero, so fragments of broken cycles never count. When no such
/// cycle exists the result has `mu == 0` and no critical cycle.
pub fn mu_jump(a: &Matrix, policy: &NumericPolicy) -> Result<Eigenpair> {
    policy.check_jump_limit(a.n())?;
    let n = a.n();
    let reduction = if n >= 8 {
        let parts = jump_partitions(n, rayon::current_num_threads() * 4);
        let partials: Vec<JumpReduction> = parts
            .into_par_iter()
            .map(|r| mu_jump_partial(a, r, policy))
            .collect::<Result<_>>()?;
        partials
            .into_iter()
            .reduce(JumpReduction::merge)
            .unwrap_or_else(|| JumpReduction::empty(policy.rel_tol))
    } else {
        mu_jump_partial(a, 0..factorial(n), policy)?
    };
    let known = reduction
        .critical_cycle()
        .map(|c| (c.to_vec(), reduction.critical_nodes()));
    assemble(a, reduction.mu(), Method::Jump, policy, known)
}

/// `max_α p(α)^(1/S_α)` over all jumps, taking whole-permutation products of
/// the nonzero entries. This is *not* the maximum cycle geometric mean: a
/// permutation that mixes a heavy cycle with light fixed points dilutes it,
/// and a cycle broken by zeros still contributes its surviving entries.
pub fn literal_jump_mean(a: &Matrix, policy: &NumericPolicy) -> Result<f64> {
    Ok(enumerate_jumps(a, policy)?
        .map(|j| j.literal_mean())
        .fold(0.0, f64::max))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn policy() -> NumericPolicy {
        NumericPolicy::default()
    }

    #[test]
    fn counts_and_structure_of_s3() {
        let a = Matrix::from_rows(&[[1.0, 2.0, 3.0], [4.0, 5.0, 6.0], [7.0, 8.0, 9.0]]).unwrap();
        let jumps: Vec<Jump> = enumerate_jumps(&a, &policy()).unwrap().collect();
        assert_eq!(jumps.len(), 6);
        let diag_counts: Vec<usize> = jumps
            .iter()
            .map(|j| {
                j.sigma()
                    .iter()
                    .enumerate()
                    .filter(|(i, s)| i == *s)
                    .count()
            })
            .collect();
        assert_eq!(diag_counts.iter().filter(|&&c| c == 3).count(), 1);
        assert_eq!(diag_counts.iter().filter(|&&c| c == 1).count(), 3);
        assert_eq!(diag_counts.iter().filter(|&&c| c == 0).count(), 2);
        let mut principal: Vec<f64> = jumps
            .iter()
            .filter(|j| j.is_principal())
            .map(|j| j.product())
            .collect();
        principal.sort_by(f64::total_cmp);
        assert_eq!(principal, vec![84.0, 96.0]);
    }

    #[test]
    fn single_jump_for_one_by_one() {
        let a = Matrix::from_rows(&[[5.0]]).unwrap();
        let jumps: Vec<Jump> = enumerate_jumps(&a, &policy()).unwrap().collect();
        assert_eq!(jumps.len(), 1);
        assert_eq!(jumps[0].sigma(), &[0]);
        assert_eq!(jumps[0].kind(), JumpKind::Subordinate);
    }

    #[test]
    fn refuses_beyond_limit() {
        let a = Matrix::identity(10);
        assert!(matches!(
            enumerate_jumps(&a, &policy()),
            Err(Error::JumpLimitExceeded { n: 10, limit: 9 })
        ));
        assert!(mu_jump(&a, &policy()).is_err());
        let raised = policy().with_jump_limit(10).unwrap();
        assert!(enumerate_jumps(&a, &raised).is_ok());
    }

    #[test]
    fn unrank_matches_lexicographic_walk() {
        let mut p: Vec<usize> = (0..5).collect();
        for rank in 0..factorial(5) {
            assert_eq!(unrank(5, rank), p);
            next_permutation(&mut p);
        }
    }

    #[test]
    fn partitions_cover_exactly() {
        for n in 1..=6 {
            for parts in [1, 3, 7, 1000] {
                let ps = jump_partitions(n, parts);
                assert_eq!(ps.first().unwrap().start, 0);
                assert_eq!(ps.last().unwrap().end, factorial(n));
                for w in ps.windows(2) {
                    assert_eq!(w[0].end, w[1].start);
                }
            }
        }
    }

    #[test]
    fn literal_p_skips_zeros() {
        let a = Matrix::from_rows(&[[0.0, 9.0, 0.0], [1.0, 0.0, 0.0], [0.0, 0.0, 2.0]]).unwrap();
        let j = Jump::from_permutation(&a, &[1, 2, 0], &policy()).unwrap();
        assert_eq!(j.product(), 9.0);
        assert_eq!(j.nonzero_count(), 1);
        assert_eq!(j.arc_cycles(&a, &policy()).count(), 0);
        assert_eq!(literal_jump_mean(&a, &policy()).unwrap(), 9.0);
        let mu = mu_jump(&a, &policy()).unwrap().mu;
        assert!((mu - 3.0).abs() < 1e-12);
    }

    #[test]
    fn no_cycle_gives_zero() {
        let a = Matrix::from_rows(&[[0.0, 1.0, 2.0], [0.0, 0.0, 3.0], [0.0, 0.0, 0.0]]).unwrap();
        let pair = mu_jump(&a, &policy()).unwrap();
        assert_eq!(pair.mu, 0.0);
        assert!(!pair.has_cycle());
        assert!(pair.x.is_none());
    }

    #[test]
    fn merge_order_does_not_matter() {
        let a = Matrix::from_rows(&[
            [0.0, 2.0, 0.5, 1.0],
            [2.0, 2.0, 0.0, 0.3],
            [1.0, 0.0, 0.0, 4.0],
            [0.0, 1.0, 0.25, 0.0],
        ])
        .unwrap();
        let p = policy();
        let whole = mu_jump_partial(&a, 0..24, &p).unwrap();
        let parts: Vec<JumpReduction> = jump_partitions(4, 5)
            .into_iter()
            .map(|r| mu_jump_partial(&a, r, &p).unwrap())
            .collect();
        let fwd = parts.iter().cloned().reduce(JumpReduction::merge).unwrap();
        let rev = parts
            .iter()
            .rev()
            .cloned()
            .reduce(JumpReduction::merge)
            .unwrap();
        for r in [&fwd, &rev] {
            assert_eq!(r.mu(), whole.mu());
            assert_eq!(r.critical_cycle(), whole.critical_cycle());
            assert_eq!(r.critical_nodes(), whole.critical_nodes());
        }
    }
}
