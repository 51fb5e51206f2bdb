use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::policy::geometric_mean;

/// An elementary cycle `i_1 -> i_2 -> ... -> i_L -> i_1` weighted by the
/// entries `a_{i_1 i_2} a_{i_2 i_3} ... a_{i_L i_1}`.
///
/// Nodes are stored rotated so the smallest index comes first.
#[derive(Debug, Clone, PartialEq)]
pub struct Cycle {
    nodes: Vec<usize>,
    weight: f64,
    geo_mean: f64,
}

/// `w^(1/len)` with correctly rounded square and cube roots; `None` when
/// the product under- or overflowed.
fn root(w: f64, len: usize) -> Option<f64> {
    if !w.is_normal() {
        return None;
    }
    Some(match len {
        1 => w,
        2 => w.sqrt(),
        3 => w.cbrt(),
        _ => w.powf(1.0 / len as f64),
    })
}

impl Cycle {
    pub fn new(a: &Matrix, nodes: &[usize]) -> Result<Self> {
        let n = a.n();
        if nodes.is_empty() || nodes.len() > n {
            return Err(Error::InvalidRange(format!(
                "cycle length {} not in 1..={n}",
                nodes.len()
            )));
        }
        let mut seen = vec![false; n];
        for &v in nodes {
            if v >= n || std::mem::replace(&mut seen[v], true) {
                return Err(Error::InvalidRange(format!(
                    "{nodes:?} is not a set of distinct nodes below {n}"
                )));
            }
        }
        let start = nodes
            .iter()
            .enumerate()
            .min_by_key(|(_, v)| **v)
            .map(|(k, _)| k)
            .unwrap_or(0);
        let mut canonical = nodes[start..].to_vec();
        canonical.extend_from_slice(&nodes[..start]);

        let entries: Vec<f64> = arcs_of(&canonical).map(|(i, j)| a.get(i, j)).collect();
        let weight = entries.iter().product();
        let geo_mean = if entries.contains(&0.0) {
            0.0
        } else {
            root(weight, entries.len()).unwrap_or_else(|| geometric_mean(&entries))
        };
        Ok(Self {
            nodes: canonical,
            weight,
            geo_mean,
        })
    }

    pub fn nodes(&self) -> &[usize] {
        &self.nodes
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn weight(&self) -> f64 {
        self.weight
    }

    pub fn geo_mean(&self) -> f64 {
        self.geo_mean
    }

    /// Matrix positions `(i, j)` visited by the cycle.
    pub fn arcs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        arcs_of(&self.nodes)
    }
}

fn arcs_of(nodes: &[usize]) -> impl Iterator<Item = (usize, usize)> + '_ {
    let l = nodes.len();
    (0..l).map(move |k| (nodes[k], nodes[(k + 1) % l]))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_rotation_and_weight() {
        let a = Matrix::from_rows(&[[0.0, 8.0, 1.0], [3.0, 0.0, 2.0], [4.0, 1.0, 1.0]]).unwrap();
        let c = Cycle::new(&a, &[1, 2, 0]).unwrap();
        assert_eq!(c.nodes(), &[0, 1, 2]);
        assert_eq!(c.weight(), 64.0);
        assert!((c.geo_mean() - 4.0).abs() < 1e-12);
        assert_eq!(c.arcs().collect::<Vec<_>>(), vec![(0, 1), (1, 2), (2, 0)]);
        assert!((c.geo_mean().powi(3) - c.weight()).abs() < 1e-9 * c.weight());
    }

    #[test]
    fn rejects_repeated_nodes() {
        let a = Matrix::identity(3);
        assert!(Cycle::new(&a, &[0, 1, 0]).is_err());
        assert!(Cycle::new(&a, &[]).is_err());
        assert!(Cycle::new(&a, &[3]).is_err());
    }

    #[test]
    fn zero_entry_gives_zero_mean() {
        let a = Matrix::identity(2);
        let c = Cycle::new(&a, &[0, 1]).unwrap();
        assert_eq!(c.weight(), 0.0);
        assert_eq!(c.geo_mean(), 0.0);
    }
}
