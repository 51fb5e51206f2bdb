//! Method-comparison harness: times the three `μ` routes on a seeded stream
//! of random irreducible matrices and records how often they agree.

use std::ops::RangeInclusive;
use std::time::{Duration, Instant};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::policy::NumericPolicy;
use crate::random::{random_irreducible, rng};
use crate::spectral::{mu_jump, mu_karp, mu_power, Eigenpair, PowerOptions};

#[derive(Debug, Clone, PartialEq)]
pub struct BenchConfig {
    pub sizes: RangeInclusive<usize>,
    pub trials: usize,
    pub seed: u64,
    /// Probability of a zero entry before the irreducibility redraw.
    pub zero_prob: f64,
}

impl Default for BenchConfig {
    fn default() -> Self {
        Self {
            sizes: 3..=7,
            trials: 50,
            seed: 42,
            zero_prob: 0.5,
        }
    }
}

/// One line per size. `None` timings mark a skipped method (jump
/// enumeration beyond the limit).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchRow {
    pub n: usize,
    pub trials: usize,
    pub jump_ms: Option<f64>,
    pub karp_ms: f64,
    pub power_ms: f64,
    pub agreed: usize,
    pub agreement: f64,
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let start = Instant::now();
    let out = f();
    (out, start.elapsed())
}

fn median_ms(mut d: Vec<Duration>) -> f64 {
    d.sort();
    let ms = |x: Duration| x.as_secs_f64() * 1e3;
    let k = d.len();
    if k % 2 == 1 {
        ms(d[k / 2])
    } else {
        (ms(d[k / 2 - 1]) + ms(d[k / 2])) / 2.0
    }
}

fn agrees(a: &Matrix, pairs: &[Eigenpair], policy: &NumericPolicy) -> bool {
    let mu = pairs[0].mu;
    pairs
        .iter()
        .all(|p| policy.approx_eq(p.mu, mu) && p.residual(a).is_none_or(|r| r <= policy.rel_tol))
}

pub fn run_bench(config: &BenchConfig, policy: &NumericPolicy) -> Result<Vec<BenchRow>> {
    if config.sizes.is_empty() || *config.sizes.start() == 0 {
        return Err(Error::InvalidRange(format!(
            "sizes {}..{} must be nonempty and start at 1 or more",
            config.sizes.start(),
            config.sizes.end()
        )));
    }
    if config.trials == 0 {
        return Ok(Vec::new());
    }
    let mut stream = rng(config.seed);
    let options = PowerOptions::default();
    let mut rows = Vec::new();
    for n in config.sizes.clone() {
        let with_jump = n <= policy.jump_limit;
        let (mut tj, mut tk, mut tp) = (Vec::new(), Vec::new(), Vec::new());
        let mut agreed = 0;
        for _ in 0..config.trials {
            let a = random_irreducible(&mut stream, n, config.zero_prob);
            let mut pairs = Vec::with_capacity(3);
            let mut ok = true;
            if with_jump {
                let (r, t) = timed(|| mu_jump(&a, policy));
                tj.push(t);
                match r {
                    Ok(p) => pairs.push(p),
                    Err(_) => ok = false,
                }
            }
            let (r, t) = timed(|| mu_karp(&a, policy));
            tk.push(t);
            match r {
                Ok(p) => pairs.push(p),
                Err(_) => ok = false,
            }
            let (r, t) = timed(|| mu_power(&a, &options, policy));
            tp.push(t);
            match r {
                Ok(p) => pairs.push(p),
                Err(_) => ok = false,
            }
            if ok && agrees(&a, &pairs, policy) {
                agreed += 1;
            }
        }
        rows.push(BenchRow {
            n,
            trials: config.trials,
            jump_ms: with_jump.then(|| median_ms(tj)),
            karp_ms: median_ms(tk),
            power_ms: median_ms(tp),
            agreed,
            agreement: agreed as f64 / config.trials as f64,
        });
    }
    Ok(rows)
}

pub fn rows_to_csv(rows: &[BenchRow]) -> String {
    let mut out = String::from("n,trials,jump_ms,karp_ms,power_ms,agreement\n");
    for r in rows {
        let jump = r.jump_ms.map(|v| format!("{v:.6}")).unwrap_or_default();
        out.push_str(&format!(
            "{},{},{},{:.6},{:.6},{}\n",
            r.n, r.trials, jump, r.karp_ms, r.power_ms, r.agreement
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_trials_is_empty() {
        let cfg = BenchConfig {
            trials: 0,
            ..Default::default()
        };
        assert!(run_bench(&cfg, &NumericPolicy::default())
            .unwrap()
            .is_empty());
    }

    #[test]
    fn small_run_agrees() {
        let cfg = BenchConfig {
            sizes: 2..=4,
            trials: 10,
            seed: 1,
            zero_prob: 0.5,
        };
        let rows = run_bench(&cfg, &NumericPolicy::default()).unwrap();
        assert_eq!(rows.len(), 3);
        assert!(rows.iter().all(|r| r.agreed == 10));
        let csv = rows_to_csv(&rows);
        assert_eq!(csv.lines().count(), 4);
    }

    #[test]
    fn skips_jump_beyond_limit() {
        let cfg = BenchConfig {
            sizes: 4..=4,
            trials: 2,
            ..Default::default()
        };
        let p = NumericPolicy::default().with_jump_limit(3).unwrap();
        let rows = run_bench(&cfg, &p).unwrap();
        assert_eq!(rows[0].jump_ms, None);
        assert_eq!(rows[0].agreed, 2);
    }

    #[test]
    fn rejects_empty_sizes() {
        #[allow(clippy::reversed_empty_ranges)]
        let cfg = BenchConfig {
            sizes: 5..=3,
            ..Default::default()
        };
        assert!(run_bench(&cfg, &NumericPolicy::default()).is_err());
    }
}
