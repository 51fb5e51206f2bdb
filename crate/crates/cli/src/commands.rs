use std::path::PathBuf;

use maxeig_core::ahp::{
    error_bound, is_transitive, tau_scan, validate_sr, weight_vector, SrMatrix,
};
use maxeig_core::bench::{rows_to_csv, run_bench, BenchConfig};
use maxeig_core::io::MatrixFile;
use maxeig_core::spectral::{mu_jump, mu_karp, mu_power, Eigenpair, PowerOptions};
use maxeig_core::{Error, Matrix, NumericPolicy, Result};
use serde_json::{json, Value};

use crate::report::{cycle_text, sig, sig_list, Report};
use crate::{MethodArg, Normalize};

fn load(file: &PathBuf) -> Result<MatrixFile> {
    MatrixFile::read(file)
}

fn one_based(nodes: impl IntoIterator<Item = usize>) -> Vec<usize> {
    nodes.into_iter().map(|i| i + 1).collect()
}

fn solve(a: &Matrix, method: MethodArg, policy: &NumericPolicy) -> Result<Eigenpair> {
    match method {
        MethodArg::Jump => mu_jump(a, policy),
        MethodArg::Karp | MethodArg::All => mu_karp(a, policy),
        MethodArg::Power => mu_power(a, &PowerOptions::default(), policy),
    }
}

fn pair_json(a: &Matrix, pair: &Eigenpair) -> Value {
    json!({
        "mu": pair.mu,
        "has_cycle": pair.has_cycle(),
        "critical_cycle": pair.critical_cycle.as_ref().map(|c| one_based(c.nodes().iter().copied())),
        "cycle_weight": pair.critical_cycle.as_ref().map(|c| c.weight()),
        "critical_nodes": one_based(pair.critical_nodes.iter().copied()),
        "eigenvector": pair.x.as_ref().map(|x| x.as_slice().to_vec()),
        "residual": pair.residual(a),
        "irreducible": pair.irreducible,
    })
}

fn pair_text(pair: &Eigenpair) -> String {
    match &pair.critical_cycle {
        Some(c) => format!(
            "mu = {}  critical cycle {} (weight {})",
            sig(pair.mu),
            cycle_text(c.nodes()),
            sig(c.weight())
        ),
        None => format!("mu = {}  no cycle", sig(pair.mu)),
    }
}

pub fn mu(
    report: &mut Report,
    file: &PathBuf,
    method: MethodArg,
    policy: &NumericPolicy,
) -> Result<()> {
    let input = load(file)?;
    let a = &input.parsed;
    report.input_digest = Some(crate::report::digest(&input.raw));
    if method != MethodArg::All {
        let pair = report.time(method.name(), || solve(a, method, policy))?;
        report.results = json!({
            "n": a.n(),
            "method": method.name(),
            "mu": pair.mu,
            "has_cycle": pair.has_cycle(),
            "methods": { method.name(): pair_json(a, &pair) },
        });
        report.text = format!("{}\nmethod: {}\n", pair_text(&pair), method.name());
        return Ok(());
    }

    let mut methods = serde_json::Map::new();
    let mut mus = Vec::new();
    let mut text = String::new();
    for m in [MethodArg::Jump, MethodArg::Karp, MethodArg::Power] {
        if m == MethodArg::Jump && a.n() > policy.jump_limit {
            let why = format!("n = {} exceeds jump limit {}", a.n(), policy.jump_limit);
            text.push_str(&format!("{:<6} skipped: {why}\n", m.name()));
            methods.insert(m.name().into(), json!({ "skipped": why }));
            continue;
        }
        let pair = report.time(m.name(), || solve(a, m, policy))?;
        text.push_str(&format!("{:<6} {}\n", m.name(), pair_text(&pair)));
        methods.insert(m.name().into(), pair_json(a, &pair));
        mus.push(pair.mu);
    }
    let agreement = mus.iter().all(|&m| policy.approx_eq(m, mus[0]));
    text.push_str(&format!("agreement: {agreement}\n"));
    report.results = json!({
        "n": a.n(),
        "method": "all",
        "mu": mus[0],
        "has_cycle": mus[0] > 0.0,
        "methods": methods,
        "agreement": agreement,
    });
    report.text = text;
    Ok(())
}

pub fn eigvec(
    report: &mut Report,
    file: &PathBuf,
    method: MethodArg,
    policy: &NumericPolicy,
) -> Result<()> {
    let input = load(file)?;
    let a = &input.parsed;
    report.input_digest = Some(crate::report::digest(&input.raw));
    let method = if method == MethodArg::All {
        MethodArg::Karp
    } else {
        method
    };
    let pair = report.time(method.name(), || solve(a, method, policy))?;
    let x = pair.x.as_ref().ok_or(Error::ZeroEigenvalue)?;
    let residual = pair.residual(a).unwrap_or(0.0);
    report.results = json!({
        "n": a.n(),
        "method": method.name(),
        "mu": pair.mu,
        "eigenvector": x.as_slice(),
        "residual": residual,
        "critical_cycle": pair.critical_cycle.as_ref().map(|c| one_based(c.nodes().iter().copied())),
        "irreducible": pair.irreducible,
    });
    report.text = format!(
        "mu = {}\nx = {}\nresidual = {}\nmethod: {}\n",
        sig(pair.mu),
        sig_list(x.as_slice()),
        sig(residual),
        method.name()
    );
    Ok(())
}

/// Largest jump product, or the largest 3-cycle product beyond the limit.
fn worst_product(a: &SrMatrix, policy: &NumericPolicy) -> f64 {
    if let Ok(b) = error_bound(a, policy) {
        return b.max_product;
    }
    let m = a.base();
    let n = m.n();
    let mut worst = 1.0f64;
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                worst = worst.max(m.get(i, j) * m.get(j, k) * m.get(k, i));
            }
        }
    }
    worst
}

pub fn check(
    report: &mut Report,
    file: &PathBuf,
    sr: bool,
    transitive: bool,
    policy: &NumericPolicy,
) -> Result<()> {
    let input = load(file)?;
    let a = &input.parsed;
    report.input_digest = Some(crate::report::digest(&input.raw));
    let (sr, transitive) = if sr || transitive {
        (sr, transitive)
    } else {
        (true, true)
    };
    let validated = validate_sr(a, policy);
    let mut results = serde_json::Map::new();
    results.insert("n".into(), json!(a.n()));
    let mut text = String::new();
    if sr {
        let (entry, line) = match &validated {
            Ok(_) => (json!({ "pass": true }), "sr: pass".to_string()),
            Err(Error::NotPositive { row, col, value }) => (
                json!({ "pass": false, "at": [row + 1, col + 1], "entry": value }),
                format!(
                    "sr: fail at ({}, {}): entry {} is not positive",
                    row + 1,
                    col + 1,
                    sig(*value)
                ),
            ),
            Err(Error::Reciprocity { row, col, product }) => (
                json!({ "pass": false, "at": [row + 1, col + 1], "product": product }),
                format!(
                    "sr: fail at ({}, {}): a_ij * a_ji = {}",
                    row + 1,
                    col + 1,
                    sig(*product)
                ),
            ),
            Err(e) => return Err(e.clone()),
        };
        results.insert("sr".into(), entry);
        text.push_str(&line);
        text.push('\n');
    }
    if transitive {
        let (entry, line) = match &validated {
            Ok(s) => {
                let pass = is_transitive(s, policy);
                let product = worst_product(s, policy);
                let line = if pass {
                    "transitive: pass".to_string()
                } else {
                    format!("transitive: fail (jump product {})", sig(product))
                };
                (json!({ "pass": pass, "max_jump_product": product }), line)
            }
            Err(_) => (
                json!({ "pass": false, "skipped": "not an SR matrix" }),
                "transitive: fail (not an SR matrix)".to_string(),
            ),
        };
        results.insert("transitive".into(), entry);
        text.push_str(&line);
        text.push('\n');
    }
    report.results = Value::Object(results);
    report.text = text;
    Ok(())
}

pub fn weights(
    report: &mut Report,
    file: &PathBuf,
    normalize: Normalize,
    policy: &NumericPolicy,
) -> Result<()> {
    let input = load(file)?;
    report.input_digest = Some(crate::report::digest(&input.raw));
    let a = validate_sr(&input.parsed, policy)?;
    let wv = report.time("weights", || weight_vector(&a, policy))?;
    let bound = if a.n() <= policy.jump_limit {
        Some(report.time("bound", || error_bound(&a, policy))?)
    } else {
        None
    };
    let w = match normalize {
        Normalize::Max => wv.w.clone(),
        Normalize::Sum => wv.w.normalized_sum(),
    };
    report.results = json!({
        "n": a.n(),
        "normalize": normalize.name(),
        "weights": w.as_slice(),
        "mu": wv.mu,
        "error": wv.error,
        "bound": bound.as_ref().map(|b| json!({
            "c": b.c,
            "max_jump_product": b.max_product,
            "k": b.k,
            "principal": b.principal,
        })),
    });
    let c = bound
        .as_ref()
        .map(|b| sig(b.c))
        .unwrap_or_else(|| format!("n/a (n exceeds jump limit {})", policy.jump_limit));
    report.text = format!(
        "w = {}\ne = {}\nc = {}\nmu = {}\n",
        sig_list(w.as_slice()),
        sig(wv.error),
        c,
        sig(wv.mu)
    );
    Ok(())
}

pub fn tau(
    report: &mut Report,
    file: &PathBuf,
    from: f64,
    to: f64,
    steps: usize,
    policy: &NumericPolicy,
) -> Result<()> {
    let input = load(file)?;
    report.input_digest = Some(crate::report::digest(&input.raw));
    let a = validate_sr(&input.parsed, policy)?;
    let scan = report.time("scan", || tau_scan(&a, from, to, steps, policy))?;
    let table: Vec<[f64; 2]> = scan
        .taus
        .iter()
        .zip(&scan.mus)
        .map(|(&t, &m)| [t, m])
        .collect();
    report.results = json!({
        "n": a.n(),
        "entry": scan.arc.map(|(i, j)| [i + 1, j + 1]),
        "tau1": scan.tau1,
        "tau2": scan.tau2,
        "mu0": scan.mu0,
        "tau_at_min": scan.tau_min,
        "grid_ratio": scan.resolution(),
        "unimodal": scan.is_unimodal(),
        "violations": scan.violations,
        "table": table,
    });
    let mut text = String::new();
    if let Some((i, j)) = scan.arc {
        text.push_str(&format!("# entry ({}, {}) scaled by tau\n", i + 1, j + 1));
    }
    text.push_str(&format!(
        "# mu0 = {} at tau = {}; tau1 = {}, tau2 = {}; unimodal: {}\n",
        sig(scan.mu0),
        sig(scan.tau_min),
        sig(scan.tau1),
        sig(scan.tau2),
        scan.is_unimodal()
    ));
    text.push_str("tau,mu\n");
    for [t, m] in table {
        text.push_str(&format!("{},{}\n", sig(t), sig(m)));
    }
    report.text = text;
    Ok(())
}

pub fn bench(report: &mut Report, config: &BenchConfig, policy: &NumericPolicy) -> Result<()> {
    let rows = report.time("total", || run_bench(config, policy))?;
    let timings: Vec<Value> = rows
        .iter()
        .map(|r| json!({ "n": r.n, "jump": r.jump_ms, "karp": r.karp_ms, "power": r.power_ms }))
        .collect();
    report
        .timings_ms
        .insert("median_by_size".into(), json!(timings));
    report.results = json!({
        "rows": rows.iter().map(|r| json!({
            "n": r.n,
            "trials": r.trials,
            "agreed": r.agreed,
            "agreement": r.agreement,
            "jump_run": r.jump_ms.is_some(),
        })).collect::<Vec<_>>(),
    });
    report.text = rows_to_csv(&rows);
    Ok(())
}
