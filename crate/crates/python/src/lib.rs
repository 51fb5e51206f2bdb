//! Python bindings. Matrices cross the boundary as lists of rows; indices
//! are 0-based, as everywhere in Python.

use maxeig_core::ahp::{self, SrMatrix};
use maxeig_core::spectral::{self, PowerOptions};
use maxeig_core::{io, Error, Matrix, NumericPolicy, Vector};
use pyo3::create_exception;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

create_exception!(
    pymaxeig,
    MaxeigError,
    PyValueError,
    "Invalid input or failed check."
);
create_exception!(
    pymaxeig,
    JumpLimitError,
    MaxeigError,
    "Dimension exceeds the jump limit."
);
create_exception!(
    pymaxeig,
    ConvergenceError,
    MaxeigError,
    "Power iteration did not settle."
);

fn py_err(e: Error) -> PyErr {
    match e {
        Error::JumpLimitExceeded { .. } => JumpLimitError::new_err(e.to_string()),
        Error::NoConvergence { .. } => ConvergenceError::new_err(e.to_string()),
        other => MaxeigError::new_err(other.to_string()),
    }
}

fn matrix(rows: Vec<Vec<f64>>) -> PyResult<Matrix> {
    Matrix::from_rows(&rows).map_err(py_err)
}

fn policy(tol: f64, jump_limit: usize) -> PyResult<NumericPolicy> {
    NumericPolicy::default()
        .with_rel_tol(tol)
        .and_then(|p| p.with_jump_limit(jump_limit))
        .map_err(py_err)
}

fn sr(rows: Vec<Vec<f64>>, p: &NumericPolicy) -> PyResult<SrMatrix> {
    ahp::validate_sr(&matrix(rows)?, p).map_err(py_err)
}

/// Result of a `mu` computation.
#[pyclass(frozen, get_all, module = "pymaxeig")]
pub struct Eigenpair {
    mu: f64,
    x: Option<Vec<f64>>,
    critical_cycle: Option<Vec<usize>>,
    critical_nodes: Vec<usize>,
    method: String,
    irreducible: bool,
}

#[pymethods]
impl Eigenpair {
    fn __repr__(&self) -> String {
        format!(
            "Eigenpair(mu={}, method='{}', critical_cycle={:?})",
            self.mu, self.method, self.critical_cycle
        )
    }
}

impl From<spectral::Eigenpair> for Eigenpair {
    fn from(p: spectral::Eigenpair) -> Self {
        Self {
            mu: p.mu,
            x: p.x.map(Vector::into_vec),
            critical_cycle: p.critical_cycle.map(|c| c.nodes().to_vec()),
            critical_nodes: p.critical_nodes.into_iter().collect(),
            method: p.method.to_string(),
            irreducible: p.irreducible,
        }
    }
}

#[pyclass(frozen, get_all, module = "pymaxeig")]
pub struct WeightVector {
    w: Vec<f64>,
    mu: f64,
    error: f64,
    induced: Vec<Vec<f64>>,
}

#[pymethods]
impl WeightVector {
    fn __repr__(&self) -> String {
        format!("WeightVector(w={:?}, error={})", self.w, self.error)
    }
}

#[pyclass(frozen, get_all, module = "pymaxeig")]
pub struct TauScan {
    taus: Vec<f64>,
    mus: Vec<f64>,
    tau1: f64,
    tau2: f64,
    mu0: f64,
    tau_min: f64,
    entry: Option<(usize, usize)>,
    violations: Vec<usize>,
    unimodal: bool,
}

/// `μ(A)` and a max-eigenvector. `method` is "jump", "karp" or "power".
#[pyfunction]
#[pyo3(signature = (rows, method = "karp", tol = 1e-9, jump_limit = 9))]
fn mu(rows: Vec<Vec<f64>>, method: &str, tol: f64, jump_limit: usize) -> PyResult<Eigenpair> {
    let a = matrix(rows)?;
    let p = policy(tol, jump_limit)?;
    let pair = match method {
        "jump" => spectral::mu_jump(&a, &p),
        "karp" => spectral::mu_karp(&a, &p),
        "power" => spectral::mu_power(&a, &PowerOptions::default(), &p),
        other => return Err(PyValueError::new_err(format!("unknown method {other:?}"))),
    };
    pair.map(Eigenpair::from).map_err(py_err)
}

/// `(A ⊗ x)_i = max_j a_ij x_j`.
#[pyfunction]
fn max_matvec(rows: Vec<Vec<f64>>, x: Vec<f64>) -> PyResult<Vec<f64>> {
    let v = Vector::new(x).map_err(py_err)?;
    matrix(rows)?
        .max_matvec(&v)
        .map(Vector::into_vec)
        .map_err(py_err)
}

#[pyfunction]
#[pyo3(signature = (rows, tol = 1e-9))]
fn is_irreducible(rows: Vec<Vec<f64>>, tol: f64) -> PyResult<bool> {
    Ok(matrix(rows)?.is_irreducible(&policy(tol, 9)?))
}

/// Raises `MaxeigError` naming the offending entry unless `rows` is SR.
#[pyfunction]
#[pyo3(signature = (rows, tol = 1e-9))]
fn validate_sr(rows: Vec<Vec<f64>>, tol: f64) -> PyResult<()> {
    sr(rows, &policy(tol, 9)?).map(|_| ())
}

#[pyfunction]
#[pyo3(signature = (rows, tol = 1e-9, jump_limit = 9))]
fn is_transitive(rows: Vec<Vec<f64>>, tol: f64, jump_limit: usize) -> PyResult<bool> {
    let p = policy(tol, jump_limit)?;
    Ok(ahp::is_transitive(&sr(rows, &p)?, &p))
}

#[pyfunction]
#[pyo3(signature = (rows, tol = 1e-9))]
fn weight_vector(rows: Vec<Vec<f64>>, tol: f64) -> PyResult<WeightVector> {
    let p = policy(tol, 9)?;
    let wv = ahp::weight_vector(&sr(rows, &p)?, &p).map_err(py_err)?;
    Ok(WeightVector {
        w: wv.w.into_vec(),
        mu: wv.mu,
        error: wv.error,
        induced: wv.induced.to_rows(),
    })
}

#[pyfunction]
fn relative_error(rows: Vec<Vec<f64>>, w: Vec<f64>) -> PyResult<f64> {
    let p = NumericPolicy::default();
    let w = Vector::new(w).map_err(py_err)?;
    ahp::relative_error(&sr(rows, &p)?, &w).map_err(py_err)
}

/// `(c, max_jump_product, k, principal)`.
#[pyfunction]
#[pyo3(signature = (rows, tol = 1e-9, jump_limit = 9))]
fn error_bound(
    rows: Vec<Vec<f64>>,
    tol: f64,
    jump_limit: usize,
) -> PyResult<(f64, f64, usize, bool)> {
    let p = policy(tol, jump_limit)?;
    let b = ahp::error_bound(&sr(rows, &p)?, &p).map_err(py_err)?;
    Ok((b.c, b.max_product, b.k, b.principal))
}

#[pyfunction]
#[pyo3(signature = (rows, tau_min = 0.1, tau_max = 10.0, steps = 200, tol = 1e-9))]
fn tau_scan(
    rows: Vec<Vec<f64>>,
    tau_min: f64,
    tau_max: f64,
    steps: usize,
    tol: f64,
) -> PyResult<TauScan> {
    let p = policy(tol, 9)?;
    let s = ahp::tau_scan(&sr(rows, &p)?, tau_min, tau_max, steps, &p).map_err(py_err)?;
    Ok(TauScan {
        unimodal: s.is_unimodal(),
        taus: s.taus,
        mus: s.mus,
        tau1: s.tau1,
        tau2: s.tau2,
        mu0: s.mu0,
        tau_min: s.tau_min,
        entry: s.arc,
        violations: s.violations,
    })
}

/// Parses CSV or `{"n", "rows"}` JSON text.
#[pyfunction]
fn parse_matrix(text: &str) -> PyResult<Vec<Vec<f64>>> {
    io::parse_auto(text).map(|m| m.to_rows()).map_err(py_err)
}

#[pyfunction]
fn matrix_to_json(rows: Vec<Vec<f64>>) -> PyResult<String> {
    Ok(io::to_json(&matrix(rows)?))
}

#[pymodule]
fn pymaxeig(m: &Bound<'_, PyModule>) -> PyResult<()> {
    let py = m.py();
    m.add("MaxeigError", py.get_type::<MaxeigError>())?;
    m.add("JumpLimitError", py.get_type::<JumpLimitError>())?;
    m.add("ConvergenceError", py.get_type::<ConvergenceError>())?;
    m.add_class::<Eigenpair>()?;
    m.add_class::<WeightVector>()?;
    m.add_class::<TauScan>()?;
    m.add_function(wrap_pyfunction!(mu, m)?)?;
    m.add_function(wrap_pyfunction!(max_matvec, m)?)?;
    m.add_function(wrap_pyfunction!(is_irreducible, m)?)?;
    m.add_function(wrap_pyfunction!(validate_sr, m)?)?;
    m.add_function(wrap_pyfunction!(is_transitive, m)?)?;
    m.add_function(wrap_pyfunction!(weight_vector, m)?)?;
    m.add_function(wrap_pyfunction!(relative_error, m)?)?;
    m.add_function(wrap_pyfunction!(error_bound, m)?)?;
    m.add_function(wrap_pyfunction!(tau_scan, m)?)?;
    m.add_function(wrap_pyfunction!(parse_matrix, m)?)?;
    m.add_function(wrap_pyfunction!(matrix_to_json, m)?)?;
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    Ok(())
}
