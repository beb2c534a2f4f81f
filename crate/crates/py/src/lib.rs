//! Python bindings; reports come back as plain dicts.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use serde_json::json;

use quadratic_quandle::diagram::{braid_to_diagram, load_table, parse_pd, pd_to_diagram, BraidWord, Diagram};
use quadratic_quandle::families::identity::poly_identity_check;
use quadratic_quandle::families::torus::torus_invariant;
use quadratic_quandle::families::twobridge::twobridge_invariant;
use quadratic_quandle::gf::{enumerate_kappas, QuadField};
use quadratic_quandle::invariant::DEFAULT_ENUMERATION_CAP;
use quadratic_quandle::report::{analyze, sweep as run_sweep};

fn err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn to_py<'py>(py: Python<'py>, value: serde_json::Value) -> PyResult<Bound<'py, PyAny>> {
    py.import("json")?.call_method1("loads", (value.to_string(),))
}

fn field(p: u32, kappa: u32) -> PyResult<QuadField> {
    QuadField::new(p, kappa).map_err(err)
}

/// Admissible `kappa` values for `p`.
#[pyfunction]
fn kappas(p: u32) -> PyResult<Vec<u32>> {
    enumerate_kappas(p).map_err(err)
}

/// Report for a PD code or a braid word such as `"2:1,1,1"`.
#[pyfunction]
#[pyo3(signature = (p, kappa, pd=None, braid=None, brute_check=false))]
fn compute<'py>(
    py: Python<'py>,
    p: u32,
    kappa: u32,
    pd: Option<&str>,
    braid: Option<&str>,
    brute_check: bool,
) -> PyResult<Bound<'py, PyAny>> {
    let k = field(p, kappa)?;
    let d: Diagram = match (pd, braid) {
        (Some(text), None) => pd_to_diagram(&parse_pd(text).map_err(err)?).map_err(err)?,
        (None, Some(text)) => braid_to_diagram(&BraidWord::parse(text).map_err(err)?),
        _ => return Err(err("give exactly one of pd or braid")),
    };
    let rep = analyze("input", &d, &k, brute_check.then_some(DEFAULT_ENUMERATION_CAP)).map_err(err)?;
    to_py(py, json!(rep))
}

#[pyfunction]
fn torus<'py>(py: Python<'py>, m: u64, n: u64, p: u32, kappa: u32) -> PyResult<Bound<'py, PyAny>> {
    let rep = torus_invariant(m, n, &field(p, kappa)?).map_err(err)?;
    let text = rep.phi.to_string();
    to_py(py, json!({ "report": rep, "phi_text": text }))
}

#[pyfunction]
#[allow(non_snake_case)]
fn twobridge<'py>(py: Python<'py>, P: i64, Q: i64, p: u32, kappa: u32) -> PyResult<Bound<'py, PyAny>> {
    let rep = twobridge_invariant(P, Q, &field(p, kappa)?).map_err(err)?;
    let text = rep.phi.to_string();
    to_py(py, json!({ "report": rep, "phi_text": text }))
}

/// Conjecture sweep over a JSON-lines knot table.
#[pyfunction]
#[pyo3(signature = (table, primes, all_kappa=false))]
fn sweep<'py>(py: Python<'py>, table: &str, primes: Vec<u32>, all_kappa: bool) -> PyResult<Bound<'py, PyAny>> {
    let mut fields = Vec::new();
    for p in primes {
        let ks = enumerate_kappas(p).map_err(err)?;
        let take = if all_kappa { ks.len() } else { 1 };
        for k in ks.into_iter().take(take) {
            fields.push(field(p, k)?);
        }
    }
    let rows: Vec<(String, Diagram)> = load_table(table)
        .map_err(err)?
        .into_iter()
        .map(|(name, pd)| pd_to_diagram(&pd).map(|d| (name, d)))
        .collect::<Result<_, _>>()
        .map_err(err)?;
    let rep = py.detach(|| run_sweep(&rows, &fields, Some(DEFAULT_ENUMERATION_CAP), None));
    to_py(py, json!(rep))
}

#[pyfunction]
fn identity_check(k: usize) -> PyResult<bool> {
    poly_identity_check(k).map_err(err)
}

#[pymodule]
fn qquandle(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(kappas, m)?)?;
    m.add_function(wrap_pyfunction!(compute, m)?)?;
    m.add_function(wrap_pyfunction!(torus, m)?)?;
    m.add_function(wrap_pyfunction!(twobridge, m)?)?;
    m.add_function(wrap_pyfunction!(sweep, m)?)?;
    m.add_function(wrap_pyfunction!(identity_check, m)?)?;
    Ok(())
}
