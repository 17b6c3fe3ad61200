//! Python bindings: graphs, matching polynomials and energies, named
//! families, class enumeration, quasi-order comparison, and the claim
//! harness. Exact matching counts are returned as Python ints (they fit in
//! u128 for every graph the core supports).

use std::sync::OnceLock;

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyList};

use matchenergy_core as core;
use matchenergy_core::error::Error;

fn pyerr(e: Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// Matching counts are memoized per component across all calls.
fn cache() -> &'static core::MatchingCache {
    static CACHE: OnceLock<core::MatchingCache> = OnceLock::new();
    CACHE.get_or_init(core::MatchingCache::new)
}

fn counts_to_py(py: Python<'_>, counts: &core::MatchingVector) -> PyResult<Py<PyList>> {
    use num_traits::ToPrimitive;
    // m_k <= m_k(K_32) < 2^63, so u128 never truncates at the supported sizes
    let items: Vec<u128> = counts
        .as_slice()
        .iter()
        .map(|c| {
            c.to_u128()
                .ok_or_else(|| PyValueError::new_err("matching count exceeds u128"))
        })
        .collect::<PyResult<_>>()?;
    Ok(PyList::new(py, items)?.unbind())
}

/// An undirected simple graph on at most 32 vertices.
#[pyclass(name = "Graph", frozen)]
struct PyGraph {
    inner: core::Graph,
}

#[pymethods]
impl PyGraph {
    #[new]
    #[pyo3(signature = (n, edges=Vec::new()))]
    fn new(n: usize, edges: Vec<(usize, usize)>) -> PyResult<Self> {
        Ok(PyGraph { inner: core::Graph::from_edge_list(n, &edges).map_err(pyerr)? })
    }

    /// Parse the text format: first line the order, then one "u v" per line.
    #[staticmethod]
    fn from_text(text: &str) -> PyResult<Self> {
        Ok(PyGraph { inner: core::Graph::from_text(text).map_err(pyerr)? })
    }

    /// Build a named family member from a spec such as "U:n=8,d=6".
    #[staticmethod]
    fn family(spec: &str) -> PyResult<Self> {
        let spec = core::FamilySpec::parse(spec).map_err(pyerr)?;
        Ok(PyGraph { inner: core::build(&spec).map_err(pyerr)? })
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    #[getter]
    fn edges(&self) -> Vec<(usize, usize)> {
        self.inner.edges()
    }

    fn to_text(&self) -> String {
        self.inner.to_text()
    }

    /// Canonical isomorphism-invariant key as a hex string.
    fn key(&self) -> String {
        core::canonical_key(&self.inner).hex()
    }

    fn is_isomorphic(&self, other: &PyGraph) -> bool {
        core::are_isomorphic(&self.inner, &other.inner)
    }

    fn is_connected(&self) -> bool {
        self.inner.is_connected()
    }

    fn diameter(&self) -> PyResult<usize> {
        self.inner.diameter().map_err(pyerr)
    }

    /// "tree", "unicyclic", "bicyclic", or "other" (connected graphs only).
    fn classify(&self) -> PyResult<String> {
        Ok(format!("{}", self.inner.classify().map_err(pyerr)?))
    }

    fn with_edge(&self, u: usize, v: usize) -> PyResult<PyGraph> {
        Ok(PyGraph { inner: self.inner.adding_edge(u, v).map_err(pyerr)? })
    }

    fn without_edge(&self, u: usize, v: usize) -> PyResult<PyGraph> {
        Ok(PyGraph { inner: self.inner.delete_edge(u, v).map_err(pyerr)? })
    }

    fn disjoint_union(&self, other: &PyGraph) -> PyResult<PyGraph> {
        Ok(PyGraph { inner: self.inner.disjoint_union(&other.inner).map_err(pyerr)? })
    }

    /// Exact matching counts m_0, m_1, ..., m_{floor(n/2)} as Python ints.
    fn matching_vector(&self, py: Python<'_>) -> PyResult<Py<PyList>> {
        let v = core::matching_vector(&self.inner, cache());
        counts_to_py(py, &v)
    }

    /// The matching polynomial rendered in the given variable.
    #[pyo3(signature = (var = 'u'))]
    fn matching_polynomial(&self, var: char) -> String {
        core::matching_polynomial(&self.inner, cache()).display_with(var)
    }

    /// Characteristic polynomial of the adjacency matrix, in `var`.
    #[pyo3(signature = (var = 'x'))]
    fn char_poly(&self, var: char) -> String {
        core::char_poly(&self.inner).to_polynomial().display_with(var)
    }

    fn eigenvalues(&self) -> Vec<f64> {
        core::eigenvalues(&self.inner)
    }

    /// Graph energy: the sum of absolute adjacency eigenvalues.
    fn energy(&self) -> f64 {
        core::graph_energy(&self.inner)
    }

    /// Matching energy by certified root isolation ("roots"), Coulson-type
    /// quadrature ("quad"), or "both" (cross-checked).
    #[pyo3(signature = (method = "roots", tol = 1e-8))]
    fn matching_energy(&self, method: &str, tol: f64) -> PyResult<f64> {
        let method: core::MeMethod = method.parse().map_err(pyerr)?;
        Ok(core::matching_energy(&self.inner, method, tol, cache())
            .map_err(pyerr)?
            .value)
    }

    /// Full energy report as a dict: eigenvalues, energy, matching energy,
    /// matching-polynomial roots, and their difference.
    #[pyo3(signature = (method = "roots", tol = 1e-8))]
    fn energy_report<'py>(
        &self,
        py: Python<'py>,
        method: &str,
        tol: f64,
    ) -> PyResult<Bound<'py, PyDict>> {
        let method: core::MeMethod = method.parse().map_err(pyerr)?;
        let r = core::energy_report(&self.inner, method, tol, cache()).map_err(pyerr)?;
        let d = PyDict::new(py);
        d.set_item("eigenvalues", r.eigenvalues)?;
        d.set_item("energy", r.energy)?;
        d.set_item("matching_energy", r.matching_energy)?;
        d.set_item("matching_roots", r.matching_roots)?;
        d.set_item("tre", r.tre)?;
        d.set_item("method_gap", r.method_gap)?;
        Ok(d)
    }

    fn __repr__(&self) -> String {
        format!("Graph(n={}, edges={:?})", self.inner.n(), self.inner.edges())
    }

    fn __eq__(&self, other: &PyGraph) -> bool {
        core::canonical_key(&self.inner) == core::canonical_key(&other.inner)
    }

    fn __hash__(&self) -> u64 {
        use std::hash::{Hash, Hasher};
        let mut h = std::collections::hash_map::DefaultHasher::new();
        core::canonical_key(&self.inner).as_bytes().hash(&mut h);
        h.finish()
    }
}

fn order_result_to_dict<'py>(
    py: Python<'py>,
    r: &core::QuasiOrderResult,
) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    d.set_item("outcome", format!("{:?}", r.outcome))?;
    d.set_item("witness", r.witness)?;
    d.set_item("counter_witness", r.counter_witness)?;
    Ok(d)
}

/// Compare two graphs in the matching-count quasi-order. The outcome is one
/// of Equal, StrictlyDominates, StrictlyDominatedBy, Dominates, DominatedBy,
/// or Incomparable, read left-to-right.
#[pyfunction]
fn compare<'py>(py: Python<'py>, left: &PyGraph, right: &PyGraph) -> PyResult<Bound<'py, PyDict>> {
    let r = core::compare_matching(&left.inner, &right.inner, cache());
    order_result_to_dict(py, &r)
}

/// All isomorphism classes of the given kind ("tree", "unicyclic",
/// "bicyclic") and order, optionally filtered by diameter.
#[pyfunction]
#[pyo3(signature = (kind, n, d = None))]
fn enumerate_class(kind: &str, n: usize, d: Option<usize>) -> PyResult<Vec<PyGraph>> {
    let kind: core::GraphClass = kind.parse().map_err(pyerr)?;
    let q = core::EnumQuery { kind, n, diameter: d };
    Ok(core::enumerate_class(&q)
        .map_err(pyerr)?
        .into_iter()
        .map(|inner| PyGraph { inner })
        .collect())
}

/// All connected graphs of the given order (n <= 7) up to isomorphism.
#[pyfunction]
fn enumerate_connected(n: usize) -> PyResult<Vec<PyGraph>> {
    Ok(core::enumerate_connected(n)
        .map_err(pyerr)?
        .into_iter()
        .map(|inner| PyGraph { inner })
        .collect())
}

/// The supported family spec codes with their parameter names.
#[pyfunction]
fn families(py: Python<'_>) -> PyResult<Py<PyList>> {
    let out = PyList::empty(py);
    for t in core::list_supported() {
        let d = PyDict::new(py);
        d.set_item("code", t.code)?;
        d.set_item("name", t.name)?;
        d.set_item("params", t.params)?;
        d.set_item("constraint", t.constraint)?;
        out.append(d)?;
    }
    Ok(out.unbind())
}

fn reports_to_py(py: Python<'_>, reports: &[core::VerificationReport]) -> PyResult<Py<PyList>> {
    let out = PyList::empty(py);
    for r in reports {
        let d = PyDict::new(py);
        d.set_item("claim", &r.claim)?;
        d.set_item("n", r.n)?;
        d.set_item("d", r.d)?;
        d.set_item("status", r.status.to_string())?;
        d.set_item("class_size", r.class_size)?;
        d.set_item("min_key", &r.min_key)?;
        d.set_item("min_me", r.min_me)?;
        d.set_item("gap", r.gap)?;
        d.set_item("dominated_count", r.dominated_count)?;
        d.set_item("seconds", r.seconds)?;
        d.set_item("in_claim_range", r.in_claim_range)?;
        let ws = PyList::empty(py);
        for w in &r.witnesses {
            let wd = PyDict::new(py);
            wd.set_item("description", &w.description)?;
            wd.set_item("n", w.n)?;
            wd.set_item("edges", &w.edges)?;
            wd.set_item("key", &w.key)?;
            ws.append(wd)?;
        }
        d.set_item("witnesses", ws)?;
        out.append(d)?;
    }
    Ok(out.unbind())
}

/// Run one claim of the verification harness; returns one report dict per
/// parameter cell. `n`/`d` are inclusive (lo, hi) ranges.
#[pyfunction]
#[pyo3(signature = (claim, n = None, d = None))]
fn verify(py: Python<'_>, claim: &str, n: Option<(usize, usize)>, d: Option<(usize, usize)>) -> PyResult<Py<PyList>> {
    let id: core::ClaimId = claim.parse().map_err(pyerr)?;
    let reports = core::verify_theorem(id, n, d, cache()).map_err(pyerr)?;
    reports_to_py(py, &reports)
}

/// Check one exact matching-count identity over its parameter grid.
#[pyfunction]
#[pyo3(signature = (identity, n = None, d = None))]
fn identities(py: Python<'_>, identity: &str, n: Option<(usize, usize)>, d: Option<(usize, usize)>) -> PyResult<Py<PyList>> {
    let id: core::IdentityId = identity.parse().map_err(pyerr)?;
    let reports = core::verify_identity(id, n, d, cache()).map_err(pyerr)?;
    reports_to_py(py, &reports)
}

#[pymodule]
fn matchenergy(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGraph>()?;
    m.add_function(wrap_pyfunction!(compare, m)?)?;
    m.add_function(wrap_pyfunction!(enumerate_class, m)?)?;
    m.add_function(wrap_pyfunction!(enumerate_connected, m)?)?;
    m.add_function(wrap_pyfunction!(families, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_function(wrap_pyfunction!(identities, m)?)?;
    Ok(())
}
