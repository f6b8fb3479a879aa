//! Python bindings. Structured results (outcomes, certificates, catalog
//! hits) come back as plain dicts decoded from the JSON the core emits.

use ::hollow_iep as core;
use core::graph::{build_family, graph6, FamilySpec};
use core::obstructions::{check_target, q0_bounds as core_q0_bounds, KnownBounds, Verdict};
use core::search::{search_oml, search_spectrum, SearchConfig};
use core::{Graph, HollowMatrix, Oml, Target, TargetSpectrum};
use pyo3::create_exception;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyString;

create_exception!(hollow_iep, HollowError, PyValueError, "Raised for invalid input or failed computations.");

fn err(e: core::Error) -> PyErr {
    HollowError::new_err(e.to_string())
}

fn to_py<T: serde::Serialize>(py: Python<'_>, x: &T) -> PyResult<Py<PyAny>> {
    let text = serde_json::to_string(x).map_err(|e| HollowError::new_err(e.to_string()))?;
    Ok(py.import("json")?.call_method1("loads", (text,))?.unbind())
}

#[pyclass(name = "Graph", module = "hollow_iep", frozen)]
struct PyGraph {
    inner: Graph,
}

#[pymethods]
impl PyGraph {
    #[new]
    fn new(n: usize, edges: Vec<(usize, usize)>) -> PyResult<Self> {
        Ok(PyGraph { inner: Graph::new(n, edges).map_err(err)? })
    }

    #[staticmethod]
    fn from_graph6(s: &str) -> PyResult<Self> {
        Ok(PyGraph { inner: graph6::decode(s).map_err(err)? })
    }

    /// A family member such as "wheel:5" or "kmn:2,3".
    #[staticmethod]
    fn family(spec: &str) -> PyResult<Self> {
        let spec: FamilySpec = spec.parse().map_err(err)?;
        Ok(PyGraph { inner: build_family(&spec).map_err(err)? })
    }

    #[getter]
    fn order(&self) -> usize {
        self.inner.order()
    }

    #[getter]
    fn edges(&self) -> Vec<(usize, usize)> {
        self.inner.edges().to_vec()
    }

    fn graph6(&self) -> String {
        self.inner.graph6()
    }

    fn is_bipartite(&self) -> bool {
        self.inner.is_bipartite()
    }

    fn is_connected(&self) -> bool {
        self.inner.is_connected()
    }

    fn __eq__(&self, other: &PyGraph) -> bool {
        self.inner == other.inner
    }

    fn __repr__(&self) -> String {
        format!("Graph('{}')", self.inner.graph6())
    }
}

#[pyclass(name = "HollowMatrix", module = "hollow_iep", frozen)]
struct PyMatrix {
    inner: HollowMatrix,
}

#[pymethods]
impl PyMatrix {
    /// Weights are taken in the order of `graph.edges`.
    #[staticmethod]
    fn from_edge_weights(graph: &PyGraph, weights: Vec<f64>) -> PyResult<Self> {
        Ok(PyMatrix { inner: HollowMatrix::from_edge_weights(&graph.inner, &weights).map_err(err)? })
    }

    #[getter]
    fn graph(&self) -> PyGraph {
        PyGraph { inner: self.inner.pattern().clone() }
    }

    fn to_list(&self) -> Vec<Vec<f64>> {
        let n = self.inner.order();
        (0..n).map(|i| (0..n).map(|j| self.inner.get(i, j)).collect()).collect()
    }

    fn eigenvalues(&self) -> PyResult<Vec<f64>> {
        self.inner.eigenvalues().map_err(err)
    }

    /// `{"generalized_cycles": [...], "determinant": [...]}`, each the
    /// monic characteristic polynomial from the leading coefficient down.
    fn charpoly(&self, py: Python<'_>) -> PyResult<Py<PyAny>> {
        let via = core::gencyc::charpoly_via_gencyc(&self.inner).map_err(err)?;
        let direct = core::gencyc::charpoly_direct(&self.inner);
        let doc = serde_json::json!({
            "generalized_cycles": via.polynomial(),
            "determinant": direct.polynomial(),
        });
        to_py(py, &doc)
    }
}

fn target(spectrum: Option<&Bound<'_, PyAny>>, oml: Option<Vec<usize>>) -> PyResult<Target> {
    match (spectrum, oml) {
        (Some(s), None) => Ok(Target::Spectrum(spectrum_arg(s)?)),
        (None, Some(o)) => Ok(Target::Oml(Oml::new(o).map_err(err)?)),
        _ => Err(HollowError::new_err("give exactly one of spectrum= or oml=")),
    }
}

/// A literal such as "-2^2,1,3" or a sequence of floats.
fn spectrum_arg(s: &Bound<'_, PyAny>) -> PyResult<TargetSpectrum> {
    if let Ok(text) = s.cast::<PyString>() {
        return text.to_str()?.parse().map_err(err);
    }
    let values: Vec<f64> = s.extract()?;
    TargetSpectrum::from_f64(&values).map_err(err)
}

#[pyfunction]
fn max_hollow_rank(graph: &PyGraph) -> PyResult<usize> {
    core::gencyc::max_hollow_rank(&graph.inner).map_err(err)
}

#[pyfunction]
fn q0_bounds(graph: &PyGraph) -> PyResult<(usize, usize)> {
    core_q0_bounds(&graph.inner, &KnownBounds::default()).map_err(err)
}

/// The certificate as a dict if some rule refutes the target, else None.
#[pyfunction]
#[pyo3(signature = (graph, *, spectrum=None, oml=None))]
fn certify(
    py: Python<'_>,
    graph: &PyGraph,
    spectrum: Option<&Bound<'_, PyAny>>,
    oml: Option<Vec<usize>>,
) -> PyResult<Option<Py<PyAny>>> {
    match check_target(&graph.inner, &target(spectrum, oml)?).map_err(err)? {
        Verdict::Refuted(cert) => Ok(Some(to_py(py, &cert)?)),
        Verdict::Pass => Ok(None),
    }
}

#[pyfunction]
#[pyo3(signature = (graph, *, spectrum=None, oml=None, seed=0, restarts=64, tol=1e-7))]
fn search(
    py: Python<'_>,
    graph: &PyGraph,
    spectrum: Option<&Bound<'_, PyAny>>,
    oml: Option<Vec<usize>>,
    seed: u64,
    restarts: usize,
    tol: f64,
) -> PyResult<Py<PyAny>> {
    let cfg = SearchConfig { restarts, tol, ..SearchConfig::with_seed(seed) };
    let t = target(spectrum, oml)?;
    let g = graph.inner.clone();
    let outcome = py
        .detach(move || match t {
            Target::Spectrum(s) => search_spectrum(&g, &s, &cfg),
            Target::Oml(o) => search_oml(&g, &o, &cfg),
        })
        .map_err(err)?;
    to_py(py, &outcome)
}

#[pyfunction]
fn realize_path(spectrum: &Bound<'_, PyAny>) -> PyResult<PyMatrix> {
    let s = spectrum_arg(spectrum)?;
    let r = core::realizers::realize_path(&s, s.order()).map_err(err)?;
    Ok(PyMatrix { inner: r.matrix })
}

#[pyfunction]
#[pyo3(signature = (m, n, spectrum, seed=0))]
fn realize_complete_bipartite(m: usize, n: usize, spectrum: &Bound<'_, PyAny>, seed: u64) -> PyResult<PyMatrix> {
    let s = spectrum_arg(spectrum)?;
    let r = core::realizers::realize_complete_bipartite(m, n, &s, seed).map_err(err)?;
    Ok(PyMatrix { inner: r.matrix })
}

#[pyfunction]
fn catalog_lookup(py: Python<'_>, graph: &PyGraph) -> PyResult<Py<PyAny>> {
    to_py(py, &core::catalog::lookup(&graph.inner).map_err(err)?)
}

#[pymodule]
fn hollow_iep(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("HollowError", m.py().get_type::<HollowError>())?;
    m.add_class::<PyGraph>()?;
    m.add_class::<PyMatrix>()?;
    m.add_function(wrap_pyfunction!(max_hollow_rank, m)?)?;
    m.add_function(wrap_pyfunction!(q0_bounds, m)?)?;
    m.add_function(wrap_pyfunction!(certify, m)?)?;
    m.add_function(wrap_pyfunction!(search, m)?)?;
    m.add_function(wrap_pyfunction!(realize_path, m)?)?;
    m.add_function(wrap_pyfunction!(realize_complete_bipartite, m)?)?;
    m.add_function(wrap_pyfunction!(catalog_lookup, m)?)?;
    Ok(())
}
