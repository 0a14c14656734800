//! Python bindings for the tokenlap library.
//!
//! Exposes `Graph` and `TokenGraph` classes plus free functions for spectra,
//! exact identities, complement pairing, closed-form families, isomorphism
//! checks, and corpus scanning. Build the extension with
//! `cargo build -p tokenlap-python --release`; the resulting
//! `libtokenlap_py.so` imports as the module `tokenlap_py` once renamed to
//! `tokenlap_py.so` on the Python path (see `python/smoke_test.py`).

use pyo3::exceptions::{PyIndexError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

use tokenlap::closed;
use tokenlap::identities;
use tokenlap::iso;
use tokenlap::scan;
use tokenlap::spectral;
use tokenlap::{
    Graph as CoreGraph, GraphFamilySpec, SparseIntMatrix, Spectrum,
    TokenGraph as CoreTokenGraph,
};

fn py_err(e: tokenlap::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn dense_rows(m: &SparseIntMatrix) -> Vec<Vec<i64>> {
    (0..m.nrows())
        .map(|r| (0..m.ncols()).map(|c| m.get(r, c)).collect())
        .collect()
}

fn spectrum_pairs(s: &Spectrum) -> Vec<(f64, usize)> {
    s.groups().to_vec()
}

/// An undirected graph on up to 62 vertices.
#[pyclass(name = "Graph", frozen)]
struct PyGraph {
    inner: CoreGraph,
}

#[pymethods]
impl PyGraph {
    #[new]
    fn new(n: usize, edges: Vec<(usize, usize)>) -> PyResult<Self> {
        Ok(PyGraph {
            inner: CoreGraph::from_edges(n, &edges).map_err(py_err)?,
        })
    }

    /// Parses one graph6 record.
    #[staticmethod]
    fn from_graph6(record: &str) -> PyResult<Self> {
        Ok(PyGraph {
            inner: CoreGraph::parse_graph6(record.trim()).map_err(py_err)?,
        })
    }

    /// Builds a named family, e.g. "path:4", "complete:5", "cycle:6",
    /// "star:5", "bipartite:2,3", "johnson:5,2", "odd:3", "double:odd:3",
    /// "doubledjohnson:4,1".
    #[staticmethod]
    fn family(spec: &str) -> PyResult<Self> {
        let fam: GraphFamilySpec = spec.parse().map_err(py_err)?;
        Ok(PyGraph {
            inner: fam.build().map_err(py_err)?,
        })
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    #[getter]
    fn edge_count(&self) -> usize {
        self.inner.edge_count()
    }

    fn edges(&self) -> Vec<(usize, usize)> {
        self.inner.edges()
    }

    fn has_edge(&self, u: usize, v: usize) -> bool {
        self.inner.has_edge(u, v)
    }

    fn degree(&self, v: usize) -> PyResult<usize> {
        if v >= self.inner.n() {
            return Err(PyIndexError::new_err(format!("vertex {v} out of range")));
        }
        Ok(self.inner.degree(v))
    }

    fn neighbors(&self, v: usize) -> PyResult<Vec<usize>> {
        if v >= self.inner.n() {
            return Err(PyIndexError::new_err(format!("vertex {v} out of range")));
        }
        Ok(self.inner.neighbors(v).collect())
    }

    fn complement(&self) -> Self {
        PyGraph {
            inner: self.inner.complement(),
        }
    }

    /// Bipartite double cover.
    fn double(&self) -> PyResult<Self> {
        Ok(PyGraph {
            inner: self.inner.double().map_err(py_err)?,
        })
    }

    fn is_connected(&self) -> bool {
        self.inner.is_connected()
    }

    fn connected_components(&self) -> Vec<Vec<usize>> {
        self.inner.connected_components()
    }

    fn graph6(&self) -> String {
        self.inner.write_graph6()
    }

    /// Laplacian as dense integer rows.
    fn laplacian(&self) -> Vec<Vec<i64>> {
        dense_rows(&self.inner.laplacian())
    }

    /// Adjacency matrix as dense integer rows.
    fn adjacency(&self) -> Vec<Vec<i64>> {
        dense_rows(&self.inner.adjacency_matrix())
    }

    /// Laplacian spectrum as (value, multiplicity) pairs.
    fn spectrum(&self) -> PyResult<Vec<(f64, usize)>> {
        Ok(spectrum_pairs(&spectral::spectrum_of(&self.inner).map_err(py_err)?))
    }

    fn algebraic_connectivity(&self) -> PyResult<f64> {
        spectral::algebraic_connectivity(&self.inner).map_err(py_err)
    }

    fn __repr__(&self) -> String {
        format!(
            "Graph(n={}, edges={}, graph6='{}')",
            self.inner.n(),
            self.inner.edge_count(),
            self.inner.write_graph6()
        )
    }

    fn __eq__(&self, other: &PyGraph) -> bool {
        self.inner.n() == other.inner.n() && self.inner.edges() == other.inner.edges()
    }
}

/// The k-token graph of a base graph: vertices are k-subsets in
/// lexicographic order, adjacent when their symmetric difference is an edge
/// of the base graph.
#[pyclass(name = "TokenGraph", frozen)]
struct PyTokenGraph {
    inner: CoreTokenGraph,
}

#[pymethods]
impl PyTokenGraph {
    #[new]
    fn new(base: &PyGraph, k: usize) -> PyResult<Self> {
        Ok(PyTokenGraph {
            inner: CoreTokenGraph::new(&base.inner, k).map_err(py_err)?,
        })
    }

    #[getter]
    fn k(&self) -> usize {
        self.inner.k()
    }

    #[getter]
    fn vertex_count(&self) -> usize {
        self.inner.vertex_count()
    }

    #[getter]
    fn edge_count(&self) -> usize {
        self.inner.edge_count()
    }

    fn base(&self) -> PyGraph {
        PyGraph {
            inner: self.inner.base().clone(),
        }
    }

    /// The k-subset behind vertex index i, as a sorted list.
    fn subset(&self, i: usize) -> PyResult<Vec<usize>> {
        if i >= self.inner.vertex_count() {
            return Err(PyIndexError::new_err(format!("vertex {i} out of range")));
        }
        Ok(self.inner.subset(i).elems())
    }

    /// All vertex subsets in lexicographic (vertex-index) order.
    fn subsets(&self) -> Vec<Vec<usize>> {
        self.inner.subsets().map(|s| s.elems()).collect()
    }

    fn edges(&self) -> Vec<(usize, usize)> {
        self.inner.edges()
    }

    fn neighbors(&self, i: usize) -> PyResult<Vec<usize>> {
        if i >= self.inner.vertex_count() {
            return Err(PyIndexError::new_err(format!("vertex {i} out of range")));
        }
        Ok(self.inner.neighbors(i).iter().map(|&j| j as usize).collect())
    }

    fn is_connected(&self) -> bool {
        self.inner.is_connected()
    }

    fn connected_components(&self) -> Vec<Vec<usize>> {
        self.inner.connected_components()
    }

    fn laplacian(&self) -> Vec<Vec<i64>> {
        dense_rows(&self.inner.laplacian())
    }

    /// The token graph as a plain Graph (needs at most 62 vertices).
    fn to_graph(&self) -> PyResult<PyGraph> {
        Ok(PyGraph {
            inner: self.inner.to_graph().map_err(py_err)?,
        })
    }

    fn spectrum(&self) -> PyResult<Vec<(f64, usize)>> {
        Ok(spectrum_pairs(
            &spectral::token_spectrum(self.inner.base(), self.inner.k()).map_err(py_err)?,
        ))
    }

    fn algebraic_connectivity(&self) -> PyResult<f64> {
        spectral::token_algebraic_connectivity(self.inner.base(), self.inner.k()).map_err(py_err)
    }

    fn __repr__(&self) -> String {
        format!(
            "TokenGraph(base='{}', k={}, vertices={}, edges={})",
            self.inner.base().write_graph6(),
            self.inner.k(),
            self.inner.vertex_count(),
            self.inner.edge_count()
        )
    }
}

/// Runs every exact integer identity for (h, k) and reports each outcome.
#[pyfunction]
fn verify_identities<'py>(
    py: Python<'py>,
    graph: &PyGraph,
    h: usize,
    k: usize,
) -> PyResult<Bound<'py, PyDict>> {
    let g = &graph.inner;
    let n = g.n();
    let flags = [
        ("gram", identities::verify_gram(n, k).map_err(py_err)?.holds),
        (
            "intertwining",
            identities::verify_intertwining(g, h, k).map_err(py_err)?.holds,
        ),
        (
            "projection",
            identities::verify_projection(g, k).map_err(py_err)?.holds,
        ),
        (
            "general_projection",
            identities::verify_general_projection(g, h, k)
                .map_err(py_err)?
                .holds,
        ),
        (
            "adjacency_relation",
            identities::verify_adjacency_relation(g, h, k)
                .map_err(py_err)?
                .holds,
        ),
        (
            "commutation",
            identities::verify_commutation(g, k).map_err(py_err)?.holds,
        ),
        (
            "incidence_factorization",
            identities::verify_incidence_factorization(g, k)
                .map_err(py_err)?
                .holds,
        ),
        (
            "lower_recovery",
            identities::recover_lower_laplacian(g, h, k).map_err(py_err)?
                == CoreTokenGraph::new(g, h).map_err(py_err)?.laplacian(),
        ),
    ];
    let dict = PyDict::new(py);
    let mut all = true;
    for (name, holds) in flags {
        all &= holds;
        dict.set_item(name, holds)?;
    }
    dict.set_item("all_hold", all)?;
    Ok(dict)
}

/// Pairs k-token eigenvalues of the graph and its complement; sums must
/// reproduce the Johnson spectrum.
#[pyfunction]
fn pairing<'py>(py: Python<'py>, graph: &PyGraph, k: usize) -> PyResult<Bound<'py, PyDict>> {
    let p = spectral::pairing_decomposition(&graph.inner, k).map_err(py_err)?;
    let dict = PyDict::new(py);
    let triples: Vec<(f64, f64, i64)> = p
        .triples
        .iter()
        .map(|t| (t.lambda_g, t.lambda_gbar, t.lambda_johnson))
        .collect();
    dict.set_item("triples", triples)?;
    dict.set_item("max_residual", p.max_residual)?;
    dict.set_item("johnson_match", p.johnson_match)?;
    Ok(dict)
}

/// True when every h-token Laplacian eigenvalue appears among the k-token
/// eigenvalues (with multiplicity), within tol.
#[pyfunction]
#[pyo3(signature = (graph, h, k, tol = 1e-7))]
fn containment(graph: &PyGraph, h: usize, k: usize, tol: f64) -> PyResult<bool> {
    let sub = spectral::token_spectrum(&graph.inner, h).map_err(py_err)?;
    let sup = spectral::token_spectrum(&graph.inner, k).map_err(py_err)?;
    Ok(spectral::spectrum_contains(&sub, &sup, tol))
}

/// Closed-form Johnson Laplacian spectrum as (value, multiplicity) pairs.
#[pyfunction]
fn johnson_spectrum(n: usize, k: usize) -> PyResult<Vec<(f64, usize)>> {
    Ok(spectrum_pairs(&closed::johnson_laplacian(n, k).map_err(py_err)?))
}

/// Closed-form double-odd Laplacian spectrum (the k-token spectrum of the
/// star on 2k vertices).
#[pyfunction]
fn double_odd_spectrum(k: usize) -> PyResult<Vec<(f64, usize)>> {
    Ok(spectrum_pairs(&closed::double_odd_laplacian(k).map_err(py_err)?))
}

/// Closed-form odd-graph adjacency spectrum.
#[pyfunction]
fn odd_adjacency_spectrum(k: usize) -> PyResult<Vec<(f64, usize)>> {
    Ok(spectrum_pairs(&closed::odd_adjacency(k).map_err(py_err)?))
}

/// Documented Laplacian value list for the doubled Johnson graph.
#[pyfunction]
fn doubled_johnson_values(n: usize, k: usize) -> PyResult<Vec<f64>> {
    closed::doubled_johnson_values(n, k).map_err(py_err)
}

/// Checks the explicit star-to-inclusion-graph isomorphism
/// F_k(star on m vertices) = J(m-1; k-1, k).
#[pyfunction]
fn star_isomorphism(k: usize, m: usize) -> PyResult<bool> {
    Ok(iso::verify_star_isomorphism(k, m).map_err(py_err)?.holds)
}

/// Checks the explicit double-odd-to-inclusion-graph isomorphism.
#[pyfunction]
fn double_odd_isomorphism(k: usize) -> PyResult<bool> {
    Ok(iso::verify_double_odd_isomorphism(k).map_err(py_err)?.holds)
}

/// Scans graph6 corpus text for alpha(F_k(G)) = alpha(G); returns the
/// JSON-lines report (header, one record per graph, summary).
#[pyfunction]
#[pyo3(signature = (corpus, k, tol = 1e-7, jobs = 0))]
fn scan_conjecture(corpus: &str, k: usize, tol: f64, jobs: usize) -> PyResult<String> {
    Ok(scan::scan_conjecture(corpus, "python", k, tol, jobs)
        .map_err(py_err)?
        .to_jsonl())
}

#[pymodule]
fn tokenlap_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGraph>()?;
    m.add_class::<PyTokenGraph>()?;
    m.add_function(wrap_pyfunction!(verify_identities, m)?)?;
    m.add_function(wrap_pyfunction!(pairing, m)?)?;
    m.add_function(wrap_pyfunction!(containment, m)?)?;
    m.add_function(wrap_pyfunction!(johnson_spectrum, m)?)?;
    m.add_function(wrap_pyfunction!(double_odd_spectrum, m)?)?;
    m.add_function(wrap_pyfunction!(odd_adjacency_spectrum, m)?)?;
    m.add_function(wrap_pyfunction!(doubled_johnson_values, m)?)?;
    m.add_function(wrap_pyfunction!(star_isomorphism, m)?)?;
    m.add_function(wrap_pyfunction!(double_odd_isomorphism, m)?)?;
    m.add_function(wrap_pyfunction!(scan_conjecture, m)?)?;
    m.add("MAX_VERTICES", tokenlap::MAX_VERTICES)?;
    m.add("MAX_TOKEN_VERTICES", tokenlap::MAX_TOKEN_VERTICES)?;
    m.add("MAX_EIGEN_DIM", tokenlap::MAX_EIGEN_DIM)?;
    Ok(())
}
