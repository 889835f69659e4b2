//! Python bindings. Structured results come back as plain dicts and lists.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyModule;
use serde_json::{json, Value};

use msnring::closed_forms::{predict as predict_theorem, Params, TheoremId};
use msnring::graph::{clique_decomposition, commuting_graph, delta2_all};
use msnring::ring::{
    additive_quotient_type, center, centralizer_count, commuting_probability, is_cc_ring, FiniteRing,
};
use msnring::spectra::{best_spectrum, cn_matrix, msn_matrix};
use msnring::{classify, parse_ring_spec, property_suite_clique_unions, Limits, SimpleGraph};

fn err(e: msnring::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn to_py(py: Python<'_>, value: &Value) -> PyResult<Py<PyAny>> {
    let json = PyModule::import(py, "json")?;
    Ok(json.call_method1("loads", (value.to_string(),))?.unbind())
}

fn theorem(id: &str) -> PyResult<TheoremId> {
    id.parse().map_err(err)
}

/// A finite ring built from a spec such as `mat2:p=2` or `prod(ut2:p=2,zn:n=3)`.
#[pyclass(module = "pymsnring", frozen)]
struct Ring {
    spec: String,
    inner: FiniteRing,
}

#[pymethods]
impl Ring {
    #[new]
    fn new(spec: &str) -> PyResult<Self> {
        Ok(Self {
            spec: spec.to_string(),
            inner: parse_ring_spec(spec).map_err(err)?,
        })
    }

    #[getter]
    fn spec(&self) -> &str {
        &self.spec
    }

    #[getter]
    fn order(&self) -> usize {
        self.inner.order()
    }

    fn center_size(&self) -> usize {
        center(&self.inner).size()
    }

    fn is_commutative(&self) -> bool {
        self.inner.is_commutative()
    }

    /// Pr(R) as `(numerator, denominator)` in lowest terms.
    fn commuting_probability(&self) -> (u64, u64) {
        let pr = commuting_probability(&self.inner);
        (*pr.numer(), *pr.denom())
    }

    fn centralizer_count(&self) -> usize {
        centralizer_count(&self.inner)
    }

    fn is_cc_ring(&self) -> bool {
        is_cc_ring(&self.inner).is_cc_ring()
    }

    fn info(&self, py: Python<'_>) -> PyResult<Py<PyAny>> {
        let r = &self.inner;
        let value = json!({
            "ring": self.spec,
            "name": r.name(),
            "order": r.order(),
            "center_size": center(r).size(),
            "commuting_probability": commuting_probability(r).to_string(),
            "centralizer_count": centralizer_count(r),
            "cc_ring": is_cc_ring(r).is_cc_ring(),
            "quotient_type": additive_quotient_type(r),
            "unity": r.unity().map(|u| r.label(u)),
            "commutative": r.is_commutative(),
        });
        to_py(py, &value)
    }

    fn commuting_graph(&self) -> PyResult<Graph> {
        Ok(Graph {
            inner: commuting_graph(&self.inner).map_err(err)?,
        })
    }

    /// Verification report for `theorem` on this ring.
    #[pyo3(signature = (theorem_id, p=None, q=None, t=None))]
    fn verify(
        &self,
        py: Python<'_>,
        theorem_id: &str,
        p: Option<u64>,
        q: Option<u64>,
        t: Option<u64>,
    ) -> PyResult<Py<PyAny>> {
        let hint = Params {
            p,
            q,
            t,
            ..Params::default()
        };
        let report = msnring::verify_ring(&self.inner, &self.spec, theorem(theorem_id)?, &hint);
        to_py(py, &report.to_json())
    }

    fn __repr__(&self) -> String {
        format!("Ring({:?}, order={})", self.spec, self.inner.order())
    }
}

/// A simple undirected graph on vertices `0..n`.
#[pyclass(module = "pymsnring", frozen)]
struct Graph {
    inner: SimpleGraph,
}

#[pymethods]
impl Graph {
    #[new]
    #[pyo3(signature = (n, edges=Vec::new()))]
    fn new(n: usize, edges: Vec<(usize, usize)>) -> PyResult<Self> {
        Ok(Self {
            inner: SimpleGraph::from_edges(n, &edges).map_err(err)?,
        })
    }

    #[staticmethod]
    fn complete(n: usize) -> Self {
        Self {
            inner: SimpleGraph::complete(n),
        }
    }

    #[staticmethod]
    fn path(n: usize) -> Self {
        Self {
            inner: SimpleGraph::path(n),
        }
    }

    #[staticmethod]
    fn from_edge_list(text: &str) -> PyResult<Self> {
        Ok(Self {
            inner: SimpleGraph::parse_edge_list(text).map_err(err)?,
        })
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(Self {
            inner: SimpleGraph::from_json(text).map_err(err)?,
        })
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    fn edges(&self) -> Vec<(usize, usize)> {
        self.inner.edges()
    }

    fn to_edge_list(&self) -> String {
        self.inner.to_edge_list()
    }

    fn to_json(&self) -> String {
        self.inner.to_json()
    }

    fn delta2(&self) -> Vec<u64> {
        delta2_all(&self.inner)
    }

    fn msn_matrix(&self) -> Vec<Vec<i64>> {
        msn_matrix(&self.inner).rows()
    }

    fn cn_matrix(&self) -> Vec<Vec<i64>> {
        cn_matrix(&self.inner).rows()
    }

    /// `"3K6"`-style decomposition, or None when some component is not complete.
    fn clique_decomposition(&self) -> Option<String> {
        clique_decomposition(&self.inner).union().map(|u| u.to_string())
    }

    /// `{"exact": bool, "pairs": [[eigenvalue, multiplicity], ...]}`.
    #[pyo3(signature = (matrix="msn"))]
    fn spectrum(&self, py: Python<'_>, matrix: &str) -> PyResult<Py<PyAny>> {
        let m = match matrix {
            "msn" => msn_matrix(&self.inner),
            "cn" => cn_matrix(&self.inner),
            other => return Err(PyValueError::new_err(format!("unknown matrix {other:?}; use msn or cn"))),
        };
        let (spectrum, _) = best_spectrum(&m, Limits::global().exact_cap).map_err(err)?;
        to_py(py, &spectrum.to_json())
    }

    fn classify(&self, py: Python<'_>) -> PyResult<Py<PyAny>> {
        let report = classify(&self.inner).map_err(err)?;
        to_py(py, &report.to_json())
    }

    fn __repr__(&self) -> String {
        format!("Graph(n={}, edges={})", self.inner.n(), self.inner.edge_count())
    }
}

/// Admissible decompositions, spectra and energies for a theorem.
#[pyfunction]
#[pyo3(signature = (theorem_id, p=None, q=None, m=None, t=None, centralizer_sizes=None))]
fn predict(
    py: Python<'_>,
    theorem_id: &str,
    p: Option<u64>,
    q: Option<u64>,
    m: Option<u64>,
    t: Option<u64>,
    centralizer_sizes: Option<Vec<u64>>,
) -> PyResult<Py<PyAny>> {
    let params = Params {
        p,
        q,
        m,
        t,
        centralizer_sizes,
    };
    let prediction = predict_theorem(theorem(theorem_id)?, &params).map_err(err)?;
    to_py(py, &prediction.to_json())
}

#[pyfunction]
#[pyo3(signature = (theorem_id, spec, p=None, q=None, t=None))]
fn verify(
    py: Python<'_>,
    theorem_id: &str,
    spec: &str,
    p: Option<u64>,
    q: Option<u64>,
    t: Option<u64>,
) -> PyResult<Py<PyAny>> {
    Ring::new(spec)?.verify(py, theorem_id, p, q, t)
}

/// Verifies each theorem on its built-in rings over the prime grid.
#[pyfunction]
#[pyo3(signature = (theorems, ps, qs=Vec::new()))]
fn sweep(py: Python<'_>, theorems: Vec<String>, ps: Vec<u64>, qs: Vec<u64>) -> PyResult<Py<PyAny>> {
    let ids = theorems.iter().map(|t| theorem(t)).collect::<PyResult<Vec<_>>>()?;
    let reports: Vec<Value> = msnring::sweep(&ids, &ps, &qs).iter().map(|r| r.to_json()).collect();
    to_py(py, &Value::Array(reports))
}

#[pyfunction]
#[pyo3(signature = (seed=1, trials=500))]
fn property_suite(py: Python<'_>, seed: u64, trials: usize) -> PyResult<Py<PyAny>> {
    let report = py
        .detach(|| property_suite_clique_unions(seed, trials))
        .map_err(err)?;
    to_py(py, &report.to_json())
}

#[pyfunction]
fn theorems() -> Vec<&'static str> {
    TheoremId::ALL.iter().map(|t| t.as_str()).collect()
}

#[pymodule]
fn pymsnring(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Ring>()?;
    m.add_class::<Graph>()?;
    m.add_function(wrap_pyfunction!(predict, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_function(wrap_pyfunction!(sweep, m)?)?;
    m.add_function(wrap_pyfunction!(property_suite, m)?)?;
    m.add_function(wrap_pyfunction!(theorems, m)?)?;
    Ok(())
}
