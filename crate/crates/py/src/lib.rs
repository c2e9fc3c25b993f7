//! Python bindings: graphs, band functions, full analysis reports and the
//! torus oracle.

use std::f64::consts::PI;

use bandcert::analysis::{analyze as run_analysis, certify, verify as run_verify, AnalysisOptions};
use bandcert::estimates;
use bandcert::floquet;
use bandcert::graph::{self, FundamentalGraph, BUILTIN_NAMES};
use bandcert::interval::{Interval, IntervalSet};
use bandcert::oracle;
use bandcert::report::{render_text, SpectrumReport};
use bandcert::spectrum::{BandOptions, DEFAULT_FLAT_TOL};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::{PyComplex, PyType};

fn err(e: bandcert::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// Fundamental cell of a ℤ^d-periodic graph.
#[pyclass(name = "Graph", module = "bandcert", frozen)]
struct PyGraph {
    inner: FundamentalGraph,
    label: String,
}

#[pymethods]
impl PyGraph {
    #[new]
    #[pyo3(signature = (dim, vertices, edges))]
    fn new(dim: usize, vertices: Vec<String>, edges: Vec<(usize, usize, Vec<i64>)>) -> PyResult<Self> {
        let inner = FundamentalGraph::new(dim, vertices, edges).map_err(err)?;
        Ok(Self { inner, label: "<graph>".into() })
    }

    #[classmethod]
    fn builtin(_cls: &Bound<'_, PyType>, name: &str) -> PyResult<Self> {
        Ok(Self { inner: graph::builtin(name).map_err(err)?, label: name.to_string() })
    }

    /// Parses the text graph format.
    #[classmethod]
    fn parse(_cls: &Bound<'_, PyType>, text: &str) -> PyResult<Self> {
        Ok(Self { inner: graph::parse_graph(text).map_err(err)?, label: "<text>".into() })
    }

    #[getter]
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    #[getter]
    fn num_vertices(&self) -> usize {
        self.inner.num_vertices()
    }

    #[getter]
    fn vertices(&self) -> Vec<String> {
        self.inner.vertices().to_vec()
    }

    #[getter]
    fn edges(&self) -> Vec<(usize, usize, Vec<i64>)> {
        self.inner.edges().iter().map(|e| (e.j, e.k, e.tau.clone())).collect()
    }

    #[getter]
    fn degrees(&self) -> Vec<usize> {
        self.inner.degrees().to_vec()
    }

    #[getter]
    fn bridge_degrees(&self) -> Vec<usize> {
        self.inner.bridge_degrees().to_vec()
    }

    /// β as `(numerator, denominator)`.
    fn beta(&self) -> (i64, i64) {
        let b = graph::compute_beta(&self.inner).0;
        (*b.numer(), *b.denom())
    }

    fn is_connected(&self) -> bool {
        graph::check_connected(&self.inner).is_ok()
    }

    fn is_loop_graph(&self) -> bool {
        graph::is_loop_graph(&self.inner)
    }

    fn precise_point(&self) -> PyResult<Option<Vec<f64>>> {
        if !graph::is_loop_graph(&self.inner) {
            return Ok(None);
        }
        graph::find_precise_point(&self.inner).map_err(err)
    }

    fn is_bipartite(&self) -> bool {
        graph::is_bipartite_periodic(&self.inner).is_some()
    }

    fn to_text(&self) -> String {
        self.inner.to_text()
    }

    fn __repr__(&self) -> String {
        format!("Graph({}, dim={}, vertices={})", self.label, self.inner.dim(), self.inner.num_vertices())
    }
}

/// Analysis report; `to_json()` is the full record.
#[pyclass(name = "Report", module = "bandcert", frozen)]
struct PyReport {
    inner: SpectrumReport,
}

fn pairs(v: &[Interval]) -> Vec<(f64, f64)> {
    v.iter().map(|i| (i.lo, i.hi)).collect()
}

#[pymethods]
impl PyReport {
    #[getter]
    fn beta(&self) -> String {
        self.inner.beta.clone()
    }

    #[getter]
    fn all_passed(&self) -> bool {
        self.inner.all_passed
    }

    #[getter]
    fn bands(&self) -> Vec<(f64, f64)> {
        self.inner.discrete_bands.iter().map(|b| (b.lo, b.hi)).collect()
    }

    #[getter]
    fn flat_bands(&self) -> Vec<f64> {
        self.inner.discrete_flat_bands.iter().map(|f| f.value).collect()
    }

    #[getter]
    fn spectrum(&self) -> Vec<(f64, f64)> {
        pairs(&self.inner.discrete_spectrum)
    }

    #[getter]
    fn omega_spectrum(&self) -> Vec<(f64, f64)> {
        pairs(&self.inner.omega_spectrum)
    }

    #[getter]
    fn omega_gaps(&self) -> Vec<(f64, f64)> {
        self.inner.omega_gaps.iter().map(|g| (g.lo, g.hi)).collect()
    }

    #[getter]
    fn omega_flat_bands(&self) -> Vec<f64> {
        self.inner.omega_flat_bands.iter().map(|f| f.value).collect()
    }

    #[getter]
    fn energy_gaps(&self) -> Vec<(f64, f64)> {
        self.inner.energy_spectrum.gaps.iter().map(|g| (g.lo, g.hi)).collect()
    }

    /// `(name, status)` for every check.
    #[getter]
    fn checks(&self) -> Vec<(String, String)> {
        self.inner
            .certification
            .checks
            .iter()
            .map(|c| {
                let s = match c.status {
                    estimates::CheckStatus::Pass => "pass",
                    estimates::CheckStatus::Fail => "fail",
                    estimates::CheckStatus::Skipped => "skipped",
                };
                (c.name.clone(), s.to_string())
            })
            .collect()
    }

    #[getter]
    fn warnings(&self) -> Vec<String> {
        self.inner.warnings.clone()
    }

    fn to_json(&self) -> String {
        self.inner.to_json()
    }

    fn to_text(&self) -> String {
        render_text(&self.inner)
    }

    fn __repr__(&self) -> String {
        format!("Report({}, beta={}, all_passed={})", self.inner.input, self.inner.beta, self.inner.all_passed)
    }
}

fn options(grid: Option<usize>, flat_tol: f64, z_max: f64, e_max: f64) -> AnalysisOptions {
    AnalysisOptions { bands: BandOptions { grid, flat_tol, ..BandOptions::default() }, z_max, e_max }
}

/// Classifies, computes all spectra and certifies every estimate.
#[pyfunction]
#[pyo3(signature = (g, grid=None, flat_tol=DEFAULT_FLAT_TOL, z_max=4.0 * PI, e_max=16.0 * PI * PI))]
fn analyze(py: Python<'_>, g: &PyGraph, grid: Option<usize>, flat_tol: f64, z_max: f64, e_max: f64) -> PyResult<PyReport> {
    let opts = options(grid, flat_tol, z_max, e_max);
    let inner = py
        .detach(|| {
            let a = run_analysis(g.inner.clone(), &opts)?;
            let c = certify(&a)?;
            Ok(SpectrumReport::new(g.label.clone(), &a, c))
        })
        .map_err(err)?;
    Ok(PyReport { inner })
}

/// [`analyze`] plus the torus oracle and the seeded random preimage suite.
#[pyfunction]
#[pyo3(signature = (g, oracle_n=None, seed=0, grid=None, flat_tol=DEFAULT_FLAT_TOL))]
fn verify(py: Python<'_>, g: &PyGraph, oracle_n: Option<usize>, seed: u64, grid: Option<usize>, flat_tol: f64) -> PyResult<PyReport> {
    let opts = options(grid, flat_tol, 4.0 * PI, 16.0 * PI * PI);
    let inner = py
        .detach(|| {
            let a = run_analysis(g.inner.clone(), &opts)?;
            let c = run_verify(&a, oracle_n, seed)?;
            Ok(SpectrumReport::new(g.label.clone(), &a, c))
        })
        .map_err(err)?;
    Ok(PyReport { inner })
}

/// Ascending eigenvalues of the fiber matrix at `theta`.
#[pyfunction]
fn band_values(g: &PyGraph, theta: Vec<f64>) -> PyResult<Vec<f64>> {
    Ok(floquet::band_values(&g.inner, &theta).map_err(err)?.lambdas)
}

/// Fiber matrix at `theta` as nested lists of complex numbers.
#[pyfunction]
fn fiber_matrix<'py>(py: Python<'py>, g: &PyGraph, theta: Vec<f64>) -> PyResult<Vec<Vec<Bound<'py, PyComplex>>>> {
    let m = floquet::fiber_matrix(&g.inner, &theta).map_err(err)?;
    Ok((0..m.size)
        .map(|j| (0..m.size).map(|k| PyComplex::from_doubles(py, m.get(j, k).re, m.get(j, k).im)).collect())
        .collect())
}

/// Sorted spectrum of the finite torus with `n` cells per dimension.
#[pyfunction]
fn torus_eigenvalues(py: Python<'_>, g: &PyGraph, n: usize) -> PyResult<Vec<f64>> {
    py.detach(|| oracle::torus_eigenvalues(&g.inner, n)).map_err(err)
}

/// Largest deviation between torus and Floquet multisets.
#[pyfunction]
fn compare_with_floquet(py: Python<'_>, g: &PyGraph, n: usize) -> PyResult<f64> {
    py.detach(|| oracle::compare_with_floquet(&g.inner, n)).map_err(err)
}

/// |φ⁻¹(S)| for a union of intervals in [−1, 1].
#[pyfunction]
fn preimage_measure(intervals: Vec<(f64, f64)>) -> PyResult<f64> {
    let s = IntervalSet::from_intervals(intervals.into_iter().map(|(a, b)| Interval::new(a, b)), 0.0);
    estimates::preimage_measure(&s).map_err(err)
}

/// `(lambda_star, z_star)` of the symmetric set of measure `m`.
#[pyfunction]
fn star_set(m: f64) -> PyResult<(f64, f64)> {
    let s = estimates::star_set(m).map_err(err)?;
    Ok((s.lambda_star, s.z_star))
}

#[pyfunction]
fn builtin_names() -> Vec<&'static str> {
    BUILTIN_NAMES.to_vec()
}

#[pymodule(name = "bandcert")]
fn bandcert_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGraph>()?;
    m.add_class::<PyReport>()?;
    m.add_function(wrap_pyfunction!(analyze, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_function(wrap_pyfunction!(band_values, m)?)?;
    m.add_function(wrap_pyfunction!(fiber_matrix, m)?)?;
    m.add_function(wrap_pyfunction!(torus_eigenvalues, m)?)?;
    m.add_function(wrap_pyfunction!(compare_with_floquet, m)?)?;
    m.add_function(wrap_pyfunction!(preimage_measure, m)?)?;
    m.add_function(wrap_pyfunction!(star_set, m)?)?;
    m.add_function(wrap_pyfunction!(builtin_names, m)?)?;
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    Ok(())
}
