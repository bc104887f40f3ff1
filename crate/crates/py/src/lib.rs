//! Python bindings for ramsey-core.
//!
//! Vertices and colors are 0-based, like the Rust API. Targets are given by
//! name ("K3", "J4", "K3e", "K5mP3", "C6"), target lists as comma-separated
//! strings or lists of names.

use std::time::Duration;

use pyo3::exceptions::{PyOSError, PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use ramsey_core::anneal::{anneal_search, AnnealOutcome, AnnealParams, DEFAULT_SEED};
use ramsey_core::canon::{are_isomorphic, canonical_form};
use ramsey_core::constructions::{clone_vertex as core_clone, figure_coloring, Figure, NamedGraphId};
use ramsey_core::detect::{coloring_is_valid, contains, count_copies, is_good};
use ramsey_core::enumerate::{enumerate_good, enumerate_levels, EnumerateOptions};
use ramsey_core::format::{emit_coloring_matrix, emit_graph6, parse_coloring_matrix, parse_graph6};
use ramsey_core::split::{encode_split_cnf, split_with, write_dimacs, Engine, SatBudget, SplitOptions};
use ramsey_core::target::parse_target_list;
use ramsey_core::verify::{verify_figure, verify_j7_arrow, verify_lemma_hex, verify_schlafli, Report};
use ramsey_core::{Error, Target};

pyo3::create_exception!(pyramsey, ResourceError, PyRuntimeError, "A search budget or size limit was exceeded.");

fn py_err(e: Error) -> PyErr {
    match e {
        Error::Resource(msg) => ResourceError::new_err(msg),
        Error::Io(e) => PyOSError::new_err(e.to_string()),
        other => PyValueError::new_err(other.to_string()),
    }
}

fn target(name: &str) -> PyResult<Target> {
    name.parse::<Target>().and_then(Target::validate).map_err(py_err)
}

#[derive(FromPyObject)]
enum Targets {
    Joined(String),
    Names(Vec<String>),
}

impl Targets {
    fn parse(self) -> PyResult<Vec<Target>> {
        match self {
            Targets::Joined(s) => parse_target_list(&s).map_err(py_err),
            Targets::Names(v) => v.iter().map(|s| target(s)).collect(),
        }
    }
}

#[pyclass(name = "Graph", module = "pyramsey", eq, frozen, skip_from_py_object)]
#[derive(Clone, PartialEq)]
struct PyGraph(ramsey_core::Graph);

#[pymethods]
impl PyGraph {
    #[new]
    #[pyo3(signature = (n, edges = Vec::new()))]
    fn new(n: usize, edges: Vec<(usize, usize)>) -> PyResult<Self> {
        ramsey_core::Graph::from_edges(n, &edges).map(PyGraph).map_err(py_err)
    }

    #[staticmethod]
    fn from_graph6(text: &str) -> PyResult<Self> {
        parse_graph6(text.trim()).map(PyGraph).map_err(py_err)
    }

    /// A named graph such as "SCHLAFLI", "J(7)", "CYCLE(6)", "CLIQUE(5)" or "TWO_K3".
    #[staticmethod]
    fn named(id: &str) -> PyResult<Self> {
        let id: NamedGraphId = id.parse().map_err(py_err)?;
        id.build().map(PyGraph).map_err(py_err)
    }

    fn to_graph6(&self) -> String {
        emit_graph6(&self.0)
    }

    #[getter]
    fn order(&self) -> usize {
        self.0.order()
    }

    fn edge_count(&self) -> usize {
        self.0.edge_count()
    }

    fn edges(&self) -> Vec<(usize, usize)> {
        self.0.edges().collect()
    }

    fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.0.order() && v < self.0.order() && self.0.has_edge(u, v)
    }

    fn degree(&self, v: usize) -> PyResult<usize> {
        if v >= self.0.order() {
            return Err(py_err(Error::VertexOutOfRange { vertex: v, order: self.0.order() }));
        }
        Ok(self.0.degree(v))
    }

    fn complement(&self) -> Self {
        PyGraph(self.0.complement())
    }

    /// Hex string equal for exactly the isomorphic graphs.
    fn canonical_key(&self) -> String {
        canonical_form(&self.0).to_hex()
    }

    fn is_isomorphic(&self, other: &PyGraph) -> bool {
        are_isomorphic(&self.0, &other.0)
    }

    fn contains(&self, target_name: &str) -> PyResult<bool> {
        Ok(contains(&self.0, target(target_name)?))
    }

    fn count_copies(&self, target_name: &str) -> PyResult<u64> {
        Ok(count_copies(&self.0, target(target_name)?))
    }

    /// No `t1` in the graph and no `t2` in its complement.
    fn is_good(&self, t1: &str, t2: &str) -> PyResult<bool> {
        Ok(is_good(&self.0, target(t1)?, target(t2)?))
    }

    fn __repr__(&self) -> String {
        format!("Graph(order={}, edges={}, graph6={:?})", self.0.order(), self.0.edge_count(), emit_graph6(&self.0))
    }
}

#[pyclass(name = "EdgeColoring", module = "pyramsey", eq, frozen, skip_from_py_object)]
#[derive(Clone, PartialEq)]
struct PyColoring(ramsey_core::EdgeColoring);

#[pymethods]
impl PyColoring {
    /// Parses the matrix text format (1-based colors, 0 on the diagonal).
    #[staticmethod]
    fn from_matrix(text: &str) -> PyResult<Self> {
        parse_coloring_matrix(text).map(PyColoring).map_err(py_err)
    }

    /// One of the embedded figure colorings, 3 or 4.
    #[staticmethod]
    fn figure(which: u8) -> PyResult<Self> {
        let f = match which {
            3 => Figure::Fig3,
            4 => Figure::Fig4,
            _ => return Err(PyValueError::new_err(format!("no figure {which}, expected 3 or 4"))),
        };
        Ok(PyColoring(figure_coloring(f)))
    }

    fn to_matrix(&self) -> String {
        emit_coloring_matrix(&self.0)
    }

    #[getter]
    fn order(&self) -> usize {
        self.0.order()
    }

    #[getter]
    fn color_count(&self) -> usize {
        self.0.color_count()
    }

    fn color(&self, u: usize, v: usize) -> PyResult<usize> {
        let n = self.0.order();
        if u >= n || v >= n || u == v {
            return Err(PyValueError::new_err(format!("no edge {{{u}, {v}}} in K{n}")));
        }
        Ok(self.0.color(u, v))
    }

    fn color_class(&self, i: usize) -> PyResult<PyGraph> {
        if i >= self.0.color_count() {
            return Err(PyValueError::new_err(format!("color {i} outside 0..{}", self.0.color_count())));
        }
        Ok(PyGraph(self.0.color_class(i)))
    }

    /// Color `i` avoids `targets[i]` for every `i`.
    fn is_valid(&self, targets: Targets) -> PyResult<bool> {
        let targets = targets.parse()?;
        if targets.len() != self.0.color_count() {
            return Err(PyValueError::new_err(format!(
                "{} targets for {} colors",
                targets.len(),
                self.0.color_count()
            )));
        }
        Ok(coloring_is_valid(&self.0, &targets).is_valid())
    }

    /// Adds a vertex copying `x` and `y`, joined to both in `link_color`.
    fn clone_vertex(&self, x: usize, y: usize, link_color: usize) -> PyResult<Self> {
        core_clone(&self.0, x, y, link_color).map(PyColoring).map_err(py_err)
    }

    fn remove_vertex(&self, v: usize) -> PyResult<Self> {
        if v >= self.0.order() {
            return Err(py_err(Error::VertexOutOfRange { vertex: v, order: self.0.order() }));
        }
        Ok(PyColoring(self.0.remove_vertex(v)))
    }

    fn __repr__(&self) -> String {
        format!("EdgeColoring(order={}, colors={})", self.0.order(), self.0.color_count())
    }
}

/// Normalized target names.
#[pyfunction]
fn parse_targets(targets: Targets) -> PyResult<Vec<String>> {
    Ok(targets.parse()?.iter().map(Target::to_string).collect())
}

/// Per-order `(n, count, min_edges, max_edges)` of the (t1, t2)-good classes;
/// the edge bounds are None for empty levels.
#[pyfunction]
#[pyo3(signature = (t1, t2, max_n, max_level_size = None))]
fn enumerate_stats(
    py: Python<'_>,
    t1: &str,
    t2: &str,
    max_n: usize,
    max_level_size: Option<usize>,
) -> PyResult<Vec<(usize, usize, Option<usize>, Option<usize>)>> {
    let (t1, t2) = (target(t1)?, target(t2)?);
    let stats = py
        .detach(|| enumerate_good(t1, t2, max_n, EnumerateOptions { max_level_size }, |_, _| Ok(())))
        .map_err(|p| py_err(p.error))?;
    Ok(stats.levels.iter().map(|l| (l.order, l.count, l.edges.map(|e| e.0), l.edges.map(|e| e.1))).collect())
}

/// The (t1, t2; n)-good classes, one representative each.
#[pyfunction]
fn good_graphs(py: Python<'_>, t1: &str, t2: &str, n: usize) -> PyResult<Vec<PyGraph>> {
    let (t1, t2) = (target(t1)?, target(t2)?);
    if n == 0 {
        return Ok(Vec::new());
    }
    let mut levels = py.detach(|| enumerate_levels(t1, t2, n)).map_err(py_err)?;
    Ok(levels.pop().unwrap_or_default().into_iter().map(PyGraph).collect())
}

fn budget(max_conflicts: Option<u64>, max_seconds: Option<f64>) -> SatBudget {
    SatBudget { max_conflicts, max_duration: max_seconds.map(Duration::from_secs_f64) }
}

/// A coloring of the graph's edges in which color `i` avoids `targets[i]`,
/// as a dict from edge to color, or None when the graph arrows the targets.
#[pyfunction]
#[pyo3(signature = (graph, targets, engine = "sat", max_conflicts = None, max_seconds = None))]
fn split(
    py: Python<'_>,
    graph: &PyGraph,
    targets: Targets,
    engine: &str,
    max_conflicts: Option<u64>,
    max_seconds: Option<f64>,
) -> PyResult<Option<Vec<((usize, usize), usize)>>> {
    let targets = targets.parse()?;
    let engine: Engine = engine.parse().map_err(py_err)?;
    let opts = SplitOptions { engine, budget: budget(max_conflicts, max_seconds) };
    let g = graph.0.clone();
    let w = py.detach(|| split_with(&g, &targets, &opts)).map_err(py_err)?;
    Ok(w.map(|w| w.edges.iter().zip(&w.colors).map(|(&e, &c)| (e, c as usize)).collect()))
}

/// Every coloring of the graph's edges has color `i` containing `targets[i]`.
#[pyfunction]
#[pyo3(signature = (graph, targets, engine = "sat"))]
fn arrows(py: Python<'_>, graph: &PyGraph, targets: Targets, engine: &str) -> PyResult<bool> {
    Ok(split(py, graph, targets, engine, None, None)?.is_none())
}

/// DIMACS text of the formula satisfiable exactly when the graph splits
/// into a `t_false`-free and a `t_true`-free part.
#[pyfunction]
fn split_cnf(graph: &PyGraph, t_false: &str, t_true: &str) -> PyResult<String> {
    Ok(write_dimacs(&encode_split_cnf(&graph.0, target(t_false)?, target(t_true)?)))
}

/// Simulated annealing over colorings of `K_n`. Returns the coloring found,
/// or None with the lowest energy reached.
#[pyfunction]
#[pyo3(signature = (n, targets, seed = DEFAULT_SEED, restarts = 20, max_sweeps = 3000, initial_temperature = 2.0, cooling = 0.997))]
#[allow(clippy::too_many_arguments)]
fn anneal(
    py: Python<'_>,
    n: usize,
    targets: Targets,
    seed: u64,
    restarts: usize,
    max_sweeps: usize,
    initial_temperature: f64,
    cooling: f64,
) -> PyResult<(Option<PyColoring>, u64)> {
    let targets = targets.parse()?;
    let params = AnnealParams { seed, restarts, max_sweeps, initial_temperature, cooling, ..AnnealParams::default() };
    match py.detach(|| anneal_search(n, &targets, &params)).map_err(py_err)? {
        AnnealOutcome::Found { coloring, .. } => Ok((Some(PyColoring(coloring)), 0)),
        AnnealOutcome::NotFound { best_energy, .. } => Ok((None, best_energy)),
    }
}

/// Runs a named check ("lemma-hex", "j7-arrow", "figure3", "figure4",
/// "schlafli") and returns `(passed, report_text)`.
#[pyfunction]
fn verify(py: Python<'_>, check: &str) -> PyResult<(bool, String)> {
    let check = check.to_string();
    let report: Report = py
        .detach(|| match check.as_str() {
            "lemma-hex" => Ok(verify_lemma_hex()),
            "j7-arrow" => Ok(verify_j7_arrow()),
            "figure3" => Ok(verify_figure(Figure::Fig3)),
            "figure4" => Ok(verify_figure(Figure::Fig4)),
            "schlafli" => verify_schlafli(SatBudget::default()),
            other => Err(Error::Precondition(format!("unknown check {other:?}"))),
        })
        .map_err(py_err)?;
    Ok((report.passed, report.to_string()))
}

#[pymodule]
fn pyramsey(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGraph>()?;
    m.add_class::<PyColoring>()?;
    m.add("ResourceError", m.py().get_type::<ResourceError>())?;
    m.add("DEFAULT_SEED", DEFAULT_SEED)?;
    m.add_function(wrap_pyfunction!(parse_targets, m)?)?;
    m.add_function(wrap_pyfunction!(enumerate_stats, m)?)?;
    m.add_function(wrap_pyfunction!(good_graphs, m)?)?;
    m.add_function(wrap_pyfunction!(split, m)?)?;
    m.add_function(wrap_pyfunction!(arrows, m)?)?;
    m.add_function(wrap_pyfunction!(split_cnf, m)?)?;
    m.add_function(wrap_pyfunction!(anneal, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    Ok(())
}
