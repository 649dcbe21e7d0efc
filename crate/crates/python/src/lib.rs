//! Python bindings for the `dchordal` crate.
//!
//! Vertices are 0-based integers on both sides. Functions that can fail on
//! bad input raise `ValueError`.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use dchordal::generators::{self, Family, GenSpec};
use dchordal::properties::{check_property as check, Property};
use dchordal::{io, oracle, recognition, structure, Coloring, ThreeColoring};

fn value_error(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

#[pyclass(name = "Graph", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyGraph {
    inner: dchordal::Graph,
}

#[pymethods]
impl PyGraph {
    #[new]
    #[pyo3(signature = (n, edges = Vec::new()))]
    fn new(n: usize, edges: Vec<(usize, usize)>) -> PyResult<Self> {
        let inner = dchordal::Graph::from_edges(n, edges).map_err(value_error)?;
        Ok(PyGraph { inner })
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    #[getter]
    fn m(&self) -> usize {
        self.inner.m()
    }

    fn edges(&self) -> Vec<(usize, usize)> {
        self.inner.edges().collect()
    }

    fn neighbors(&self, v: usize) -> PyResult<Vec<usize>> {
        if v >= self.inner.n() {
            return Err(value_error(format!("vertex {v} out of range")));
        }
        Ok(self.inner.neighbors(v).to_vec())
    }

    fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.inner.n() && v < self.inner.n() && self.inner.has_edge(u, v)
    }

    fn is_connected(&self) -> bool {
        self.inner.is_connected()
    }

    fn __len__(&self) -> usize {
        self.inner.n()
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.inner == other.inner
    }

    fn __repr__(&self) -> String {
        format!("Graph(n={}, m={})", self.inner.n(), self.inner.m())
    }
}

fn wrap(inner: dchordal::Graph) -> PyGraph {
    PyGraph { inner }
}

#[pyfunction]
fn parse_dimacs(text: &str) -> PyResult<PyGraph> {
    io::parse_dimacs(text).map(wrap).map_err(value_error)
}

#[pyfunction]
fn write_dimacs(g: &PyGraph) -> String {
    io::write_dimacs(&g.inner)
}

// Vec<u8> would cross over as bytes
fn as_ints(c: &Coloring) -> Vec<u32> {
    c.colors().iter().map(|&k| u32::from(k)).collect()
}

/// Returns `(verdict, colors)` with verdict one of "colorable",
/// "not_3_colorable", "not_applicable"; colors (values 1..=3) only on
/// success.
#[pyfunction]
#[pyo3(signature = (g, checked = true))]
fn three_color(g: &PyGraph, checked: bool) -> PyResult<(&'static str, Option<Vec<u32>>)> {
    let out = dchordal::three_color_components(&g.inner, checked).map_err(value_error)?;
    Ok(match out {
        ThreeColoring::Colored(c) => ("colorable", Some(as_ints(&c))),
        ThreeColoring::NotThreeColorable { .. } => ("not_3_colorable", None),
        ThreeColoring::NotApplicable { .. } => ("not_applicable", None),
    })
}

#[pyfunction]
fn validate_coloring(g: &PyGraph, colors: Vec<u8>, k: u8) -> bool {
    dchordal::validate_coloring(&g.inner, &Coloring::new(colors), k)
}

/// `(order, max_neighbour)` or `None` if the graph is not dually chordal.
#[pyfunction]
fn find_mno(g: &PyGraph) -> PyResult<Option<(Vec<usize>, Vec<usize>)>> {
    let mno = recognition::find_mno(&g.inner).map_err(value_error)?;
    Ok(mno.map(|m| (m.order, m.witness)))
}

#[pyfunction]
fn is_dually_chordal(g: &PyGraph) -> PyResult<bool> {
    recognition::is_dually_chordal(&g.inner).map_err(value_error)
}

/// Parent array of a compatible spanning tree, or `None`.
#[pyfunction]
fn compatible_tree(g: &PyGraph) -> PyResult<Option<Vec<Option<usize>>>> {
    let Some(mno) = recognition::find_mno(&g.inner).map_err(value_error)? else {
        return Ok(None);
    };
    let t = recognition::build_compatible_tree(&g.inner, &mno).map_err(value_error)?;
    Ok(Some(t.parents().to_vec()))
}

/// Vertex sets of the biconnected blocks.
#[pyfunction]
fn blocks(g: &PyGraph) -> PyResult<Vec<Vec<usize>>> {
    let d = structure::blocks(&g.inner).map_err(value_error)?;
    Ok(d.blocks.into_iter().map(|b| b.vertices).collect())
}

#[pyfunction]
fn is_locally_connected(g: &PyGraph) -> bool {
    structure::is_locally_connected(&g.inner).0
}

#[pyfunction]
fn blocks_locally_connected(g: &PyGraph) -> PyResult<bool> {
    structure::blocks_locally_connected(&g.inner).map_err(value_error)
}

#[pyfunction]
fn find_k4(g: &PyGraph) -> Option<[usize; 4]> {
    structure::find_k4(&g.inner)
}

#[pyfunction]
fn brute_force_k_colorable(g: &PyGraph, k: usize) -> PyResult<Option<Vec<u32>>> {
    let c = oracle::brute_force_k_colorable(&g.inner, k).map_err(value_error)?;
    Ok(c.as_ref().map(as_ints))
}

#[pyfunction]
fn reduce_3col_to_4col(g: &PyGraph) -> PyGraph {
    wrap(generators::reduce_3col_to_4col(&g.inner))
}

/// `family` is one of "dually-chordal", "k4-free-dually-chordal",
/// "locally-connected-blocks", "connected-random".
#[pyfunction]
#[pyo3(signature = (family, n, density = 0.5, seed = 0))]
fn generate(family: &str, n: usize, density: f64, seed: u64) -> PyResult<PyGraph> {
    let family = Family::from_name(family).ok_or_else(|| value_error(format!("unknown family {family:?}")))?;
    generators::generate(&GenSpec::new(family, n, density, seed))
        .map(wrap)
        .map_err(value_error)
}

/// `(applicable, holds, details_json)` for a property named as on the
/// command line.
#[pyfunction]
fn check_property(g: &PyGraph, property: &str) -> PyResult<(bool, bool, String)> {
    let p = Property::from_name(property).ok_or_else(|| value_error(format!("unknown property {property:?}")))?;
    let r = check(&g.inner, p).map_err(value_error)?;
    Ok((r.applicable, r.holds, r.details.to_string()))
}

#[pymodule]
fn dchordal_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGraph>()?;
    m.add_function(wrap_pyfunction!(parse_dimacs, m)?)?;
    m.add_function(wrap_pyfunction!(write_dimacs, m)?)?;
    m.add_function(wrap_pyfunction!(three_color, m)?)?;
    m.add_function(wrap_pyfunction!(validate_coloring, m)?)?;
    m.add_function(wrap_pyfunction!(find_mno, m)?)?;
    m.add_function(wrap_pyfunction!(is_dually_chordal, m)?)?;
    m.add_function(wrap_pyfunction!(compatible_tree, m)?)?;
    m.add_function(wrap_pyfunction!(blocks, m)?)?;
    m.add_function(wrap_pyfunction!(is_locally_connected, m)?)?;
    m.add_function(wrap_pyfunction!(blocks_locally_connected, m)?)?;
    m.add_function(wrap_pyfunction!(find_k4, m)?)?;
    m.add_function(wrap_pyfunction!(brute_force_k_colorable, m)?)?;
    m.add_function(wrap_pyfunction!(reduce_3col_to_4col, m)?)?;
    m.add_function(wrap_pyfunction!(generate, m)?)?;
    m.add_function(wrap_pyfunction!(check_property, m)?)?;
    Ok(())
}
