//! Python bindings: posets, grids and transfers, Betti diagrams of functors
//! and tame functors given as JSON, and pipeline runs.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use realtame_core::homalg::{betti_koszul_diagram, betti_resolution, tame_betti};
use realtame_core::io::{betti_json, load_pipeline_config, FunctorJson, PipelineOutputJson, PosetJson, TameJson};
use realtame_core::pipeline::pipeline_run;
use realtame_core::poset::{CoverPolicy, Poset};
use realtame_core::realisation::{parse_rational, Grid, GridSpec, RealPoint};
use realtame_core::transfer::tame::GridTransfer;
use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;

fn err(e: realtame_core::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

#[pyclass(name = "Poset", module = "realtame", frozen)]
struct PyPoset {
    inner: Arc<Poset>,
}

#[pymethods]
impl PyPoset {
    #[new]
    fn new(elements: Vec<String>, covers: Vec<(String, String)>) -> PyResult<Self> {
        let inner = Poset::new(&elements, &covers, CoverPolicy::Reject).map_err(err)?;
        Ok(PyPoset { inner: Arc::new(inner) })
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        let j: PosetJson = serde_json::from_str(text).map_err(|e| err(e.into()))?;
        Ok(PyPoset { inner: Arc::new(j.to_poset().map_err(err)?) })
    }

    fn elements(&self) -> Vec<String> {
        self.inner.names().to_vec()
    }

    fn covers(&self) -> Vec<(String, String)> {
        let p = &self.inner;
        p.covers().into_iter().map(|(x, y)| (p.name(x).to_string(), p.name(y).to_string())).collect()
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn leq(&self, x: &str, y: &str) -> PyResult<bool> {
        let p = &self.inner;
        Ok(p.leq(p.index_of(x).map_err(err)?, p.index_of(y).map_err(err)?))
    }

    fn is_upper_semilattice(&self) -> bool {
        self.inner.is_upper_semilattice()
    }

    fn is_distributive(&self) -> PyResult<bool> {
        self.inner.is_distributive().map_err(err)
    }

    fn is_consistent(&self) -> bool {
        self.inner.is_consistent()
    }

    fn dim(&self, x: &str) -> PyResult<usize> {
        self.inner.dim(self.inner.index_of(x).map_err(err)?).map_err(err)
    }

    fn par_dim(&self, x: &str) -> PyResult<usize> {
        self.inner.par_dim(self.inner.index_of(x).map_err(err)?).map_err(err)
    }

    fn to_dot(&self) -> String {
        realtame_core::io::to_dot(&self.inner)
    }
}

#[pyclass(name = "Grid", module = "realtame", frozen)]
struct PyGrid {
    inner: Grid,
}

#[pymethods]
impl PyGrid {
    /// Points over all elements, or over the down-set of `d`, with values `V`
    /// given as strings such as `"-1/2"`.
    #[new]
    #[pyo3(signature = (poset, values, d = None))]
    fn new(poset: &PyPoset, values: Vec<String>, d: Option<String>) -> PyResult<Self> {
        let v = values.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>, _>>().map_err(err)?;
        let base = poset.inner.clone();
        let spec = match d {
            Some(d) => GridSpec::principal(base.clone(), base.index_of(&d).map_err(err)?, v),
            None => GridSpec::full(base, v),
        }
        .map_err(err)?;
        Ok(PyGrid { inner: Grid::build(spec).map_err(err)? })
    }

    fn points(&self) -> Vec<String> {
        self.inner.poset.names().to_vec()
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn poset(&self) -> PyPoset {
        PyPoset { inner: self.inner.poset.clone() }
    }

    /// The largest grid point below `point`, or `None` for minus infinity.
    fn transfer(&self, point: &str) -> PyResult<Option<String>> {
        let base = self.inner.base();
        let p = RealPoint::parse(base, point).map_err(err)?;
        let t = GridTransfer::new(&self.inner.spec).map_err(err)?;
        Ok(t.apply(&p).map(|q| q.encode(base)))
    }
}

/// `beta^degree` of a functor given as JSON, by `"koszul"` or `"resolution"`.
#[pyfunction]
#[pyo3(signature = (functor_json, degree, method = "koszul"))]
fn functor_betti(functor_json: &str, degree: usize, method: &str) -> PyResult<BTreeMap<String, usize>> {
    let j: FunctorJson = serde_json::from_str(functor_json).map_err(|e| err(e.into()))?;
    let f = j.to_functor().map_err(err)?;
    let betti = match method {
        "koszul" => betti_koszul_diagram(&f, degree),
        "resolution" => betti_resolution(&f, degree),
        other => return Err(PyValueError::new_err(format!("unknown method {other}"))),
    }
    .map_err(err)?;
    Ok(betti_json(f.poset(), &betti))
}

/// `beta^degree` of a tame functor given as JSON.
#[pyfunction(name = "tame_betti")]
fn py_tame_betti(tame_json: &str, degree: usize) -> PyResult<BTreeMap<String, usize>> {
    let j: TameJson = serde_json::from_str(tame_json).map_err(|e| err(e.into()))?;
    let t = j.to_tame().map_err(err)?;
    Ok(betti_json(&t.grid.poset, &tame_betti(&t, degree).map_err(err)?))
}

/// Runs the pipeline described by a config file and returns its JSON output.
#[pyfunction]
fn run_pipeline(config_path: &str) -> PyResult<String> {
    let config = load_pipeline_config(Path::new(config_path)).map_err(err)?;
    let out = pipeline_run(&config).map_err(err)?;
    serde_json::to_string_pretty(&PipelineOutputJson::new(&config, &out)).map_err(|e| err(e.into()))
}

#[pymodule]
fn realtame(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyPoset>()?;
    m.add_class::<PyGrid>()?;
    m.add_function(wrap_pyfunction!(functor_betti, m)?)?;
    m.add_function(wrap_pyfunction!(py_tame_betti, m)?)?;
    m.add_function(wrap_pyfunction!(run_pipeline, m)?)?;
    Ok(())
}
