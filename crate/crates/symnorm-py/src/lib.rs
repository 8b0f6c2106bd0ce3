//! Python bindings: thin wrappers over the core types plus JSON-string
//! entry points for the report-shaped results.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyModule;

use symnorm::bundle::PLFunction;
use symnorm::cli::{run, JobSpec};
use symnorm::fan::Fan;
use symnorm::json as jsonio;
use symnorm::lattice::MVec;
use symnorm::normality;
use symnorm::rat::parse_rat;
use symnorm::roots::{RestrictedRootSystem, SphericalLattice, WeylGroup};
use symnorm::split::{self, SplitAlgorithm};
use symnorm::{catalog, Caps};

fn err<E: std::fmt::Display>(e: E) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn parse_mvec(coords: Vec<String>) -> PyResult<MVec> {
    let mut out = Vec::with_capacity(coords.len());
    for c in coords {
        out.push(parse_rat(&c).map_err(err)?);
    }
    Ok(MVec(out))
}

fn mvec_strings(m: &MVec) -> Vec<String> {
    m.0.iter().map(|x| x.to_string()).collect()
}

#[pyclass(name = "RootSystem")]
struct PyRootSystem {
    inner: RestrictedRootSystem,
    weyl: WeylGroup,
}

#[pymethods]
impl PyRootSystem {
    #[new]
    fn new(label: &str) -> PyResult<Self> {
        let inner = RestrictedRootSystem::from_label(label).map_err(err)?;
        let weyl = inner.generate_weyl_group(&Caps::default()).map_err(err)?;
        Ok(PyRootSystem { inner, weyl })
    }

    #[getter]
    fn rank(&self) -> usize {
        self.inner.rank
    }

    fn weyl_order(&self) -> usize {
        self.weyl.order()
    }

    fn is_dominant(&self, coords: Vec<String>) -> PyResult<bool> {
        self.inner.is_dominant(&parse_mvec(coords)?).map_err(err)
    }

    fn is_regular(&self, coords: Vec<String>) -> PyResult<bool> {
        self.inner.is_regular(&parse_mvec(coords)?).map_err(err)
    }

    fn dotted_coords(&self, coords: Vec<String>) -> PyResult<Vec<String>> {
        let dotted = self.inner.dotted_coords(&parse_mvec(coords)?).map_err(err)?;
        Ok(dotted.iter().map(|x| x.to_string()).collect())
    }

    fn __repr__(&self) -> String {
        format!("RootSystem({}, |W|={})", self.inner.label, self.weyl.order())
    }
}

#[pyclass(name = "Fan", from_py_object)]
#[derive(Clone)]
struct PyFan {
    inner: Fan,
}

#[pymethods]
impl PyFan {
    /// Builds a catalog fan: chamber, blowup2, ex1, ex1b, ex2b, ex3_1, ex3_2.
    #[staticmethod]
    #[pyo3(signature = (name, *params))]
    fn catalog(name: &str, params: Vec<i64>) -> PyResult<Self> {
        Ok(PyFan { inner: catalog::fan_by_name(name, &params).map_err(err)? })
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        let dto: jsonio::FanDto = serde_json::from_str(text).map_err(err)?;
        Ok(PyFan { inner: jsonio::fan_from_dto(&dto, true).map_err(err)? })
    }

    fn to_json(&self) -> PyResult<String> {
        let v = jsonio::fan_to_value(&self.inner).map_err(err)?;
        Ok(v.to_string())
    }

    #[getter]
    fn rank(&self) -> usize {
        self.inner.rank
    }

    fn rays(&self) -> Vec<Vec<i64>> {
        self.inner
            .rays
            .iter()
            .map(|r| r.0.iter().map(|x| i64::try_from(x.clone()).unwrap_or(0)).collect())
            .collect()
    }

    fn max_cones(&self) -> Vec<Vec<usize>> {
        self.inner.max_cones.clone()
    }

    fn is_smooth(&self) -> PyResult<bool> {
        self.inner.is_smooth().map_err(err)
    }

    fn is_proper_over_orthant(&self) -> PyResult<bool> {
        self.inner.is_proper_over_orthant().map_err(err)
    }

    fn star_subdivision(&self, face: Vec<usize>) -> PyResult<PyFan> {
        Ok(PyFan { inner: self.inner.star_subdivision(&face).map_err(err)? })
    }

    fn symmetrize(&self, rs: &PyRootSystem) -> PyResult<PyFan> {
        Ok(PyFan { inner: self.inner.symmetrize(&rs.weyl).map_err(err)? })
    }

    fn __repr__(&self) -> String {
        format!(
            "Fan(rank={}, rays={}, max_cones={})",
            self.inner.rank,
            self.inner.rays.len(),
            self.inner.max_cones.len()
        )
    }
}

#[pyclass(name = "Bundle", from_py_object)]
#[derive(Clone)]
struct PyBundle {
    inner: PLFunction,
}

fn lattice_for(fan: &Fan, rs: Option<&PyRootSystem>) -> SphericalLattice {
    match rs {
        Some(r) => SphericalLattice::default_for(&r.inner),
        None => SphericalLattice::standard(fan.rank),
    }
}

#[pymethods]
impl PyBundle {
    /// Ray values in the canonical ray order; exact rationals as strings or
    /// integers.
    #[new]
    #[pyo3(signature = (fan, values, root=None))]
    fn new(fan: &PyFan, values: Vec<String>, root: Option<&PyRootSystem>) -> PyResult<Self> {
        let vals = values
            .iter()
            .map(|s| parse_rat(s))
            .collect::<symnorm::Result<Vec<_>>>()
            .map_err(err)?;
        let lattice = lattice_for(&fan.inner, root);
        Ok(PyBundle {
            inner: PLFunction::from_ray_values(&fan.inner, vals, lattice).map_err(err)?,
        })
    }

    fn ray_values(&self) -> Vec<String> {
        self.inner.ray_values.iter().map(|x| x.to_string()).collect()
    }

    fn linear_parts(&self) -> Vec<Vec<String>> {
        self.inner.linear_parts.iter().map(mvec_strings).collect()
    }

    fn is_convex(&self) -> bool {
        self.inner.is_convex()
    }

    fn is_strictly_convex(&self) -> bool {
        self.inner.is_strictly_convex()
    }

    #[pyo3(signature = (root=None))]
    fn status(&self, root: Option<&PyRootSystem>) -> PyResult<(bool, bool)> {
        let st = self.inner.status(root.map(|r| &r.inner)).map_err(err)?;
        Ok((st.gg, st.ample))
    }

    fn q_vertices(&self) -> PyResult<Vec<Vec<String>>> {
        let q = symnorm::polyhedra::polyhedron_q(&self.inner).map_err(err)?;
        Ok(q.vertex_set(&Caps::default()).map_err(err)?.iter().map(mvec_strings).collect())
    }

    fn p_lattice_points(&self, root: &PyRootSystem) -> PyResult<Vec<Vec<String>>> {
        let hc = self.inner.weyl_extend(&root.weyl).map_err(err)?;
        let p = symnorm::polyhedra::polytope_p(&hc).map_err(err)?;
        let pts = p.lattice_points(&Caps::default()).map_err(err)?;
        Ok(pts.points.iter().map(mvec_strings).collect())
    }

    fn __repr__(&self) -> String {
        format!("Bundle(rank={}, rays={})", self.inner.rank(), self.inner.fan.rays.len())
    }
}

/// Open-side multiplication check; returns (verdict, points_checked).
#[pyfunction]
fn check_open(h: &PyBundle, k: &PyBundle) -> PyResult<(String, usize)> {
    let rep = normality::check_sum_open(&h.inner, &k.inner, &Caps::default()).map_err(err)?;
    Ok((jsonio::verdict_str(rep.verdict).to_string(), rep.points_checked))
}

/// Complete-side multiplication check over the Weyl-symmetrized fan.
#[pyfunction]
fn check_complete(h: &PyBundle, k: &PyBundle, rs: &PyRootSystem) -> PyResult<(String, usize)> {
    let rep = normality::check_sum_complete(
        &h.inner,
        &k.inner,
        &rs.inner,
        &rs.weyl,
        None,
        &Caps::default(),
    )
    .map_err(err)?;
    Ok((jsonio::verdict_str(rep.verdict).to_string(), rep.points_checked))
}

/// Runs both checks; returns (open_verdict, complete_verdict, agree).
#[pyfunction]
fn check_equivalence(
    h: &PyBundle,
    k: &PyBundle,
    rs: &PyRootSystem,
) -> PyResult<(String, String, bool)> {
    let rep = normality::check_equivalence(
        &h.inner,
        &k.inner,
        &rs.inner,
        &rs.weyl,
        None,
        &Caps::default(),
    )
    .map_err(err)?;
    Ok((
        jsonio::verdict_str(rep.open.verdict).to_string(),
        jsonio::verdict_str(rep.complete.verdict).to_string(),
        rep.agree,
    ))
}

/// Constructive split of a lattice point; returns (m1, m2, trace).
#[pyfunction]
#[pyo3(signature = (h, m, algorithm="auto", k=None))]
fn split_point(
    h: &PyBundle,
    m: Vec<String>,
    algorithm: &str,
    k: Option<&PyBundle>,
) -> PyResult<(Vec<String>, Vec<String>, Vec<String>)> {
    let alg = match algorithm {
        "blowup" => SplitAlgorithm::Blowup,
        "chain" => SplitAlgorithm::Chain,
        "dim2" => SplitAlgorithm::Dim2,
        "simplex3" => SplitAlgorithm::Simplex3,
        "zn" => SplitAlgorithm::Zn,
        "auto" => SplitAlgorithm::Auto,
        other => return Err(PyValueError::new_err(format!("unknown algorithm {other:?}"))),
    };
    let w = split::split(
        alg,
        &h.inner,
        k.map(|b| &b.inner),
        &parse_mvec(m)?,
        &Caps::default(),
    )
    .map_err(err)?;
    Ok((mvec_strings(&w.m1), mvec_strings(&w.m2), w.trace))
}

/// Full CLI-equivalent dispatch: takes a job object as a JSON string and
/// returns the report as a JSON string.
#[pyfunction]
fn run_job(job_json: &str) -> PyResult<String> {
    let v: serde_json::Value = serde_json::from_str(job_json).map_err(err)?;
    let job = JobSpec::from_manifest_entry(&v).map_err(err)?;
    let out = run(&job, &Caps::default()).map_err(err)?;
    Ok(out.to_string())
}

#[pymodule]
fn symnorm_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyRootSystem>()?;
    m.add_class::<PyFan>()?;
    m.add_class::<PyBundle>()?;
    m.add_function(wrap_pyfunction!(check_open, m)?)?;
    m.add_function(wrap_pyfunction!(check_complete, m)?)?;
    m.add_function(wrap_pyfunction!(check_equivalence, m)?)?;
    m.add_function(wrap_pyfunction!(split_point, m)?)?;
    m.add_function(wrap_pyfunction!(run_job, m)?)?;
    Ok(())
}
