//! Python bindings for `subpart-core`.
//!
//! Counts come back as Python ints (arbitrary precision); shapes are passed
//! as lists of `(x, y)` kink points.

use pyo3::exceptions::{PyOSError, PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

use num_bigint::BigUint;
use subpart_core as core;
use subpart_core::envelope::{DiscreteFunction, EnergySpec, Psi};
use subpart_core::maximizer::{find_maximizers_with, SearchOptions};
use subpart_core::shape::{PiecewiseLinearShape, Shape};

fn to_py_err(e: core::Error) -> PyErr {
    match e {
        core::Error::Parse(_) | core::Error::Domain(_) => PyValueError::new_err(e.to_string()),
        core::Error::Resource { .. } => PyRuntimeError::new_err(e.to_string()),
        core::Error::Io(_) => PyOSError::new_err(e.to_string()),
    }
}

/// An integer partition (weakly decreasing positive parts).
#[pyclass(name = "Partition", frozen, eq, hash, skip_from_py_object)]
#[derive(Clone, PartialEq, Eq, Hash)]
struct PyPartition {
    inner: core::Partition,
}

#[pymethods]
impl PyPartition {
    #[new]
    #[pyo3(signature = (parts=Vec::new()))]
    fn new(parts: Vec<u32>) -> PyResult<Self> {
        core::Partition::new(parts)
            .map(|inner| PyPartition { inner })
            .map_err(to_py_err)
    }

    /// Parses "4,2,1"; "" is the empty partition.
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        text.parse()
            .map(|inner| PyPartition { inner })
            .map_err(to_py_err)
    }

    #[getter]
    fn parts(&self) -> Vec<u32> {
        self.inner.parts().to_vec()
    }

    #[getter]
    fn n(&self) -> u64 {
        self.inner.n()
    }

    fn conjugate(&self) -> Self {
        PyPartition {
            inner: self.inner.conjugate(),
        }
    }

    fn is_subpartition_of(&self, other: &PyPartition) -> bool {
        self.inner.is_subpartition_of(&other.inner)
    }

    /// `(left, values)`: the profile `G` on the window `[left, left + len - 1]`.
    fn profile(&self) -> (i64, Vec<i64>) {
        let g = self.inner.profile();
        (g.window().0, g.values().to_vec())
    }

    /// Rescaled profile as `(x, y)` kinks.
    fn rescaled(&self) -> PyResult<Vec<(f64, f64)>> {
        core::rescale(&self.inner.profile(), self.inner.n())
            .map(|s| s.kinks().to_vec())
            .map_err(to_py_err)
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Partition({:?})", self.inner.parts())
    }
}

fn count_value(r: core::CountResult) -> BigUint {
    r.value
}

#[pyfunction]
fn enumerate_partitions(n: u32, cap: Option<u64>) -> PyResult<Vec<PyPartition>> {
    let cap = cap.unwrap_or(core::partition::DEFAULT_ENUMERATION_CAP);
    core::enumerate_partitions(n, cap)
        .map(|v| v.into_iter().map(|inner| PyPartition { inner }).collect())
        .map_err(to_py_err)
}

#[pyfunction]
fn count_subpartitions(lambda: &PyPartition) -> BigUint {
    count_value(core::count_subpartitions(&lambda.inner))
}

#[pyfunction]
#[pyo3(signature = (lambda, k, strict=false))]
fn count_kchains(lambda: &PyPartition, k: u32, strict: bool) -> PyResult<BigUint> {
    core::count_kchains(&lambda.inner, k, strict)
        .map(count_value)
        .map_err(to_py_err)
}

#[pyfunction]
fn count_bridges_below(lambda: &PyPartition) -> BigUint {
    count_value(core::count_bridges_below(&lambda.inner.profile()))
}

#[pyfunction]
fn partition_count(n: u64) -> BigUint {
    count_value(core::partition_count(n))
}

/// `(log_bound, bound)` for the subpartition count of `lambda`.
#[pyfunction]
fn corollary2_bound(lambda: &PyPartition) -> (f64, f64) {
    let b = core::corollary2_bound(&lambda.inner.profile());
    (b.log_bound, b.bound)
}

#[pyfunction]
fn hr_exponent(n: u64, k: u32) -> f64 {
    core::hr_exponent(n, k)
}

#[pyfunction]
fn lambda_cgf(t: f64) -> f64 {
    core::lambda_cgf(t)
}

#[pyfunction]
fn lambda_star(x: f64) -> f64 {
    core::lambda_star(x)
}

#[pyfunction]
fn phi(x: f64) -> PyResult<f64> {
    core::phi(x).map_err(to_py_err)
}

#[pyfunction]
fn legendre_numeric(x: f64) -> PyResult<f64> {
    core::legendre_numeric(x).map_err(to_py_err)
}

#[pyfunction]
fn vershik_curve(x: f64) -> f64 {
    core::vershik_curve(x)
}

fn polyline(kinks: Vec<(f64, f64)>) -> PyResult<Shape> {
    PiecewiseLinearShape::new(kinks)
        .map(Shape::from)
        .map_err(to_py_err)
}

/// `F` of a polyline given by its kinks, or of the Vershik curve when
/// `kinks` is None.
#[pyfunction]
#[pyo3(signature = (kinks=None))]
fn functional_f(kinks: Option<Vec<(f64, f64)>>) -> PyResult<f64> {
    let shape = match kinks {
        Some(k) => polyline(k)?,
        None => Shape::vershik(),
    };
    core::functional_F(&shape).map_err(to_py_err)
}

/// Uniform distance from a polyline to the Vershik curve.
#[pyfunction]
fn distance_to_vershik(kinks: Vec<(f64, f64)>) -> PyResult<f64> {
    Ok(core::sup_distance(&polyline(kinks)?, &Shape::vershik()))
}

#[pyfunction]
#[pyo3(signature = (values, start=0))]
fn lower_convex_envelope(values: Vec<f64>, start: i64) -> PyResult<Vec<f64>> {
    let f = DiscreteFunction::new(start, values).map_err(to_py_err)?;
    Ok(core::lower_convex_envelope(&f).values().to_vec())
}

#[pyfunction]
#[pyo3(signature = (values, start=0))]
fn decreasing_lower_convex_envelope(values: Vec<f64>, start: i64) -> PyResult<Vec<f64>> {
    let f = DiscreteFunction::new(start, values).map_err(to_py_err)?;
    Ok(core::decreasing_lower_convex_envelope(&f).values().to_vec())
}

/// `J(f)` with `psi` one of "lambda_star", "square", "abs".
#[pyfunction]
#[pyo3(signature = (values, psi="lambda_star"))]
fn path_energy(values: Vec<f64>, psi: &str) -> PyResult<f64> {
    let psi = match psi {
        "lambda_star" => Psi::LambdaStar,
        "square" => Psi::Square,
        "abs" => Psi::Abs,
        other => return Err(PyValueError::new_err(format!("unknown psi {other:?}"))),
    };
    let f = DiscreteFunction::new(0, values).map_err(to_py_err)?;
    Ok(core::path_energy(&f, EnergySpec { psi }))
}

#[pyfunction]
#[pyo3(signature = (tol=1e-10))]
fn verify_constants(py: Python<'_>, tol: f64) -> PyResult<Bound<'_, PyDict>> {
    let r = core::ratefn::verify_constants(tol);
    let d = PyDict::new(py);
    d.set_item("f_vershik", r.f_vershik)?;
    d.set_item("f_residual", r.f_residual)?;
    d.set_item("area_residual", r.area_residual)?;
    d.set_item("log1p_residual", r.log1p_residual)?;
    d.set_item("phi_tanh_residual", r.phi_tanh_residual)?;
    d.set_item("doubled_log1p_residual", r.doubled_log1p_residual)?;
    d.set_item("euler_lagrange_residual", r.euler_lagrange_residual)?;
    Ok(d)
}

/// Exhaustive argmax over the partitions of `n`, returned as a dict.
#[pyfunction]
#[pyo3(signature = (n, k=1, strict=false, jobs=1))]
fn find_maximizers(py: Python<'_>, n: u32, k: u32, strict: bool, jobs: usize) -> PyResult<Bound<'_, PyDict>> {
    let opts = SearchOptions {
        jobs,
        strict,
        ..Default::default()
    };
    let r = py
        .detach(|| find_maximizers_with(n, k, &opts))
        .map_err(to_py_err)?;
    let d = PyDict::new(py);
    d.set_item("n", r.n)?;
    d.set_item("k", r.k)?;
    let maximizers: Vec<PyPartition> = r
        .maximizers
        .iter()
        .cloned()
        .map(|inner| PyPartition { inner })
        .collect();
    d.set_item("maximizers", maximizers)?;
    d.set_item("max_count", r.max_count.value.clone())?;
    d.set_item("exponent", r.exponent)?;
    d.set_item("hr_reference", r.hr_reference)?;
    d.set_item("distance_to_vershik", r.distance_to_vershik)?;
    Ok(d)
}

#[pymodule]
fn pysubpart(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyPartition>()?;
    m.add_function(wrap_pyfunction!(enumerate_partitions, m)?)?;
    m.add_function(wrap_pyfunction!(count_subpartitions, m)?)?;
    m.add_function(wrap_pyfunction!(count_kchains, m)?)?;
    m.add_function(wrap_pyfunction!(count_bridges_below, m)?)?;
    m.add_function(wrap_pyfunction!(partition_count, m)?)?;
    m.add_function(wrap_pyfunction!(corollary2_bound, m)?)?;
    m.add_function(wrap_pyfunction!(hr_exponent, m)?)?;
    m.add_function(wrap_pyfunction!(lambda_cgf, m)?)?;
    m.add_function(wrap_pyfunction!(lambda_star, m)?)?;
    m.add_function(wrap_pyfunction!(phi, m)?)?;
    m.add_function(wrap_pyfunction!(legendre_numeric, m)?)?;
    m.add_function(wrap_pyfunction!(vershik_curve, m)?)?;
    m.add_function(wrap_pyfunction!(functional_f, m)?)?;
    m.add_function(wrap_pyfunction!(distance_to_vershik, m)?)?;
    m.add_function(wrap_pyfunction!(lower_convex_envelope, m)?)?;
    m.add_function(wrap_pyfunction!(decreasing_lower_convex_envelope, m)?)?;
    m.add_function(wrap_pyfunction!(path_energy, m)?)?;
    m.add_function(wrap_pyfunction!(verify_constants, m)?)?;
    m.add_function(wrap_pyfunction!(find_maximizers, m)?)?;
    m.add("F_MAX", core::ratefn::F_MAX)?;
    m.add("BETA_MAX", core::ratefn::BETA_MAX)?;
    Ok(())
}
