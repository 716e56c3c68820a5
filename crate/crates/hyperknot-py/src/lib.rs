//! Python bindings: polynomials, DAHA-Jones computation, E6 lifts and spectra.

use hyperknot::dahajones::{compute_jd, jones_specialize};
use hyperknot::golden::{self, JdSource};
use hyperknot::hyperlift::{self, convention_change, hat_transform, Convention, Direction};
use hyperknot::qtcoeff::{parse_tri, TriPoly};
use hyperknot::qtcoeff::Weight;
use hyperknot::rootsys::{CartanType, RootSystem};
use hyperknot::singularity::{self, parse_germ_with};
use hyperknot::Error;
use pyo3::create_exception;
use pyo3::exceptions::{PyException, PyValueError};
use pyo3::prelude::*;

create_exception!(hyperknot, HyperknotError, PyException);

fn py_err(e: Error) -> PyErr {
    match e {
        Error::Parse { .. } | Error::Precondition(_) | Error::UnsupportedRootSystem(_) | Error::TorusLink(..) => {
            PyValueError::new_err(e.to_string())
        }
        _ => HyperknotError::new_err(e.to_string()),
    }
}

/// Integer Laurent polynomial in `q`, `t` and `a`.
#[pyclass(name = "TriPoly", frozen, eq, skip_from_py_object)]
#[derive(Clone, PartialEq)]
struct PyTriPoly(TriPoly);

#[pymethods]
impl PyTriPoly {
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        parse_tri(text).map(Self).map_err(py_err)
    }

    /// Terms as `(q, t, a, coeff)` tuples in canonical order.
    fn terms(&self) -> Vec<(i64, i64, i64, i64)> {
        self.0.iter().collect()
    }

    fn coeff(&self, q: i64, t: i64, a: i64) -> i64 {
        self.0.coeff(q, t, a)
    }

    /// Substitute `a = -q^(-al/ga) t^(-be/ga)`.
    fn specialize(&self, al: i64, be: i64, ga: i64) -> PyResult<Self> {
        self.0.specialize(al, be, ga).map(Self).map_err(py_err)
    }

    fn eval(&self, q: i64, t: i64, a: i64) -> PyResult<i64> {
        self.0.eval(q, t, a).map_err(py_err)
    }

    fn tilde_normalize(&self) -> PyResult<Self> {
        self.0.tilde_normalize().map(Self).map_err(py_err)
    }

    /// Sum of absolute coefficients.
    fn dimension(&self) -> i64 {
        self.0.dimension()
    }

    fn to_json(&self) -> String {
        self.0.to_json().to_string()
    }

    fn __mul__(&self, o: &Self) -> Self {
        Self(&self.0 * &o.0)
    }

    fn __add__(&self, o: &Self) -> Self {
        Self(&self.0 + &o.0)
    }

    fn __len__(&self) -> usize {
        self.0.len()
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("TriPoly('{}')", self.0)
    }
}

#[pyclass(name = "RootSystem", frozen)]
struct PyRootSystem(RootSystem);

#[pymethods]
impl PyRootSystem {
    #[new]
    fn new(cartan_type: &str, rank: usize) -> PyResult<Self> {
        let ty: CartanType = cartan_type.parse().map_err(py_err)?;
        RootSystem::new(ty, rank).map(Self).map_err(py_err)
    }

    #[getter]
    fn name(&self) -> String {
        self.0.name()
    }

    #[getter]
    fn rank(&self) -> usize {
        self.0.rank
    }

    #[getter]
    fn cartan(&self) -> Vec<Vec<i64>> {
        self.0.cartan.clone()
    }

    fn weyl_order(&self) -> u64 {
        self.0.weyl_order()
    }

    fn minuscule_indices(&self) -> Vec<usize> {
        self.0.minuscule_indices().to_vec()
    }

    fn positive_root_count(&self) -> usize {
        self.0.positive_roots.len()
    }

    /// Tilde-normalized DAHA-Jones polynomial of `T(r,s)` for `omega_weight`.
    fn jd(&self, weight: usize, r: i64, s: i64) -> PyResult<PyTriPoly> {
        if weight == 0 || weight > self.0.rank {
            return Err(PyValueError::new_err(format!("weight index {weight} out of range")));
        }
        compute_jd(&self.0, &Weight::fundamental(self.0.rank, weight), r, s).map(PyTriPoly).map_err(py_err)
    }

    /// DAHA-Jones polynomial for an arbitrary dominant weight in fundamental coordinates.
    fn jd_weight(&self, weight: Vec<i64>, r: i64, s: i64) -> PyResult<PyTriPoly> {
        if weight.len() != self.0.rank || weight.iter().any(|&c| c < 0) {
            return Err(PyValueError::new_err("weight must be dominant with one entry per node"));
        }
        let w = Weight(weight.into_iter().map(|c| c as i32).collect());
        compute_jd(&self.0, &w, r, s).map(PyTriPoly).map_err(py_err)
    }

    fn __repr__(&self) -> String {
        format!("RootSystem('{}')", self.0.name())
    }
}

/// Substitute `t -> q`.
#[pyfunction]
fn jones(jd: &PyTriPoly) -> PyTriPoly {
    PyTriPoly(jones_specialize(&jd.0))
}

/// Positive E6 hyperpolynomial of `T(r,s)` in the requested convention.
#[pyfunction]
#[pyo3(signature = (r, s, convention = "daha", from_engine = false))]
fn hyperpolynomial(r: i64, s: i64, convention: &str, from_engine: bool) -> PyResult<PyTriPoly> {
    let source = if from_engine { JdSource::Engine } else { JdSource::Golden };
    let hd = golden::lift_knot((r, s), source).map_err(py_err)?;
    let out = match convention {
        "daha" => hd,
        "qg" => convention_change(&hd, Direction::DahaToQg).map_err(py_err)?,
        "dgr" => convention_change(&hd, Direction::DahaToDgr).map_err(py_err)?,
        "hat" => hyperlift::HyperPoly::new(hat_transform(&hd).map_err(py_err)?, Convention::Daha).map_err(py_err)?,
        other => return Err(PyValueError::new_err(format!("unknown convention {other}"))),
    };
    Ok(PyTriPoly(out.poly))
}

/// Plane-curve germ with up to two named variables.
#[pyclass(name = "Germ", frozen)]
struct PyGerm(singularity::Germ);

#[pymethods]
impl PyGerm {
    #[new]
    #[pyo3(signature = (text, vars = ("x".to_string(), "y".to_string())))]
    fn new(text: &str, vars: (String, String)) -> PyResult<Self> {
        parse_germ_with(text, [vars.0.as_str(), vars.1.as_str()]).map(Self).map_err(py_err)
    }

    fn support(&self) -> Vec<(i64, i64)> {
        self.0.support().into_iter().collect()
    }

    fn milnor_number(&self) -> PyResult<i64> {
        singularity::milnor_number(&self.0).map_err(py_err)
    }

    /// Spectrum as `(numerator, denominator)` pairs in increasing order.
    fn spectrum(&self) -> PyResult<Vec<(i64, i64)>> {
        let s = singularity::spectrum(&self.0).map_err(py_err)?;
        Ok(s.values.iter().map(|v| (*v.numer(), *v.denom())).collect())
    }

    fn spectrum_str(&self) -> PyResult<String> {
        singularity::spectrum(&self.0).map(|s| s.to_string()).map_err(py_err)
    }

    fn miniversal_monomials(&self) -> PyResult<Vec<(i64, i64)>> {
        singularity::miniversal_monomials(&self.0).map_err(py_err)
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }
}

/// Spectral semicontinuity test between two bundled table rows.
#[pyfunction]
fn spectra_adjacent(from: &str, to: &str) -> PyResult<bool> {
    let table = golden::spectrum_table().map_err(py_err)?;
    let row = |n: &str| table.get(n).ok_or_else(|| PyValueError::new_err(format!("no table row {n}")));
    singularity::spectra_adjacent(&row(from)?.spectrum, &row(to)?.spectrum).map_err(py_err)
}

/// Verify a bundled golden suite; returns the JSON report.
#[pyfunction]
#[pyo3(signature = (suite, from_engine = false))]
fn verify_golden(suite: &str, from_engine: bool) -> PyResult<String> {
    let source = if from_engine { JdSource::Engine } else { JdSource::Golden };
    golden::verify_suite(suite, source).map(|r| r.to_json().to_string()).map_err(py_err)
}

#[pymodule]
#[pyo3(name = "hyperknot")]
fn hyperknot_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("HyperknotError", m.py().get_type::<HyperknotError>())?;
    m.add_class::<PyTriPoly>()?;
    m.add_class::<PyRootSystem>()?;
    m.add_class::<PyGerm>()?;
    m.add_function(wrap_pyfunction!(jones, m)?)?;
    m.add_function(wrap_pyfunction!(hyperpolynomial, m)?)?;
    m.add_function(wrap_pyfunction!(spectra_adjacent, m)?)?;
    m.add_function(wrap_pyfunction!(verify_golden, m)?)?;
    Ok(())
}
