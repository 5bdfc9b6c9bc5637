//! Python module `intzeta`: indices, exact index sums, the positive-index
//! map, both products, relations and the series oracles.
//!
//! Index arguments accept an `Index`, a string such as `"(0,3)"`, or a list
//! of integers. Coefficients come back as `fractions.Fraction`.

use intzeta::{BernoulliSign, Error, MIndex, Rational};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyList};

fn value_error(e: Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn fraction<'py>(py: Python<'py>, r: &Rational) -> PyResult<Bound<'py, PyAny>> {
    py.import("fractions")?
        .getattr("Fraction")?
        .call1((r.numer().clone(), r.denom().clone()))
}

fn rational_arg(obj: &Bound<'_, PyAny>) -> PyResult<Rational> {
    if let Ok(n) = obj.extract::<num_bigint::BigInt>() {
        return Ok(Rational::from_integer(n));
    }
    let numer: num_bigint::BigInt = obj.getattr("numerator")?.extract()?;
    let denom: num_bigint::BigInt = obj.getattr("denominator")?.extract()?;
    Ok(Rational::new(numer, denom))
}

fn m_to_py(py: Python<'_>, m: MIndex) -> PyResult<PyObject> {
    Ok(match m {
        MIndex::Finite(v) => v.into_pyobject(py)?.into_any().unbind(),
        MIndex::Infinite => f64::INFINITY.into_pyobject(py)?.into_any().unbind(),
    })
}

/// An integer index `(k1, ..., kr)`.
#[pyclass(name = "Index", module = "intzeta", frozen, eq, hash, ord)]
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
struct PyIndex(intzeta::Index);

#[pymethods]
impl PyIndex {
    #[new]
    #[pyo3(signature = (entries = None))]
    fn new(entries: Option<&Bound<'_, PyAny>>) -> PyResult<Self> {
        match entries {
            None => Ok(PyIndex(intzeta::Index::empty())),
            Some(obj) => index_arg(obj).map(PyIndex),
        }
    }

    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        text.parse().map(PyIndex).map_err(value_error)
    }

    #[getter]
    fn entries(&self) -> Vec<i64> {
        self.0.entries().to_vec()
    }

    #[getter]
    fn weight(&self) -> i64 {
        self.0.weight()
    }

    #[getter]
    fn depth(&self) -> usize {
        self.0.depth()
    }

    /// `m_k` as an int, or `math.inf` for the empty index.
    fn m_index(&self, py: Python<'_>) -> PyResult<PyObject> {
        m_to_py(py, self.0.m_index())
    }

    fn classify(&self) -> &'static str {
        self.0.classify().as_str()
    }

    fn is_admissible(&self) -> bool {
        self.0.is_admissible()
    }

    fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    fn tail(&self, t: usize) -> PyResult<Self> {
        self.0.tail(t).map(PyIndex).map_err(value_error)
    }

    /// The word `j^{kr} y ... j^{k1} y`, with `d` for negative powers.
    fn word(&self) -> String {
        intzeta::word_from_index(&self.0).to_string()
    }

    #[staticmethod]
    fn from_word(text: &str) -> PyResult<Self> {
        let w: intzeta::Word = text.parse().map_err(value_error)?;
        w.to_index().map(PyIndex).map_err(value_error)
    }

    fn __len__(&self) -> usize {
        self.0.depth()
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Index({:?})", self.0.entries())
    }
}

fn index_arg(obj: &Bound<'_, PyAny>) -> PyResult<intzeta::Index> {
    if let Ok(k) = obj.downcast::<PyIndex>() {
        return Ok(k.get().0.clone());
    }
    if let Ok(text) = obj.extract::<String>() {
        return text.parse().map_err(value_error);
    }
    let entries: Vec<i64> = obj.extract()?;
    Ok(intzeta::Index::new(entries))
}

/// A finite rational linear combination of indices.
#[pyclass(name = "IndexSum", module = "intzeta", frozen, eq)]
#[derive(Clone, PartialEq)]
struct PyIndexSum(intzeta::IndexSum);

#[pymethods]
impl PyIndexSum {
    /// From `[(coeff, index), ...]`; coefficients may be ints or Fractions.
    #[new]
    #[pyo3(signature = (terms = None))]
    fn new(terms: Option<&Bound<'_, PyList>>) -> PyResult<Self> {
        let mut out = intzeta::IndexSum::zero();
        for item in terms.into_iter().flat_map(|t| t.iter()) {
            let (c, k): (Bound<'_, PyAny>, Bound<'_, PyAny>) = item.extract()?;
            out.add_term(rational_arg(&c)?, index_arg(&k)?);
        }
        Ok(PyIndexSum(out))
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        intzeta::IndexSum::from_json(text)
            .map(PyIndexSum)
            .map_err(|e| PyValueError::new_err(e.to_string()))
    }

    fn to_json(&self) -> String {
        self.0.to_json()
    }

    /// `[(Fraction, Index), ...]` in canonical order.
    fn terms<'py>(&self, py: Python<'py>) -> PyResult<Vec<(Bound<'py, PyAny>, PyIndex)>> {
        self.0
            .iter()
            .map(|(k, c)| Ok((fraction(py, c)?, PyIndex(k.clone()))))
            .collect()
    }

    fn coeff<'py>(
        &self,
        py: Python<'py>,
        index: &Bound<'py, PyAny>,
    ) -> PyResult<Bound<'py, PyAny>> {
        fraction(py, &self.0.coeff(&index_arg(index)?))
    }

    fn m_index(&self, py: Python<'_>) -> PyResult<PyObject> {
        m_to_py(py, self.0.m_index())
    }

    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    fn pretty(&self) -> String {
        self.0.pretty()
    }

    fn __len__(&self) -> usize {
        self.0.len()
    }

    fn __add__(&self, other: &Bound<'_, PyAny>) -> PyResult<Self> {
        Ok(PyIndexSum(&self.0 + &sum_arg(other)?))
    }

    fn __sub__(&self, other: &Bound<'_, PyAny>) -> PyResult<Self> {
        Ok(PyIndexSum(&self.0 - &sum_arg(other)?))
    }

    fn __neg__(&self) -> Self {
        PyIndexSum(-&self.0)
    }

    fn __mul__(&self, scalar: &Bound<'_, PyAny>) -> PyResult<Self> {
        Ok(PyIndexSum(self.0.scale(&rational_arg(scalar)?)))
    }

    fn __rmul__(&self, scalar: &Bound<'_, PyAny>) -> PyResult<Self> {
        self.__mul__(scalar)
    }

    fn __str__(&self) -> String {
        self.0.pretty()
    }

    fn __repr__(&self) -> String {
        format!("IndexSum({})", self.0.to_json())
    }
}

fn sum_arg(obj: &Bound<'_, PyAny>) -> PyResult<intzeta::IndexSum> {
    if let Ok(s) = obj.downcast::<PyIndexSum>() {
        return Ok(s.get().0.clone());
    }
    Ok(intzeta::IndexSum::single(index_arg(obj)?))
}

/// A double shuffle relation: the sum of `difference` symbols vanishes.
#[pyclass(name = "Relation", module = "intzeta", frozen, eq)]
#[derive(Clone, PartialEq)]
struct PyRelation(intzeta::Relation);

#[pymethods]
impl PyRelation {
    #[getter]
    fn pair(&self) -> (PyIndex, PyIndex) {
        (
            PyIndex(self.0.pair.0.clone()),
            PyIndex(self.0.pair.1.clone()),
        )
    }

    #[getter]
    fn shuffle_expansion(&self) -> PyIndexSum {
        PyIndexSum(self.0.shuffle_expansion.clone())
    }

    #[getter]
    fn stuffle_expansion(&self) -> PyIndexSum {
        PyIndexSum(self.0.stuffle_expansion.clone())
    }

    #[getter]
    fn difference(&self) -> PyIndexSum {
        PyIndexSum(self.0.difference.clone())
    }

    fn is_trivial(&self) -> bool {
        self.0.is_trivial()
    }

    fn to_json(&self) -> String {
        self.0.to_json()
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        intzeta::Relation::from_json(text)
            .map(PyRelation)
            .map_err(|e| PyValueError::new_err(e.to_string()))
    }

    fn __repr__(&self) -> String {
        format!(
            "Relation({} x {}: {})",
            self.0.pair.0,
            self.0.pair.1,
            self.0.difference.pretty()
        )
    }
}

fn report_dict<'py>(py: Python<'py>, r: intzeta::Report) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    d.set_item("pass", r.pass)?;
    d.set_item("first_mismatch", r.first_mismatch)?;
    d.set_item("order", r.order)?;
    Ok(d)
}

#[pyfunction]
fn m_index(py: Python<'_>, k: &Bound<'_, PyAny>) -> PyResult<PyObject> {
    m_to_py(py, index_arg(k)?.m_index())
}

#[pyfunction]
fn classify(k: &Bound<'_, PyAny>) -> PyResult<&'static str> {
    Ok(index_arg(k)?.classify().as_str())
}

#[pyfunction]
fn pi_plus(x: &Bound<'_, PyAny>) -> PyResult<PyIndexSum> {
    Ok(PyIndexSum(intzeta::pi_plus(&sum_arg(x)?)))
}

#[pyfunction]
fn reduce_step(k: &Bound<'_, PyAny>) -> PyResult<PyIndexSum> {
    intzeta::reduce_step(&index_arg(k)?)
        .map(PyIndexSum)
        .map_err(value_error)
}

#[pyfunction]
fn shuffle(a: &Bound<'_, PyAny>, b: &Bound<'_, PyAny>) -> PyResult<PyIndexSum> {
    intzeta::try_shuffle(&sum_arg(a)?, &sum_arg(b)?)
        .map(PyIndexSum)
        .map_err(value_error)
}

#[pyfunction]
fn stuffle(a: &Bound<'_, PyAny>, b: &Bound<'_, PyAny>) -> PyResult<PyIndexSum> {
    Ok(PyIndexSum(intzeta::stuffle(&sum_arg(a)?, &sum_arg(b)?)))
}

#[pyfunction]
fn zeta_expand(k: &Bound<'_, PyAny>) -> PyResult<PyIndexSum> {
    intzeta::zeta_expand(&index_arg(k)?)
        .map(PyIndexSum)
        .map_err(value_error)
}

#[pyfunction]
fn dsr_relation(a: &Bound<'_, PyAny>, b: &Bound<'_, PyAny>) -> PyResult<PyRelation> {
    intzeta::dsr_relation(&index_arg(a)?, &index_arg(b)?)
        .map(PyRelation)
        .map_err(value_error)
}

#[pyfunction]
#[pyo3(signature = (k, order = 60))]
fn verify_reduction<'py>(
    py: Python<'py>,
    k: &Bound<'py, PyAny>,
    order: usize,
) -> PyResult<Bound<'py, PyDict>> {
    let r = intzeta::verify_reduction(&index_arg(k)?, order).map_err(value_error)?;
    report_dict(py, r)
}

#[pyfunction]
#[pyo3(signature = (a, b, order = 60))]
fn verify_shuffle<'py>(
    py: Python<'py>,
    a: &Bound<'py, PyAny>,
    b: &Bound<'py, PyAny>,
    order: usize,
) -> PyResult<Bound<'py, PyDict>> {
    let r = intzeta::verify_shuffle(&index_arg(a)?, &index_arg(b)?, order).map_err(value_error)?;
    report_dict(py, r)
}

#[pyfunction]
#[pyo3(signature = (a, b, order = 50))]
fn verify_stuffle<'py>(
    py: Python<'py>,
    a: &Bound<'py, PyAny>,
    b: &Bound<'py, PyAny>,
    order: usize,
) -> PyResult<Bound<'py, PyDict>> {
    let r = intzeta::verify_stuffle(&index_arg(a)?, &index_arg(b)?, order).map_err(value_error)?;
    report_dict(py, r)
}

/// `(value, error_hint)`; the hint is a heuristic tail size, not a bound.
#[pyfunction]
#[pyo3(signature = (k, order = 10_000))]
fn zeta_real_approx(k: &Bound<'_, PyAny>, order: usize) -> PyResult<(f64, f64)> {
    let z = intzeta::zeta_real_approx(&index_arg(k)?, order).map_err(value_error)?;
    Ok((z.value, z.error_hint))
}

#[pyfunction]
#[pyo3(signature = (relation, order = 10_000, tol = 1e-3))]
fn verify_relation_numeric<'py>(
    py: Python<'py>,
    relation: &PyRelation,
    order: usize,
    tol: f64,
) -> PyResult<Bound<'py, PyDict>> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(PyValueError::new_err("tol must be positive"));
    }
    let r = intzeta::verify_relation_numeric(&relation.0, order, tol).map_err(value_error)?;
    let d = PyDict::new(py);
    d.set_item("pass", r.pass)?;
    d.set_item("value", r.value)?;
    d.set_item("tolerance", r.tolerance)?;
    d.set_item("order", r.order)?;
    Ok(d)
}

/// Bernoulli number with `sign` either `"minus"` (`B_1 = -1/2`) or `"plus"`.
#[pyfunction]
#[pyo3(signature = (n, sign = "minus"))]
fn bernoulli<'py>(py: Python<'py>, n: usize, sign: &str) -> PyResult<Bound<'py, PyAny>> {
    let sign = match sign {
        "minus" => BernoulliSign::Minus,
        "plus" => BernoulliSign::Plus,
        other => return Err(PyValueError::new_err(format!("unknown sign {other:?}"))),
    };
    fraction(py, &intzeta::bernoulli(n, sign))
}

#[pyfunction]
fn clear_caches() {
    intzeta::clear_caches();
}

#[pymodule]
#[pyo3(name = "intzeta")]
fn intzeta_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyIndex>()?;
    m.add_class::<PyIndexSum>()?;
    m.add_class::<PyRelation>()?;
    m.add_function(wrap_pyfunction!(m_index, m)?)?;
    m.add_function(wrap_pyfunction!(classify, m)?)?;
    m.add_function(wrap_pyfunction!(pi_plus, m)?)?;
    m.add_function(wrap_pyfunction!(reduce_step, m)?)?;
    m.add_function(wrap_pyfunction!(shuffle, m)?)?;
    m.add_function(wrap_pyfunction!(stuffle, m)?)?;
    m.add_function(wrap_pyfunction!(zeta_expand, m)?)?;
    m.add_function(wrap_pyfunction!(dsr_relation, m)?)?;
    m.add_function(wrap_pyfunction!(verify_reduction, m)?)?;
    m.add_function(wrap_pyfunction!(verify_shuffle, m)?)?;
    m.add_function(wrap_pyfunction!(verify_stuffle, m)?)?;
    m.add_function(wrap_pyfunction!(zeta_real_approx, m)?)?;
    m.add_function(wrap_pyfunction!(verify_relation_numeric, m)?)?;
    m.add_function(wrap_pyfunction!(bernoulli, m)?)?;
    m.add_function(wrap_pyfunction!(clear_caches, m)?)?;
    Ok(())
}
