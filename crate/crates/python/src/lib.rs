//! Python bindings: `Field` wraps a residue field with its weight table,
//! `Code` wraps a `w`-cyclic code. Reports come back as plain dicts.

use std::sync::Arc;

use mannheim::metric::EXHAUSTIVE_AUDIT_LIMIT;
use mannheim::{Code, EisensteinInt, Label, ResidueField, WeightKind, WeightTable};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use serde::Serialize;

fn err(e: mannheim::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn kind(name: &str) -> PyResult<WeightKind> {
    name.parse().map_err(err)
}

/// Round-trips a report through `json.loads` so Python sees builtin types.
fn to_py<'py, T: Serialize>(py: Python<'py>, value: &T) -> PyResult<Bound<'py, PyAny>> {
    let text = serde_json::to_string(value).map_err(|e| PyValueError::new_err(e.to_string()))?;
    py.import("json")?.call_method1("loads", (text,))
}

#[pyfunction]
fn split_prime(p: usize) -> PyResult<(i64, i64)> {
    let pi = mannheim::split_prime(p).map_err(err)?;
    Ok((pi.x, pi.y))
}

#[pyfunction]
fn label_ratio(p: usize, a: i64, b: i64) -> PyResult<usize> {
    mannheim::label_ratio(p, EisensteinInt::new(a, b)).map_err(err)
}

#[pyclass(name = "Field", module = "pymannheim", frozen)]
struct PyField {
    field: Arc<ResidueField>,
    weights: WeightTable,
}

#[pymethods]
impl PyField {
    #[new]
    fn new(p: usize) -> PyResult<Self> {
        let field = ResidueField::build(p).map_err(err)?;
        let weights = WeightTable::new(&field);
        Ok(PyField {
            field: Arc::new(field),
            weights,
        })
    }

    #[getter]
    fn p(&self) -> usize {
        self.field.p()
    }

    #[getter]
    fn n(&self) -> usize {
        self.field.n()
    }

    #[getter]
    fn pi(&self) -> (i64, i64) {
        (self.field.pi().x, self.field.pi().y)
    }

    #[getter]
    fn r(&self) -> usize {
        self.field.r()
    }

    #[getter]
    fn beta(&self) -> Label {
        self.field.beta()
    }

    #[getter]
    fn unit_labels(&self) -> Vec<Label> {
        self.field.unit_labels().to_vec()
    }

    fn summary<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &self.field.summary())
    }

    /// Canonical representative `(x, y)` of label `l`.
    fn representative(&self, l: Label) -> PyResult<(i64, i64)> {
        let a = self.field.representative(l).map_err(err)?;
        Ok((a.x, a.y))
    }

    /// `(coeff_1, coeff_2, form)` with form `"w"` or `"w_bar"`.
    fn mu(&self, l: Label) -> PyResult<(i64, i64, &'static str)> {
        let m = self.field.mu(l).map_err(err)?;
        let form = match m.form {
            mannheim::field::Presentation::W => "w",
            mannheim::field::Presentation::WBar => "w_bar",
        };
        Ok((m.coords.0, m.coords.1, form))
    }

    fn label_of(&self, x: i64, y: i64) -> Label {
        self.field.label_of(EisensteinInt::new(x, y))
    }

    fn add(&self, a: Label, b: Label) -> PyResult<Label> {
        self.field.add(a, b).map_err(err)
    }

    fn sub(&self, a: Label, b: Label) -> PyResult<Label> {
        self.field.sub(a, b).map_err(err)
    }

    fn mul(&self, a: Label, b: Label) -> PyResult<Label> {
        self.field.mul(a, b).map_err(err)
    }

    fn inv(&self, a: Label) -> PyResult<Label> {
        self.field.inv(a).map_err(err)
    }

    fn pow(&self, a: Label, e: u64) -> PyResult<Label> {
        self.field.pow(a, e).map_err(err)
    }

    fn dlog(&self, a: Label) -> PyResult<usize> {
        self.field.dlog(a).map_err(err)
    }

    /// `kind` is one of `"wM"`, `"wm"`, `"graph"`.
    fn weight(&self, kind_name: &str, l: Label) -> PyResult<u32> {
        self.weights.weight(kind(kind_name)?, l).map_err(err)
    }

    fn distance(&self, kind_name: &str, a: Label, b: Label) -> PyResult<u32> {
        self.weights.distance(kind(kind_name)?, a, b).map_err(err)
    }

    fn word_distance(&self, kind_name: &str, u: Vec<Label>, v: Vec<Label>) -> PyResult<u64> {
        self.weights
            .word_distance(kind(kind_name)?, &u, &v)
            .map_err(err)
    }

    #[pyo3(signature = (kind_name, exhaustive = false, trials = None, seed = 0))]
    fn audit<'py>(
        &self,
        py: Python<'py>,
        kind_name: &str,
        exhaustive: bool,
        trials: Option<u64>,
        seed: u64,
    ) -> PyResult<Bound<'py, PyAny>> {
        let k = kind(kind_name)?;
        let report = match (exhaustive, trials) {
            (true, _) => self
                .weights
                .audit_exhaustive(k, EXHAUSTIVE_AUDIT_LIMIT)
                .map_err(err)?,
            (false, Some(n)) => self.weights.audit_sampled(k, n, seed),
            (false, None) => self.weights.audit_default(k, seed),
        };
        to_py(py, &report)
    }

    fn compare<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &self.weights.compare())
    }

    fn __repr__(&self) -> String {
        format!(
            "Field(p={}, pi={}, r={}, beta={})",
            self.field.p(),
            self.field.pi(),
            self.field.r(),
            self.field.beta()
        )
    }
}

#[pyclass(name = "Code", module = "pymannheim", frozen)]
struct PyCode {
    code: Code,
}

#[pymethods]
impl PyCode {
    #[new]
    #[pyo3(signature = (field, t = 0))]
    fn new(field: PyRef<'_, PyField>, t: usize) -> PyResult<Self> {
        Ok(PyCode {
            code: Code::build(field.field.clone(), t).map_err(err)?,
        })
    }

    #[getter]
    fn n(&self) -> usize {
        self.code.n()
    }

    #[getter]
    fn t(&self) -> usize {
        self.code.t()
    }

    #[getter]
    fn k(&self) -> usize {
        self.code.k()
    }

    #[getter]
    fn parity_check(&self) -> Vec<Vec<Label>> {
        self.code.parity_check().to_vec()
    }

    #[getter]
    fn generator(&self) -> Vec<Label> {
        self.code.generator().to_vec()
    }

    fn encode(&self, message: Vec<Label>) -> PyResult<Vec<Label>> {
        Ok(self.code.encode(&message).map_err(err)?.into_inner())
    }

    fn wshift(&self, word: Vec<Label>) -> PyResult<Vec<Label>> {
        Ok(self.code.wshift(&word).map_err(err)?.into_inner())
    }

    fn syndrome(&self, word: Vec<Label>) -> PyResult<Vec<Label>> {
        self.code.syndrome(&word).map_err(err)
    }

    fn is_codeword(&self, word: Vec<Label>) -> PyResult<bool> {
        self.code.is_codeword(&word).map_err(err)
    }

    fn message_of(&self, word: Vec<Label>) -> PyResult<Vec<Label>> {
        self.code.message_of(&word).map_err(err)
    }

    fn decode<'py>(&self, py: Python<'py>, word: Vec<Label>) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &self.code.decode_single(&word).map_err(err)?)
    }

    #[pyo3(signature = (exhaustive = true))]
    fn verify_perfect<'py>(
        &self,
        py: Python<'py>,
        exhaustive: bool,
    ) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &self.code.verify_perfect(exhaustive).map_err(err)?)
    }

    #[pyo3(signature = (trials, seed, epsilon))]
    fn simulate<'py>(
        &self,
        py: Python<'py>,
        trials: u64,
        seed: u64,
        epsilon: f64,
    ) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &self.code.simulate(trials, seed, epsilon).map_err(err)?)
    }
}

#[pymodule]
fn pymannheim(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(split_prime, m)?)?;
    m.add_function(wrap_pyfunction!(label_ratio, m)?)?;
    m.add_class::<PyField>()?;
    m.add_class::<PyCode>()?;
    Ok(())
}
