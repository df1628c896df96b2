//! Python bindings: build a 2-group from a JSON specification, classify its
//! irreducible 2-representations and work with labelled intertwiners.

use pyo3::exceptions::{PyKeyError, PyValueError};
use pyo3::prelude::*;

use tworep_core::catalogue::{Catalogue, DEFAULT_SEED};
use tworep_core::error::RepError;
use tworep_core::io;
use tworep_core::projrep::TwistMode;
use tworep_core::two_group;
use tworep_core::two_rep::Flavour;

fn rep_err(e: RepError) -> PyErr {
    match e {
        RepError::UnknownLabel(l) => PyKeyError::new_err(l),
        other => PyValueError::new_err(other.to_string()),
    }
}

#[pyclass(name = "TwoGroup", frozen, from_py_object)]
#[derive(Clone)]
struct PyTwoGroup {
    inner: two_group::TwoGroup,
}

#[pymethods]
impl PyTwoGroup {
    /// Parses a JSON specification.
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        io::load_two_group(text).map(|inner| PyTwoGroup { inner }).map_err(|e| PyValueError::new_err(e.to_string()))
    }

    /// `(G, 1, trivial, 1)` for a builtin group name such as `"symmetric 3"`.
    #[staticmethod]
    fn from_group(name: &str) -> PyResult<Self> {
        let g = io::builtin_group(name).map_err(|e| PyValueError::new_err(e.to_string()))?;
        Ok(PyTwoGroup { inner: two_group::TwoGroup::from_group(g) })
    }

    #[getter]
    fn group_order(&self) -> usize {
        self.inner.group().order()
    }

    #[getter]
    fn module_order(&self) -> usize {
        self.inner.a().order()
    }

    fn __repr__(&self) -> String {
        format!("TwoGroup(|G|={}, |A|={})", self.group_order(), self.module_order())
    }
}

/// Irreducible 2-representations and intertwiners of one 2-group in one flavour.
#[pyclass(name = "Catalogue", frozen)]
struct PyCatalogue {
    inner: Catalogue,
}

fn parse_mode(mode: &str) -> PyResult<TwistMode> {
    match mode {
        "dual1" => Ok(TwistMode::Dual1),
        "dual2" => Ok(TwistMode::Dual2),
        "adjoint" => Ok(TwistMode::Adjoint),
        other => Err(PyValueError::new_err(format!("unknown transform {other:?}"))),
    }
}

#[pymethods]
impl PyCatalogue {
    #[new]
    #[pyo3(signature = (two_group, flavour = "positive", seed = DEFAULT_SEED))]
    fn new(two_group: &PyTwoGroup, flavour: &str, seed: u64) -> PyResult<Self> {
        let flavour: Flavour = flavour.parse().map_err(PyValueError::new_err)?;
        let inner = Catalogue::build(&two_group.inner, flavour, seed).map_err(rep_err)?;
        Ok(PyCatalogue { inner })
    }

    #[getter]
    fn flavour(&self) -> String {
        self.inner.flavour().to_string()
    }

    /// Labels of the irreducible 2-representations.
    fn objects(&self) -> Vec<String> {
        self.inner.object_labels().to_vec()
    }

    /// Dimensions `[G:H]` of the irreducible 2-representations.
    fn dims(&self) -> Vec<usize> {
        self.inner.objects().iter().map(|r| r.dim(self.inner.two_group())).collect()
    }

    /// `(label, dim W)` for each irreducible intertwiner `source → target`.
    fn hom(&self, source: &str, target: &str) -> PyResult<Vec<(String, usize)>> {
        let a = self.inner.object_index(source).map_err(rep_err)?;
        let b = self.inner.object_index(target).map_err(rep_err)?;
        Ok(self.inner.hom_table()[a * self.inner.objects().len() + b]
            .generators
            .iter()
            .map(|g| (g.label.clone(), g.dim))
            .collect())
    }

    /// Composes labelled intertwiners, `labels[0]` applied last.
    fn fuse(&self, labels: Vec<String>) -> PyResult<String> {
        let refs: Vec<&str> = labels.iter().map(String::as_str).collect();
        let f = self.inner.fuse(&refs).map_err(rep_err)?;
        Ok(self.inner.format_fusion(&f))
    }

    /// `"dual1"`, `"dual2"` or `"adjoint"` of a labelled intertwiner.
    fn transform(&self, label: &str, mode: &str) -> PyResult<String> {
        let f = self.inner.transform_label(label, parse_mode(mode)?).map_err(rep_err)?;
        Ok(self.inner.format_fusion(&f))
    }

    /// Failures of the coherence battery, as text; empty when all pass.
    #[pyo3(signature = (max_pairs = None))]
    fn verify(&self, max_pairs: Option<usize>) -> PyResult<Vec<String>> {
        let failures = self.inner.coherence_battery(max_pairs).map_err(rep_err)?;
        Ok(failures
            .iter()
            .map(|f| format!("{} {} at {:?}: {} vs {}", f.subject, f.violation.condition, f.violation.args, f.violation.lhs, f.violation.rhs))
            .collect())
    }

    /// JSON report of kind `"classification"` or `"homs"`.
    fn report(&self, kind: &str) -> PyResult<String> {
        match kind {
            "classification" => Ok(io::cmd_classify(&self.inner).to_json()),
            "homs" => Ok(io::cmd_homs(&self.inner).to_json()),
            other => Err(PyValueError::new_err(format!("unknown report kind {other:?}"))),
        }
    }
}

/// The named 2-groups used by the coherence checks.
#[pyfunction]
fn zoo() -> Vec<(String, PyTwoGroup)> {
    tworep_core::zoo::zoo().into_iter().map(|(n, inner)| (n.to_string(), PyTwoGroup { inner })).collect()
}

#[pymodule]
fn tworep(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyTwoGroup>()?;
    m.add_class::<PyCatalogue>()?;
    m.add_function(wrap_pyfunction!(zoo, m)?)?;
    Ok(())
}
