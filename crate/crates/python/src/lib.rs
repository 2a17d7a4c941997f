//! Python bindings: maps, tameness, length-three data and certificates.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use stame_core::algebra::{FactorConfig, Ring};
use stame_core::cli::{parse_map, Cli};
use stame_core::length3;
use stame_core::polymap;
use stame_core::stabilize as stab;
use stame_core::tamecheck::{tame2 as core_tame2, TameOutcome};

fn err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn ring_of(tag: &str) -> PyResult<Ring> {
    Ring::from_tag(tag).ok_or_else(|| err(format!("unknown ring {tag}; use Z, Q, Qt or Q(t)")))
}

/// Polynomial map, e.g. `PolyMap("(X + Y^2, Y)", ring="Z")`.
#[pyclass(frozen, eq, str, skip_from_py_object)]
#[derive(Clone, PartialEq)]
pub struct PolyMap {
    inner: polymap::PolyMap,
}

impl std::fmt::Display for PolyMap {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.inner.fmt(f)
    }
}

#[pymethods]
impl PolyMap {
    #[new]
    #[pyo3(signature = (src, ring = "Qt"))]
    fn new(src: &str, ring: &str) -> PyResult<Self> {
        Ok(PolyMap { inner: parse_map(src, ring_of(ring)?, None).map_err(err)? })
    }

    #[getter]
    fn ring(&self) -> &'static str {
        self.inner.ring().tag()
    }

    #[getter]
    fn nvars(&self) -> usize {
        self.inner.nvars()
    }

    #[getter]
    fn components(&self) -> Vec<String> {
        self.inner.components().iter().map(|c| c.to_string()).collect()
    }

    /// `self ∘ other`.
    fn compose(&self, other: &PolyMap) -> PyResult<PolyMap> {
        Ok(PolyMap { inner: self.inner.compose(&other.inner).map_err(err)? })
    }

    fn jacobian_det(&self) -> PyResult<String> {
        Ok(self.inner.jacobian_det().map_err(err)?.to_string())
    }

    /// The map acting as the identity on `m` further variables.
    fn extend(&self, m: usize) -> PolyMap {
        PolyMap { inner: self.inner.extend(m) }
    }

    fn __repr__(&self) -> String {
        format!("PolyMap('{}', ring='{}')", self.inner, self.inner.ring().tag())
    }
}

/// Outcome of the tameness decision.
#[pyclass(frozen, get_all)]
pub struct TameResult {
    is_tame: bool,
    /// Step at which a wild map was rejected.
    step: Option<u8>,
    code: Option<String>,
    detail: Option<String>,
    /// Number of generators of the tame word.
    word_length: Option<usize>,
}

#[pymethods]
impl TameResult {
    fn __repr__(&self) -> String {
        match (&self.step, &self.code) {
            (Some(s), Some(c)) => format!("TameResult(NOT_TAME, step={s}, code={c})"),
            _ => format!("TameResult(TAME, word_length={})", self.word_length.unwrap_or(0)),
        }
    }
}

#[pyfunction]
fn tame2(f: &PolyMap) -> PyResult<TameResult> {
    let dec = core_tame2(&f.inner).map_err(err)?;
    Ok(match dec.outcome {
        TameOutcome::Tame { word } => TameResult { is_tame: true, step: None, code: None, detail: None, word_length: Some(word.len()) },
        TameOutcome::NotTame { step, code, detail } => TameResult {
            is_tame: false,
            step: Some(step),
            code: Some(serde_json::to_value(code).map_err(err)?.as_str().unwrap_or_default().to_string()),
            detail: Some(detail),
            word_length: None,
        },
    })
}

/// Length over the fraction field.
#[pyfunction]
fn length(f: &PolyMap) -> PyResult<usize> {
    length3::length(&f.inner).map_err(err)
}

/// Length-three data `(b, A1, A2, D)` of a map.
#[pyclass(frozen, get_all)]
pub struct Length3 {
    b: String,
    a1: String,
    a2: String,
    d: String,
    lemma6_passes: bool,
}

#[pymethods]
impl Length3 {
    fn __repr__(&self) -> String {
        format!("Length3(b={}, A1={}, A2={}, D={})", self.b, self.a1, self.a2, self.d)
    }
}

#[pyfunction]
fn extract_l3(f: &PolyMap) -> PyResult<Length3> {
    let data = length3::extract_l3(&f.inner).map_err(err)?;
    let rep = length3::verify_lemma6(&data, &FactorConfig::default()).map_err(err)?;
    Ok(Length3 { b: data.b.to_string(), a1: data.a1.to_string(), a2: data.a2.to_string(), d: data.d.to_string(), lemma6_passes: rep.passes() })
}

/// Stable tameness certificate.
#[pyclass(frozen)]
pub struct Certificate {
    inner: stab::Certificate,
}

#[pymethods]
impl Certificate {
    #[getter]
    fn added_vars(&self) -> usize {
        self.inner.added_vars
    }

    #[getter]
    fn stages(&self) -> usize {
        self.inner.stages.len()
    }

    #[getter]
    fn verified(&self) -> bool {
        self.inner.verified
    }

    #[getter]
    fn word_length(&self) -> usize {
        self.inner.word.len()
    }

    #[getter]
    fn conclusion(&self) -> String {
        serde_json::to_value(self.inner.conclusion()).ok().and_then(|v| v.as_str().map(String::from)).unwrap_or_default()
    }

    fn to_json(&self) -> String {
        self.inner.to_json().to_string()
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Certificate> {
        let v: serde_json::Value = serde_json::from_str(text).map_err(err)?;
        Ok(Certificate { inner: stab::Certificate::from_json(&v).map_err(err)? })
    }

    fn __repr__(&self) -> String {
        format!("Certificate(added_vars={}, stages={}, verified={})", self.inner.added_vars, self.inner.stages.len(), self.inner.verified)
    }
}

#[pyfunction]
fn stabilize(f: &PolyMap) -> PyResult<Certificate> {
    Ok(Certificate { inner: stab::stabilize(&f.inner, &FactorConfig::default()).map_err(err)? })
}

/// Recomputes a certificate from its JSON text.
#[pyfunction]
fn verify_certificate(text: &str) -> PyResult<bool> {
    Ok(Certificate::from_json(text)?.inner.verified)
}

/// Runs the command-line tool on `args` (without the program name);
/// returns the JSON report and the exit code.
#[pyfunction]
fn run_cli(args: Vec<String>) -> PyResult<(String, i32)> {
    use clap::Parser;
    let cli = Cli::try_parse_from(std::iter::once("stame".to_string()).chain(args)).map_err(err)?;
    Ok(stame_core::cli::execute(&cli))
}

#[pymodule]
fn stame(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PolyMap>()?;
    m.add_class::<TameResult>()?;
    m.add_class::<Length3>()?;
    m.add_class::<Certificate>()?;
    m.add_function(wrap_pyfunction!(tame2, m)?)?;
    m.add_function(wrap_pyfunction!(length, m)?)?;
    m.add_function(wrap_pyfunction!(extract_l3, m)?)?;
    m.add_function(wrap_pyfunction!(stabilize, m)?)?;
    m.add_function(wrap_pyfunction!(verify_certificate, m)?)?;
    m.add_function(wrap_pyfunction!(run_cli, m)?)?;
    Ok(())
}
