//! Python bindings. Positions are 0-based; symbols are one-character strings.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use serde::Serialize;

use dynwild_core::convolution::Convolution;
use dynwild_core::hardness::{self, OvInstance};
use dynwild_core::oracle::OracleKind;
use dynwild_core::{GeneralConfig, PatternEdit, RangePairConfig, TwoConfig};

fn err(e: dynwild_core::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn sym(s: &str) -> PyResult<u8> {
    match s.as_bytes() {
        [c] => Ok(*c),
        _ => Err(PyValueError::new_err(format!(
            "expected a single ASCII character, got {s:?}"
        ))),
    }
}

fn ascii(s: &str) -> PyResult<&[u8]> {
    if s.is_ascii() {
        Ok(s.as_bytes())
    } else {
        Err(PyValueError::new_err("strings must be ASCII"))
    }
}

fn show(s: &[u8]) -> String {
    String::from_utf8_lossy(s).into_owned()
}

fn to_py<'py, T: Serialize>(py: Python<'py>, value: &T) -> PyResult<Bound<'py, PyAny>> {
    let json = serde_json::to_string(value).map_err(|e| PyValueError::new_err(e.to_string()))?;
    py.import("json")?.call_method1("loads", (json,))
}

fn instance(vectors: Vec<Vec<bool>>) -> PyResult<OvInstance> {
    OvInstance::new(vectors).map_err(err)
}

/// Matcher for up to `k` wildcards across text and pattern.
#[pyclass]
struct GeneralMatcher {
    inner: dynwild_core::GeneralMatcher,
}

#[pymethods]
impl GeneralMatcher {
    #[new]
    #[pyo3(signature = (text, pattern, k = 3, tau = None, seed = 0, oracle = "multiset"))]
    fn new(
        text: &str,
        pattern: &str,
        k: usize,
        tau: Option<usize>,
        seed: u64,
        oracle: &str,
    ) -> PyResult<Self> {
        let oracle = match oracle {
            "multiset" => OracleKind::WindowMultiset,
            "scan" => OracleKind::NaiveScan,
            o => return Err(PyValueError::new_err(format!("unknown oracle {o:?}"))),
        };
        let config = GeneralConfig {
            k,
            tau,
            seed,
            oracle,
        };
        let inner = dynwild_core::GeneralMatcher::new(ascii(text)?, ascii(pattern)?, config)
            .map_err(err)?;
        Ok(Self { inner })
    }

    fn substitute_text(&mut self, i: usize, symbol: &str) -> PyResult<()> {
        self.inner.substitute_text(i, sym(symbol)?).map_err(err)
    }

    fn substitute_pattern(&mut self, i: usize, symbol: &str) -> PyResult<()> {
        self.inner.substitute_pattern(i, sym(symbol)?).map_err(err)
    }

    fn query(&mut self) -> bool {
        self.inner.query().matched
    }

    #[getter]
    fn text(&self) -> String {
        show(self.inner.text())
    }

    #[getter]
    fn pattern(&self) -> String {
        show(self.inner.pattern())
    }

    #[getter]
    fn tau(&self) -> usize {
        self.inner.tau()
    }

    fn counters<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, self.inner.counters())
    }
}

/// Matcher for patterns with at most two non-wildcard symbols; counts
/// occurrences and supports pattern insertions and deletions.
#[pyclass]
struct TwoMatcher {
    inner: dynwild_core::TwoMatcher,
}

#[pymethods]
impl TwoMatcher {
    #[new]
    #[pyo3(signature = (text, pattern, tau = None, block_size = None, rebuild_threshold = None, seed = 0))]
    fn new(
        text: &str,
        pattern: &str,
        tau: Option<usize>,
        block_size: Option<usize>,
        rebuild_threshold: Option<usize>,
        seed: u64,
    ) -> PyResult<Self> {
        let config = TwoConfig {
            tau,
            block_size,
            rebuild_threshold,
            seed,
            convolution: Convolution::default(),
        };
        let inner =
            dynwild_core::TwoMatcher::new(ascii(text)?, ascii(pattern)?, config).map_err(err)?;
        Ok(Self { inner })
    }

    fn update_text(&mut self, i: usize, symbol: &str) -> PyResult<()> {
        self.inner.update_text(i, sym(symbol)?).map_err(err)
    }

    fn substitute_pattern(&mut self, i: usize, symbol: &str) -> PyResult<()> {
        self.inner
            .edit_pattern(PatternEdit::Substitute(i, sym(symbol)?))
            .map_err(err)
    }

    fn insert_pattern(&mut self, i: usize, symbol: &str) -> PyResult<()> {
        self.inner
            .edit_pattern(PatternEdit::Insert(i, sym(symbol)?))
            .map_err(err)
    }

    fn delete_pattern(&mut self, i: usize) -> PyResult<()> {
        self.inner.edit_pattern(PatternEdit::Delete(i)).map_err(err)
    }

    fn query(&mut self) -> bool {
        self.inner.query().matched
    }

    fn count(&mut self) -> u64 {
        self.inner.query().count.unwrap_or(0)
    }

    #[getter]
    fn text(&self) -> String {
        show(self.inner.text())
    }

    #[getter]
    fn pattern(&self) -> String {
        show(&self.inner.pattern())
    }

    fn counters<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, self.inner.counters())
    }
}

/// Matcher whose pattern wildcard positions never change.
#[pyclass]
struct SparseMatcher {
    inner: dynwild_core::SparseMatcher,
}

#[pymethods]
impl SparseMatcher {
    #[new]
    #[pyo3(signature = (text, pattern, seed = 0))]
    fn new(text: &str, pattern: &str, seed: u64) -> PyResult<Self> {
        let inner =
            dynwild_core::SparseMatcher::new(ascii(text)?, ascii(pattern)?, seed).map_err(err)?;
        Ok(Self { inner })
    }

    fn update_text(&mut self, i: usize, symbol: &str) -> PyResult<()> {
        self.inner.update_text(i, sym(symbol)?).map_err(err)
    }

    fn update_pattern(&mut self, i: usize, symbol: &str) -> PyResult<()> {
        self.inner.update_pattern(i, sym(symbol)?).map_err(err)
    }

    fn query(&mut self) -> bool {
        self.inner.query().matched
    }

    /// Windows recomputed by the last text update.
    fn last_refreshed(&self) -> Vec<usize> {
        self.inner.counters().last_refreshed.clone()
    }

    #[getter]
    fn text(&self) -> String {
        show(self.inner.text())
    }

    #[getter]
    fn pattern(&self) -> String {
        show(self.inner.pattern())
    }

    fn counters<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, self.inner.counters())
    }
}

/// Dynamic counter of gapped symbol pairs inside a range.
#[pyclass]
struct RangePair {
    inner: dynwild_core::RangePair,
}

#[pymethods]
impl RangePair {
    #[new]
    #[pyo3(signature = (sequence, alphabet, block_size = None, rebuild_threshold = None))]
    fn new(
        sequence: Vec<u32>,
        alphabet: u32,
        block_size: Option<usize>,
        rebuild_threshold: Option<usize>,
    ) -> PyResult<Self> {
        let mut config = RangePairConfig::for_length(sequence.len());
        if let Some(b) = block_size {
            config.block_size = b;
            config.rebuild_threshold = config.rebuild_threshold.min(b);
        }
        if let Some(d) = rebuild_threshold {
            config.rebuild_threshold = d;
        }
        let inner = dynwild_core::RangePair::new(&sequence, alphabet, config).map_err(err)?;
        Ok(Self { inner })
    }

    fn update(&mut self, pos: usize, symbol: u32) -> PyResult<()> {
        self.inner.update(pos, symbol).map_err(err)
    }

    /// Number of `i` in `[l, r - d - 1]` with `x[i] == a` and `x[i + d + 1] == b`.
    fn query(&mut self, l: usize, r: usize, a: u32, b: u32, d: usize) -> PyResult<u64> {
        self.inner.query(l, r, a, b, d).map_err(err)
    }

    #[getter]
    fn sequence(&self) -> Vec<u32> {
        self.inner.sequence().to_vec()
    }

    fn counters<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, self.inner.counters())
    }
}

/// Text and pattern templates of the Orthogonal Vectors reduction.
#[pyfunction]
fn ov_reduce(vectors: Vec<Vec<bool>>) -> PyResult<(String, Vec<String>)> {
    let red = hardness::reduce(&instance(vectors)?);
    Ok((
        show(&red.text),
        red.templates.iter().map(|t| show(t)).collect(),
    ))
}

#[pyfunction]
fn ov_brute(vectors: Vec<Vec<bool>>) -> PyResult<bool> {
    Ok(hardness::brute_force(&instance(vectors)?))
}

/// Solves through the general matcher; returns the answer with its counters.
#[pyfunction]
#[pyo3(signature = (vectors, seed = 0))]
fn ov_solve<'py>(
    py: Python<'py>,
    vectors: Vec<Vec<bool>>,
    seed: u64,
) -> PyResult<Bound<'py, PyAny>> {
    let outcome = hardness::solve_via_matcher(&instance(vectors)?, seed).map_err(err)?;
    to_py(py, &outcome)
}

#[pymodule]
fn dynwild(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<GeneralMatcher>()?;
    m.add_class::<TwoMatcher>()?;
    m.add_class::<SparseMatcher>()?;
    m.add_class::<RangePair>()?;
    m.add_function(wrap_pyfunction!(ov_reduce, m)?)?;
    m.add_function(wrap_pyfunction!(ov_brute, m)?)?;
    m.add_function(wrap_pyfunction!(ov_solve, m)?)?;
    Ok(())
}
