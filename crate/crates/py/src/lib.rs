//! Python bindings, imported as `tbcc`.

use std::collections::BTreeMap;
use std::path::Path;

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use tbcc::codec::{self, catalog, LlrPlanes, TorusGrid};
use tbcc::graph::{build_region_graph, build_tanner, RegionMode};
use tbcc::harness::{self, DecoderConfig, ExperimentPlan, PreparedDecoder};
use tbcc::spectrum::{self, BeastCaps};

fn value_err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn runtime_err(e: impl std::fmt::Display) -> PyErr {
    PyRuntimeError::new_err(e.to_string())
}

/// A rate-1/n code: kernels plus the information torus.
#[pyclass(name = "CodeSpec", module = "tbcc", frozen)]
#[derive(Clone)]
struct PyCodeSpec {
    inner: codec::CodeSpec,
}

#[pymethods]
impl PyCodeSpec {
    /// Kernels as row strings (`"11/10"`), over an `n1 x n2` torus.
    #[new]
    #[pyo3(signature = (kernels, n1 = 6, n2 = 6))]
    fn new(kernels: Vec<String>, n1: usize, n2: usize) -> PyResult<Self> {
        let rows: Vec<&str> = kernels.iter().map(String::as_str).collect();
        Ok(PyCodeSpec {
            inner: codec::CodeSpec::from_rows((n1, n2), &rows).map_err(value_err)?,
        })
    }

    #[staticmethod]
    fn catalog(name: &str) -> PyResult<Self> {
        catalog::get(name)
            .map(|inner| PyCodeSpec { inner })
            .ok_or_else(|| PyValueError::new_err(format!("unknown code {name:?}")))
    }

    /// Parses the `key: value` code-spec file format.
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        Ok(PyCodeSpec {
            inner: text.parse().map_err(value_err)?,
        })
    }

    fn with_info(&self, n1: usize, n2: usize) -> PyResult<Self> {
        Ok(PyCodeSpec {
            inner: self.inner.with_info(n1, n2).map_err(value_err)?,
        })
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    #[getter]
    fn info(&self) -> (usize, usize) {
        self.inner.info()
    }

    #[getter]
    fn support(&self) -> (usize, usize) {
        self.inner.support()
    }

    #[getter]
    fn rate(&self) -> f64 {
        self.inner.rate()
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        let (n1, n2) = self.inner.info();
        format!("CodeSpec({}, {n1}x{n2})", self.inner.kernel_summary())
    }
}

fn grid_rows(g: &TorusGrid) -> Vec<Vec<u8>> {
    (0..g.rows())
        .map(|r| (0..g.cols()).map(|c| g.get(r, c)).collect())
        .collect()
}

fn grid_from_rows(rows: Vec<Vec<u8>>) -> PyResult<TorusGrid> {
    let n1 = rows.len();
    let n2 = rows.first().map_or(0, Vec::len);
    if rows.iter().any(|r| r.len() != n2) {
        return Err(PyValueError::new_err("rows of unequal length"));
    }
    TorusGrid::from_bits(n1, n2, rows.concat()).map_err(value_err)
}

/// Validation report as a dict.
#[pyfunction]
fn validate<'py>(py: Python<'py>, spec: &PyCodeSpec) -> PyResult<Bound<'py, PyDict>> {
    let r = codec::validate_code(&spec.inner).map_err(runtime_err)?;
    let d = PyDict::new(py);
    d.set_item("valid", r.is_valid())?;
    d.set_item("nondegenerate", r.nondegenerate)?;
    d.set_item("common_divisor", r.common_divisor)?;
    d.set_item("invertible", r.invertible)?;
    d.set_item("inverse", r.inverse)?;
    d.set_item("delay", r.delay)?;
    d.set_item("parity_row_weights", r.parity_row_weights)?;
    d.set_item("parity_identity", r.parity_identity)?;
    Ok(d)
}

/// Encodes an information grid (list of rows); returns one grid per plane.
#[pyfunction]
fn encode(spec: &PyCodeSpec, info: Vec<Vec<u8>>) -> PyResult<Vec<Vec<Vec<u8>>>> {
    let v = codec::encode(&grid_from_rows(info)?, &spec.inner).map_err(value_err)?;
    Ok(v.planes.iter().map(grid_rows).collect())
}

/// `{weight: count}` up to `w_max`, by BEAST or brute force.
#[pyfunction]
#[pyo3(signature = (spec, w_max = 10, method = "beast"))]
fn weight_spectrum(
    spec: &PyCodeSpec,
    w_max: usize,
    method: &str,
) -> PyResult<BTreeMap<usize, u64>> {
    let s = match method {
        "beast" => spectrum::beast_spectrum(&spec.inner, w_max, BeastCaps::default()),
        "bruteforce" => spectrum::bruteforce_spectrum(&spec.inner, w_max),
        _ => return Err(PyValueError::new_err(format!("unknown method {method:?}"))),
    }
    .map_err(runtime_err)?;
    Ok(s.iter().collect())
}

#[pyfunction]
#[pyo3(signature = (spec, ebn0_db, w_max = 10))]
fn union_bound(spec: &PyCodeSpec, ebn0_db: f64, w_max: usize) -> PyResult<f64> {
    let s =
        spectrum::beast_spectrum(&spec.inner, w_max, BeastCaps::default()).map_err(runtime_err)?;
    Ok(spectrum::union_bound(&s, spec.inner.rate(), ebn0_db))
}

#[pyfunction]
fn sphere_packing_bound(n: usize, k: usize, ebn0_db: f64) -> PyResult<f64> {
    spectrum::sphere_packing_lower_bound(n, k, ebn0_db).map_err(value_err)
}

/// Transmits a random information word over BPSK/AWGN; returns
/// `(info, llr)` with the LLRs flat, plane by plane, row-major.
#[pyfunction]
#[pyo3(signature = (spec, ebn0_db, seed = 0))]
fn transmit(spec: &PyCodeSpec, ebn0_db: f64, seed: u64) -> PyResult<(Vec<Vec<u8>>, Vec<f64>)> {
    let cfg = harness::ChannelConfig::new(ebn0_db, spec.inner.rate(), seed).map_err(value_err)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (n1, n2) = spec.inner.info();
    let u = TorusGrid::random(n1, n2, &mut rng);
    let v = codec::encode(&u, &spec.inner).map_err(value_err)?;
    Ok((
        grid_rows(&u),
        harness::awgn_bpsk(&v, &cfg, &mut rng).to_flat(),
    ))
}

/// Decodes flat LLRs to an information grid. `decoder` is one of
/// `viterbi`, `exhaustive`, `trellis2d`, `lbp`, `modified_lbp`, `gbp`,
/// each with default settings.
#[pyfunction]
#[pyo3(signature = (spec, llr, decoder = "viterbi", seed = 0))]
fn decode(spec: &PyCodeSpec, llr: Vec<f64>, decoder: &str, seed: u64) -> PyResult<Vec<Vec<u8>>> {
    let cfg: DecoderConfig = toml::from_str(&format!("kind = {decoder:?}"))
        .map_err(|_| PyValueError::new_err(format!("unknown decoder {decoder:?}")))?;
    let (n1, n2) = spec.inner.info();
    let planes = LlrPlanes::from_flat(spec.inner.n(), n1, n2, &llr).map_err(value_err)?;
    let dec = PreparedDecoder::new(&spec.inner, &cfg).map_err(value_err)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(1);
    Ok(grid_rows(
        &dec.decode(&planes, &mut rng).map_err(runtime_err)?.info,
    ))
}

/// GBP regions as `(vars, layer, counting_number)` tuples.
#[pyfunction]
#[pyo3(signature = (spec, mode = "modified"))]
fn regions(spec: &PyCodeSpec, mode: &str) -> PyResult<Vec<(Vec<usize>, usize, i64)>> {
    let mode: RegionMode = mode.parse().map_err(PyValueError::new_err)?;
    let h = codec::build_parity_check(&spec.inner).map_err(runtime_err)?;
    let rg = build_region_graph(&build_tanner(&h), mode);
    Ok(rg
        .regions
        .into_iter()
        .map(|r| (r.vars, r.layer, r.counting))
        .collect())
}

/// Runs a plan (TOML text) and returns the WER CSV. Relative paths in the
/// plan resolve against `base_dir`.
#[pyfunction]
#[pyo3(signature = (plan, base_dir = "."))]
fn simulate(py: Python<'_>, plan: &str, base_dir: &str) -> PyResult<String> {
    let resolved = ExperimentPlan::from_toml(plan)
        .and_then(|p| p.resolve(Path::new(base_dir)))
        .map_err(value_err)?;
    let curve = py
        .detach(|| harness::run_wer(&resolved))
        .map_err(runtime_err)?;
    Ok(curve.to_csv())
}

#[pymodule]
#[pyo3(name = "tbcc")]
fn tbcc_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyCodeSpec>()?;
    m.add_function(wrap_pyfunction!(validate, m)?)?;
    m.add_function(wrap_pyfunction!(encode, m)?)?;
    m.add_function(wrap_pyfunction!(weight_spectrum, m)?)?;
    m.add_function(wrap_pyfunction!(union_bound, m)?)?;
    m.add_function(wrap_pyfunction!(sphere_packing_bound, m)?)?;
    m.add_function(wrap_pyfunction!(transmit, m)?)?;
    m.add_function(wrap_pyfunction!(decode, m)?)?;
    m.add_function(wrap_pyfunction!(regions, m)?)?;
    m.add_function(wrap_pyfunction!(simulate, m)?)?;
    Ok(())
}
