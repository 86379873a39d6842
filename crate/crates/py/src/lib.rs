//! Python bindings: `import pyccc`.

use std::sync::Arc;

use ccc_core::chain_ideals::residue_order;
use ccc_core::codes::code_count_for;
use ccc_core::field::parse_binary_literal;
use ccc_core::{self as core, Codeword, Decomposition as CoreDecomposition, FieldSpec as CoreFieldSpec, ModulusTable};
use num_bigint::BigUint;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

fn err(e: core::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn field_for(m: u32, modulus: Option<&str>) -> PyResult<CoreFieldSpec> {
    match modulus {
        Some(text) => CoreFieldSpec::new(m, parse_binary_literal(text).map_err(err)?).map_err(err),
        None => ModulusTable::from_env().and_then(|t| t.spec(m)).map_err(err),
    }
}

/// `F_{2^m}` with a fixed modulus; elements are bit integers.
#[pyclass(frozen)]
struct FieldSpec {
    inner: CoreFieldSpec,
}

#[pymethods]
impl FieldSpec {
    #[new]
    #[pyo3(signature = (m, modulus=None))]
    fn new(m: u32, modulus: Option<&str>) -> PyResult<Self> {
        Ok(FieldSpec { inner: field_for(m, modulus)? })
    }

    #[getter]
    fn m(&self) -> u32 {
        self.inner.m()
    }

    #[getter]
    fn modulus(&self) -> u32 {
        self.inner.modulus()
    }

    fn add(&self, a: u32, b: u32) -> u32 {
        self.inner.add_bits(a, b)
    }

    fn mul(&self, a: u32, b: u32) -> u32 {
        self.inner.mul_bits(a, b)
    }

    fn inv(&self, a: u32) -> PyResult<u32> {
        self.inner.inv_bits(a).ok_or_else(|| err(core::Error::NotInvertible))
    }

    fn __repr__(&self) -> String {
        format!("FieldSpec(m={}, modulus={:#b})", self.inner.m(), self.inner.modulus())
    }
}

/// Factorization of `x^n - 1`, idempotents and reciprocal data.
#[pyclass(frozen)]
struct Decomposition {
    inner: Arc<CoreDecomposition>,
}

#[pymethods]
impl Decomposition {
    #[new]
    #[pyo3(signature = (n, k, m=1, modulus=None))]
    fn new(n: usize, k: u32, m: u32, modulus: Option<&str>) -> PyResult<Self> {
        let field = field_for(m, modulus)?;
        Ok(Decomposition { inner: Arc::new(CoreDecomposition::new(field, n, k).map_err(err)?) })
    }

    #[getter]
    fn factors(&self) -> Vec<String> {
        self.inner.factorization.factors.iter().map(|f| f.to_string()).collect()
    }

    #[getter]
    fn degrees(&self) -> Vec<usize> {
        self.inner.factorization.degrees()
    }

    #[getter]
    fn idempotents(&self) -> Vec<String> {
        self.inner.idempotents.iter().map(|e| e.to_string()).collect()
    }

    /// 1-based reciprocal permutation.
    #[getter]
    fn rho(&self) -> Vec<usize> {
        self.inner.rho.iter().map(|j| j + 1).collect()
    }

    #[getter]
    fn lambda_(&self) -> usize {
        self.inner.lambda
    }

    fn report_json(&self) -> PyResult<String> {
        serde_json_string(&self.inner.report())
    }

    fn code_count(&self) -> BigUint {
        code_count_for(&self.inner)
    }

    fn selfdual_count(&self) -> PyResult<BigUint> {
        core::selfdual_count(&self.inner).map_err(err)
    }

    /// Self-dual codes, at most `limit` of them.
    #[pyo3(signature = (limit=None))]
    fn selfdual_codes(&self, limit: Option<usize>) -> PyResult<Vec<CyclicCode>> {
        let it = core::selfdual_enumerate(&self.inner).map_err(err)?;
        Ok(it.take(limit.unwrap_or(usize::MAX)).map(|inner| CyclicCode { inner }).collect())
    }

    /// All codes, at most `limit` of them.
    #[pyo3(signature = (limit=None))]
    fn codes(&self, limit: Option<usize>) -> PyResult<Vec<CyclicCode>> {
        let it = core::enumerate_codes(&self.inner).map_err(err)?;
        Ok(it.take(limit.unwrap_or(usize::MAX)).map(|inner| CyclicCode { inner }).collect())
    }

    fn sample(&self, seed: u64, count: usize) -> PyResult<Vec<CyclicCode>> {
        let codes = core::sample_codes(&self.inner, seed, count).map_err(err)?;
        Ok(codes.into_iter().map(|inner| CyclicCode { inner }).collect())
    }

    fn code_from_json(&self, text: &str) -> PyResult<CyclicCode> {
        let inner = core::CyclicCode::from_json(text, self.inner.clone()).map_err(err)?;
        Ok(CyclicCode { inner })
    }

    fn zero_code(&self) -> CyclicCode {
        CyclicCode { inner: core::CyclicCode::zero(self.inner.clone()) }
    }

    fn full_code(&self) -> CyclicCode {
        CyclicCode { inner: core::CyclicCode::full(self.inner.clone()) }
    }

    /// Runs the exhaustive oracle suite; returns the report as JSON.
    fn verify(&self) -> PyResult<String> {
        serde_json_string(&core::oracle::verify(&self.inner).map_err(err)?)
    }
}

/// A cyclic code named by its per-factor ideal descriptors.
#[pyclass(frozen)]
struct CyclicCode {
    inner: core::CyclicCode,
}

#[pymethods]
impl CyclicCode {
    fn to_json(&self) -> String {
        self.inner.to_json()
    }

    #[getter]
    fn log2_size(&self) -> u64 {
        self.inner.log2_size()
    }

    fn dual(&self) -> PyResult<CyclicCode> {
        Ok(CyclicCode { inner: self.inner.dual().map_err(err)? })
    }

    fn is_self_dual(&self) -> PyResult<bool> {
        self.inner.is_self_dual().map_err(err)
    }

    /// Codewords as lists of `2n` digit lists.
    #[pyo3(signature = (limit=None))]
    fn codewords(&self, limit: Option<u64>) -> PyResult<Vec<Vec<Vec<u32>>>> {
        Ok(core::expand_codewords(&self.inner, limit).map_err(err)?.map(|w| w.entries).collect())
    }

    fn contains(&self, word: Vec<Vec<u32>>) -> PyResult<bool> {
        self.inner.contains(&Codeword { entries: word }).map_err(err)
    }

    fn __eq__(&self, other: &CyclicCode) -> bool {
        self.inner == other.inner
    }

    fn __repr__(&self) -> String {
        format!("CyclicCode({})", self.inner.to_json())
    }
}

fn serde_json_string<T: serde::Serialize>(v: &T) -> PyResult<String> {
    serde_json::to_string(v).map_err(|e| PyValueError::new_err(e.to_string()))
}

#[pyfunction]
fn count_ideals(q: BigUint, k: u32) -> BigUint {
    core::count_ideals(&q, k)
}

#[pyfunction]
fn omega1(q: BigUint, k: u32) -> BigUint {
    core::omega1(&q, k)
}

#[pyfunction]
fn omega2(q: BigUint, k: u32) -> BigUint {
    core::omega2(&q, k)
}

#[pyfunction]
fn gamma(q: BigUint, k: u32) -> BigUint {
    core::gamma(&q, k)
}

/// Number of ideals of `K_j[u]/<u^k>` for a factor of degree `dj`.
#[pyfunction]
fn ideals_per_factor(m: u32, dj: usize, k: u32) -> BigUint {
    core::count_ideals(&residue_order(m, dj), k)
}

#[pyfunction]
#[pyo3(signature = (m, n, k))]
fn code_count(m: u32, n: usize, k: u32) -> PyResult<BigUint> {
    core::code_count(m, n, k).map_err(err)
}

/// Ideal descriptors as JSON strings, at most `limit` of them.
#[pyfunction]
#[pyo3(signature = (dj, m, k, limit=None))]
fn enumerate_ideals(dj: usize, m: u32, k: u32, limit: Option<usize>) -> PyResult<Vec<String>> {
    let it = core::enumerate_ideals(dj, m, k).map_err(err)?;
    Ok(it.take(limit.unwrap_or(usize::MAX)).map(|d| serde_json::to_string(&d).expect("descriptor serializes")).collect())
}

#[pymodule]
fn pyccc(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<FieldSpec>()?;
    m.add_class::<Decomposition>()?;
    m.add_class::<CyclicCode>()?;
    m.add_function(wrap_pyfunction!(count_ideals, m)?)?;
    m.add_function(wrap_pyfunction!(omega1, m)?)?;
    m.add_function(wrap_pyfunction!(omega2, m)?)?;
    m.add_function(wrap_pyfunction!(gamma, m)?)?;
    m.add_function(wrap_pyfunction!(ideals_per_factor, m)?)?;
    m.add_function(wrap_pyfunction!(code_count, m)?)?;
    m.add_function(wrap_pyfunction!(enumerate_ideals, m)?)?;
    Ok(())
}
