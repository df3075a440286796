//! Python bindings for `lucas-realize`.
//!
//! Sequence values cross the boundary as Python ints of any size.

use num_bigint::{BigInt, BigUint};
use pyo3::exceptions::{PyArithmeticError, PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

use ::lucas_realize::{arith, congruence, explore, realizability, recurrence, sft, Error};

fn to_py(err: Error) -> PyErr {
    match err {
        Error::Domain(_) | Error::Parse { .. } | Error::NotRealizable(_) => {
            PyValueError::new_err(err.to_string())
        }
        Error::Budget { .. } => PyArithmeticError::new_err(err.to_string()),
        Error::Invariant(_) => PyRuntimeError::new_err(err.to_string()),
    }
}

fn prefix(values: Vec<BigUint>) -> PyResult<realizability::SequencePrefix> {
    realizability::SequencePrefix::new(values).map_err(to_py)
}

fn fib_pair(a: u64, b: u64) -> PyResult<recurrence::FibPair> {
    recurrence::FibPair::new(a, b).map_err(to_py)
}

#[pyclass(name = "ZeroOneMatrix", frozen, from_py_object)]
#[derive(Clone)]
struct PyMatrix {
    inner: sft::ZeroOneMatrix,
}

#[pymethods]
impl PyMatrix {
    #[new]
    fn new(rows: Vec<Vec<u8>>) -> PyResult<Self> {
        Ok(PyMatrix {
            inner: sft::ZeroOneMatrix::new(&rows).map_err(to_py)?,
        })
    }

    /// Parses the matrix text format.
    #[staticmethod]
    fn from_text(text: &str) -> PyResult<Self> {
        Ok(PyMatrix {
            inner: text.parse().map_err(to_py)?,
        })
    }

    #[staticmethod]
    fn golden_mean() -> Self {
        PyMatrix {
            inner: sft::golden_mean_matrix(),
        }
    }

    #[staticmethod]
    fn kstep(k: usize) -> PyResult<Self> {
        Ok(PyMatrix {
            inner: sft::kstep_matrix(k).map_err(to_py)?,
        })
    }

    #[getter]
    fn size(&self) -> usize {
        self.inner.size()
    }

    fn rows(&self) -> Vec<Vec<u32>> {
        // widened so rows come back as lists, not bytes
        self.inner
            .rows()
            .into_iter()
            .map(|r| r.into_iter().map(u32::from).collect())
            .collect()
    }

    fn to_text(&self) -> String {
        self.inner.to_string()
    }

    fn trace_power(&self, n: u64) -> PyResult<BigUint> {
        sft::trace_power(&self.inner, n).map_err(to_py)
    }

    fn enumerate_periodic_points(&self, n: u64) -> PyResult<u64> {
        sft::enumerate_periodic_points(&self.inner, n).map_err(to_py)
    }

    fn least_period_counts(&self, max_n: usize) -> PyResult<Vec<BigUint>> {
        sft::least_period_counts(&self.inner, max_n).map_err(to_py)
    }

    fn trace_prefix(&self, max_n: usize) -> PyResult<Vec<BigUint>> {
        Ok(sft::trace_prefix(&self.inner, max_n)
            .map_err(to_py)?
            .into_values())
    }

    fn __repr__(&self) -> String {
        format!("ZeroOneMatrix({:?})", self.inner.rows())
    }

    fn __eq__(&self, other: &PyMatrix) -> bool {
        self.inner == other.inner
    }
}

#[pyclass(name = "RealizabilityReport", frozen)]
struct PyReport {
    inner: realizability::RealizabilityReport,
}

#[pymethods]
impl PyReport {
    #[getter]
    fn verdict(&self) -> &'static str {
        self.inner.verdict().as_str()
    }

    #[getter]
    fn passed(&self) -> bool {
        self.inner.passed()
    }

    #[getter]
    fn checked_up_to(&self) -> usize {
        self.inner.checked_up_to
    }

    #[getter]
    fn first_failure_n(&self) -> Option<usize> {
        self.inner.first_failure_n()
    }

    #[getter]
    fn failure_kind(&self) -> Option<&'static str> {
        self.inner.failure_kind().map(|k| k.as_str())
    }

    #[getter]
    fn failure_value(&self) -> Option<BigInt> {
        self.inner.failure_value().cloned()
    }

    fn __repr__(&self) -> String {
        format!("RealizabilityReport({})", self.inner)
    }
}

#[pyclass(name = "WitnessPermutation", frozen)]
struct PyWitness {
    inner: realizability::WitnessPermutation,
}

#[pymethods]
impl PyWitness {
    #[getter]
    fn domain_size(&self) -> usize {
        self.inner.domain_size()
    }

    #[getter]
    fn horizon(&self) -> usize {
        self.inner.horizon()
    }

    /// 1-based image table.
    fn images(&self) -> Vec<u32> {
        self.inner.images().to_vec()
    }

    fn cycles(&self) -> Vec<Vec<u32>> {
        self.inner.cycles()
    }

    /// `#{x : w^n(x) = x}` for `n = 1..horizon`.
    fn fixed_point_counts(&self) -> Vec<u64> {
        realizability::fixed_point_counts(&self.inner, self.inner.horizon())
    }

    fn verify(&self, values: Vec<BigUint>) -> PyResult<bool> {
        realizability::verify_witness(&self.inner, &prefix(values)?).map_err(to_py)
    }
}

#[pyfunction]
fn mobius(n: u64) -> PyResult<i8> {
    arith::mobius(n).map_err(to_py)
}

#[pyfunction]
fn divisors(n: u64) -> PyResult<Vec<u64>> {
    Ok(arith::divisors(n).map_err(to_py)?.as_slice().to_vec())
}

#[pyfunction]
fn mobius_inversion_sums(values: Vec<BigUint>) -> PyResult<Vec<BigInt>> {
    arith::mobius_inversion_sums(&values).map_err(to_py)
}

#[pyfunction]
fn primes_up_to(limit: u64) -> Vec<u64> {
    arith::primes_up_to(limit)
}

#[pyfunction]
fn fib(n: u64) -> BigUint {
    recurrence::fib(n)
}

#[pyfunction]
fn lucas(n: u64) -> PyResult<BigUint> {
    recurrence::lucas(n).map_err(to_py)
}

#[pyfunction]
fn fib_like(a: u64, b: u64, n: u64) -> PyResult<BigUint> {
    recurrence::fib_like(fib_pair(a, b)?, n).map_err(to_py)
}

#[pyfunction]
fn fib_like_prefix(a: u64, b: u64, length: usize) -> PyResult<Vec<BigUint>> {
    Ok(recurrence::fib_like_prefix(fib_pair(a, b)?, length)
        .map_err(to_py)?
        .into_values())
}

#[pyfunction]
fn kbonacci_prefix(seed: Vec<u64>, length: usize) -> PyResult<Vec<BigUint>> {
    let seed = recurrence::KStepSeed::new(seed).map_err(to_py)?;
    Ok(recurrence::kbonacci_prefix(&seed, length)
        .map_err(to_py)?
        .into_values())
}

#[pyfunction]
fn residue_stream(a: u64, b: u64, modulus: u64, count: usize) -> PyResult<Vec<u64>> {
    recurrence::residue_stream(fib_pair(a, b)?, modulus, count).map_err(to_py)
}

#[pyfunction]
fn check_exact_realizability(values: Vec<BigUint>) -> PyResult<PyReport> {
    Ok(PyReport {
        inner: realizability::check_exact_realizability(&prefix(values)?),
    })
}

#[pyfunction]
fn cycle_counts(values: Vec<BigUint>) -> PyResult<Vec<BigUint>> {
    Ok(realizability::cycle_counts(&prefix(values)?)
        .map_err(to_py)?
        .counts()
        .to_vec())
}

#[pyfunction]
fn build_witness(counts: Vec<BigUint>) -> PyResult<PyWitness> {
    let spec = realizability::CycleSpec::new(counts);
    Ok(PyWitness {
        inner: realizability::build_witness(&spec).map_err(to_py)?,
    })
}

#[pyfunction]
fn scale_sequence(values: Vec<BigUint>, factor: u64) -> PyResult<Vec<BigUint>> {
    Ok(realizability::scale_sequence(&prefix(values)?, factor)
        .map_err(to_py)?
        .into_values())
}

fn report_dict<'py>(
    py: Python<'py>,
    r: &congruence::CongruenceReport,
) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    d.set_item("identity_id", r.identity.as_str())?;
    d.set_item("context", r.context.to_string())?;
    d.set_item("modulus", r.modulus)?;
    d.set_item("lhs", r.lhs)?;
    d.set_item("rhs", r.rhs)?;
    d.set_item("holds", r.holds)?;
    Ok(d)
}

fn identity_from_name(name: &str) -> PyResult<congruence::IdentityId> {
    congruence::IdentityId::ALL
        .into_iter()
        .find(|id| id.as_str() == name)
        .ok_or_else(|| PyValueError::new_err(format!("unknown identity {name:?}")))
}

/// Runs one congruence sweep and returns its records as dicts.
#[pyfunction]
#[pyo3(signature = (identity, max_n=2000, max_prime=100_000, max_prime_power=1_000_000, max_product=100_000))]
fn congruence_sweep<'py>(
    py: Python<'py>,
    identity: &str,
    max_n: usize,
    max_prime: u64,
    max_prime_power: u64,
    max_product: u64,
) -> PyResult<Vec<Bound<'py, PyDict>>> {
    let bounds = congruence::SweepBounds {
        max_n,
        max_prime,
        max_prime_power,
        max_product,
    };
    let id = identity_from_name(identity)?;
    let reports = py
        .detach(|| congruence::sweep(id, &bounds))
        .map_err(to_py)?;
    reports.iter().map(|r| report_dict(py, r)).collect()
}

#[pyfunction]
fn obstruct<'py>(py: Python<'py>, a: u64, b: u64, horizon: usize) -> PyResult<Bound<'py, PyDict>> {
    let r = explore::obstruct(fib_pair(a, b)?, horizon).map_err(to_py)?;
    obstruction_dict(py, &r)
}

fn obstruction_dict<'py>(
    py: Python<'py>,
    r: &explore::ObstructionResult,
) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    d.set_item("a", r.seed.a())?;
    d.set_item("b", r.seed.b())?;
    d.set_item("status", r.status.as_str())?;
    d.set_item("first_failure_n", r.first_failure_n())?;
    d.set_item("obstructing_prime", r.obstructing_prime)?;
    Ok(d)
}

#[pyfunction]
fn scan_theorem<'py>(
    py: Python<'py>,
    a_max: u64,
    b_max: u64,
    horizon: usize,
) -> PyResult<Vec<Bound<'py, PyDict>>> {
    let grid = explore::scan_theorem(a_max, b_max, horizon).map_err(to_py)?;
    grid.iter().map(|r| obstruction_dict(py, r)).collect()
}

#[pyfunction]
fn kbonacci_realizable_seed(k: usize) -> PyResult<Vec<u64>> {
    Ok(explore::kbonacci_realizable_seed(k)
        .map_err(to_py)?
        .initial()
        .to_vec())
}

/// Survivor seeds of the order-`k` scan.
#[pyfunction]
fn kbonacci_scan(py: Python<'_>, k: usize, bound: u64, horizon: usize) -> PyResult<Vec<Vec<u64>>> {
    let result = py
        .detach(|| explore::kbonacci_scan(k, bound, horizon))
        .map_err(to_py)?;
    Ok(result
        .survivors
        .iter()
        .map(|s| s.initial().to_vec())
        .collect())
}

#[pymodule]
#[pyo3(name = "lucas_realize")]
fn lucas_realize_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyMatrix>()?;
    m.add_class::<PyReport>()?;
    m.add_class::<PyWitness>()?;
    m.add_function(wrap_pyfunction!(mobius, m)?)?;
    m.add_function(wrap_pyfunction!(divisors, m)?)?;
    m.add_function(wrap_pyfunction!(mobius_inversion_sums, m)?)?;
    m.add_function(wrap_pyfunction!(primes_up_to, m)?)?;
    m.add_function(wrap_pyfunction!(fib, m)?)?;
    m.add_function(wrap_pyfunction!(lucas, m)?)?;
    m.add_function(wrap_pyfunction!(fib_like, m)?)?;
    m.add_function(wrap_pyfunction!(fib_like_prefix, m)?)?;
    m.add_function(wrap_pyfunction!(kbonacci_prefix, m)?)?;
    m.add_function(wrap_pyfunction!(residue_stream, m)?)?;
    m.add_function(wrap_pyfunction!(check_exact_realizability, m)?)?;
    m.add_function(wrap_pyfunction!(cycle_counts, m)?)?;
    m.add_function(wrap_pyfunction!(build_witness, m)?)?;
    m.add_function(wrap_pyfunction!(scale_sequence, m)?)?;
    m.add_function(wrap_pyfunction!(congruence_sweep, m)?)?;
    m.add_function(wrap_pyfunction!(obstruct, m)?)?;
    m.add_function(wrap_pyfunction!(scan_theorem, m)?)?;
    m.add_function(wrap_pyfunction!(kbonacci_realizable_seed, m)?)?;
    m.add_function(wrap_pyfunction!(kbonacci_scan, m)?)?;
    Ok(())
}
