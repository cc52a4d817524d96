//! Python module `qnorm`: exact crossing statistics and 2n-norm evaluation.

use num_bigint::BigInt;
use num_complex::Complex64;
use pyo3::create_exception;
use pyo3::exceptions::{PyException, PyValueError};
use pyo3::prelude::*;

use qnorm_core::diagrams::{self as dg, Enumerator, PairingFamily};
use qnorm_core::exact::{HighComplex, QPolynomial, DEFAULT_PRECISION};
use qnorm_core::formulas::{self as fm, BTable, Multiplicity};
use qnorm_core::norms::{self as nm, CountSource, TaylorMethod};
use qnorm_core::Error;

create_exception!(qnorm, QnormError, PyException);
create_exception!(qnorm, CeilingError, QnormError);
create_exception!(qnorm, SingularPointError, QnormError);

fn to_py(e: Error) -> PyErr {
    match e {
        Error::CeilingExceeded { .. } => CeilingError::new_err(e.to_string()),
        Error::SingularPoint(_) => SingularPointError::new_err(e.to_string()),
        Error::InvalidArgument(_) | Error::NotParityReversing(..) | Error::Domain(_) => {
            PyValueError::new_err(e.to_string())
        }
        _ => QnormError::new_err(e.to_string()),
    }
}

fn family(name: &str) -> PyResult<PairingFamily> {
    name.parse()
        .map_err(|e: Error| PyValueError::new_err(e.to_string()))
}

fn enumerator(threads: Option<usize>) -> PyResult<Enumerator> {
    match threads {
        Some(t) => Enumerator::new(t).map_err(to_py),
        None => Ok(Enumerator::default()),
    }
}

fn dense(p: &QPolynomial) -> PyResult<Vec<BigInt>> {
    p.to_dense().map_err(to_py)
}

fn high(q: Complex64, precision: usize) -> HighComplex {
    HighComplex::from_f64(q.re, q.im, precision)
}

fn low(z: &HighComplex) -> Complex64 {
    let (re, im) = z.to_f64_pair();
    Complex64::new(re, im)
}

/// A perfect matching of `1..=2n` into two-element blocks.
#[pyclass(module = "qnorm", frozen)]
struct Pairing(dg::Pairing);

#[pymethods]
impl Pairing {
    #[new]
    fn new(blocks: Vec<(usize, usize)>) -> PyResult<Self> {
        dg::Pairing::new(blocks).map(Pairing).map_err(to_py)
    }

    #[getter]
    fn n(&self) -> usize {
        self.0.n()
    }

    fn blocks(&self) -> Vec<(usize, usize)> {
        self.0.blocks().to_vec()
    }

    fn crossing_number(&self) -> usize {
        dg::crossing_number(&self.0)
    }

    fn is_parity_reversing(&self) -> bool {
        self.0.is_parity_reversing()
    }

    fn is_connected(&self) -> bool {
        dg::is_connected(&self.0)
    }

    /// Supports of the connected components, in order of smallest point.
    fn components(&self) -> Vec<Vec<usize>> {
        dg::decompose(&self.0)
            .parts
            .into_iter()
            .map(|c| c.support)
            .collect()
    }

    fn to_permutation(&self) -> PyResult<Permutation> {
        dg::pairing_to_permutation(&self.0)
            .map(Permutation)
            .map_err(to_py)
    }

    fn __repr__(&self) -> String {
        format!("Pairing({})", self.0)
    }
}

/// A permutation of `1..=n` in one-line notation.
#[pyclass(module = "qnorm", frozen)]
struct Permutation(dg::Permutation);

#[pymethods]
impl Permutation {
    #[new]
    fn new(images: Vec<usize>) -> PyResult<Self> {
        dg::Permutation::new(images).map(Permutation).map_err(to_py)
    }

    fn images(&self) -> Vec<usize> {
        self.0.images().to_vec()
    }

    fn to_pairing(&self) -> Pairing {
        Pairing(dg::permutation_to_pairing(&self.0))
    }

    fn directed_crossing_number(&self) -> usize {
        dg::directed_crossing_number(&self.0)
    }

    fn __repr__(&self) -> String {
        format!("Permutation({})", self.0)
    }
}

/// Crossing histogram `{k: count}` of `family` in `"all"`, `"parity"`, `"connected"`.
#[pyfunction]
#[pyo3(signature = (n, family_name = "parity", threads = None))]
fn enumerate_histogram(
    py: Python<'_>,
    n: usize,
    family_name: &str,
    threads: Option<usize>,
) -> PyResult<Vec<(usize, BigInt)>> {
    let f = family(family_name)?;
    let e = enumerator(threads)?;
    let h = py.detach(|| e.histogram(n, f)).map_err(to_py)?;
    Ok(h.counts.into_iter().collect())
}

/// Coefficients of the all-pairings crossing polynomial, constant term first.
#[pyfunction]
fn touchard_riordan(n: usize) -> PyResult<Vec<BigInt>> {
    dense(&fm::touchard_riordan(n).map_err(to_py)?)
}

/// Coefficients of the directed-crossing polynomial of permutations.
#[pyfunction]
fn corteel_partition_function(n: usize) -> PyResult<Vec<BigInt>> {
    dense(&fm::corteel_partition_function(n).map_err(to_py)?)
}

/// `r(n, k)` from the closed forms (`printed=True` for the published ones).
#[pyfunction]
#[pyo3(signature = (n, k, printed = false))]
fn closed_form_r(n: usize, k: usize, printed: bool) -> PyResult<BigInt> {
    if printed {
        fm::printed_closed_form_r(n, k).map_err(to_py)
    } else {
        fm::closed_form_r(n, k).map_err(to_py)
    }
}

/// `r(n, k)` by convolution over noncrossing component layouts.
#[pyfunction]
#[pyo3(signature = (n, k, printed = false))]
fn r_via_decomposition(n: usize, k: usize, printed: bool) -> PyResult<BigInt> {
    let (table, mult) = if printed {
        (BTable::printed(), Multiplicity::BlockSize)
    } else {
        (BTable::corrected(), Multiplicity::ComponentType)
    };
    fm::r_via_decomposition(n, k, &table, mult).map_err(to_py)
}

/// Connected counts as `[(n, k, b)]`; `printed=True` for the published table.
#[pyfunction]
#[pyo3(signature = (printed = true))]
fn btable(printed: bool) -> Vec<(usize, usize, BigInt)> {
    let t = if printed {
        BTable::printed()
    } else {
        BTable::corrected()
    };
    t.entries().map(|(n, k, c)| (n, k, c.clone())).collect()
}

/// Semicircular 2n-norm at complex `q` (principal branch).
#[pyfunction]
#[pyo3(signature = (n, q, precision = DEFAULT_PRECISION))]
fn gamma_n(n: usize, q: Complex64, precision: usize) -> PyResult<Complex64> {
    Ok(low(&nm::gamma_n(n, &high(q, precision))
        .map_err(to_py)?
        .value))
}

/// Circular 2n-norm at complex `q` (principal branch), by enumeration.
#[pyfunction]
#[pyo3(signature = (n, q, precision = DEFAULT_PRECISION))]
fn lambda_n(py: Python<'_>, n: usize, q: Complex64, precision: usize) -> PyResult<Complex64> {
    let s = py
        .detach(|| nm::lambda_n(n, &high(q, precision)))
        .map_err(to_py)?;
    Ok(low(&s.value))
}

/// Taylor coefficients as `(numerator, denominator, value)`; `value` includes
/// the `C_n^(1/2n)` prefactor.
#[pyfunction]
#[pyo3(signature = (n, max_k, method = "faa", printed = false))]
fn taylor_coefficients(
    n: usize,
    max_k: usize,
    method: &str,
    printed: bool,
) -> PyResult<Vec<(BigInt, BigInt, f64)>> {
    let m = match method {
        "faa" => TaylorMethod::FaaDiBruno,
        "series" => TaylorMethod::SeriesLog,
        other => return Err(PyValueError::new_err(format!("unknown method {other:?}"))),
    };
    let source = if printed {
        CountSource::Printed
    } else {
        CountSource::Enumerated
    };
    let counts = nm::crossing_counts(n, max_k, source).map_err(to_py)?;
    let a = nm::taylor_coefficients_from_counts(n, &counts, m, DEFAULT_PRECISION).map_err(to_py)?;
    Ok(a.into_iter()
        .map(|c| {
            (
                c.rational_part.numer().clone(),
                c.rational_part.denom().clone(),
                c.float_value.to_f64(),
            )
        })
        .collect())
}

#[pyfunction]
fn a3_limit_probe(n: usize) -> PyResult<f64> {
    Ok(nm::a3_limit_probe(n).map_err(to_py)?.to_f64())
}

/// `a_11 / (-5n)`.
#[pyfunction]
#[pyo3(signature = (n, printed = false))]
fn a11_asymptote_probe(n: usize, printed: bool) -> PyResult<f64> {
    let source = if printed {
        CountSource::Printed
    } else {
        CountSource::Enumerated
    };
    Ok(nm::a11_asymptote_probe_from(n, source)
        .map_err(to_py)?
        .to_f64())
}

/// `|gamma_n(q) - 2 / sqrt(1 - q)|` over the grid.
#[pyfunction]
#[pyo3(signature = (q, grid, factored = false))]
fn semicircular_limit_probe(q: Complex64, grid: Vec<usize>, factored: bool) -> PyResult<Vec<f64>> {
    let branch = if factored {
        nm::Branch::Factored
    } else {
        nm::Branch::Principal
    };
    let e = nm::semicircular_limit_probe_with(&high(q, DEFAULT_PRECISION), &grid, branch)
        .map_err(to_py)?;
    Ok(e.into_iter().map(|(_, x)| x.to_f64()).collect())
}

/// `(lower, middle, upper, ok)` for the alternating-sum bound.
#[pyfunction]
fn alternating_sum_bounds_check(n: usize, q: Complex64) -> PyResult<(f64, f64, f64, bool)> {
    let c = nm::alternating_sum_bounds_check(n, &high(q, DEFAULT_PRECISION)).map_err(to_py)?;
    Ok((c.lower.to_f64(), c.mid.to_f64(), c.upper.to_f64(), c.ok))
}

/// Roots of `sum c_j q^j`; returns `(least, roots, residual)`.
#[pyfunction]
fn least_magnitude_root(coefficients: Vec<BigInt>) -> PyResult<(Complex64, Vec<Complex64>, f64)> {
    let r = nm::least_magnitude_root(&QPolynomial::from_coeffs(coefficients)).map_err(to_py)?;
    Ok((r.least, r.roots, r.residual))
}

#[pymodule]
fn qnorm(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    m.add("QnormError", m.py().get_type::<QnormError>())?;
    m.add("CeilingError", m.py().get_type::<CeilingError>())?;
    m.add(
        "SingularPointError",
        m.py().get_type::<SingularPointError>(),
    )?;
    m.add_class::<Pairing>()?;
    m.add_class::<Permutation>()?;
    m.add_function(wrap_pyfunction!(enumerate_histogram, m)?)?;
    m.add_function(wrap_pyfunction!(touchard_riordan, m)?)?;
    m.add_function(wrap_pyfunction!(corteel_partition_function, m)?)?;
    m.add_function(wrap_pyfunction!(closed_form_r, m)?)?;
    m.add_function(wrap_pyfunction!(r_via_decomposition, m)?)?;
    m.add_function(wrap_pyfunction!(btable, m)?)?;
    m.add_function(wrap_pyfunction!(gamma_n, m)?)?;
    m.add_function(wrap_pyfunction!(lambda_n, m)?)?;
    m.add_function(wrap_pyfunction!(taylor_coefficients, m)?)?;
    m.add_function(wrap_pyfunction!(a3_limit_probe, m)?)?;
    m.add_function(wrap_pyfunction!(a11_asymptote_probe, m)?)?;
    m.add_function(wrap_pyfunction!(semicircular_limit_probe, m)?)?;
    m.add_function(wrap_pyfunction!(alternating_sum_bounds_check, m)?)?;
    m.add_function(wrap_pyfunction!(least_magnitude_root, m)?)?;
    Ok(())
}
