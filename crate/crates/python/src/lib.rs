//! Python bindings for `farey-lt-core`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use pyo3::create_exception;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use farey_lt_core::{arith, elliptic, farey, langtrotter, quadratic, Error};

create_exception!(farey_lt, FareyLtError, PyValueError);

fn py_err(e: Error) -> PyErr {
    FareyLtError::new_err(e.to_string())
}

trait IntoPy<T> {
    fn py(self) -> PyResult<T>;
}

impl<T> IntoPy<T> for farey_lt_core::Result<T> {
    fn py(self) -> PyResult<T> {
        self.map_err(py_err)
    }
}

fn poly_from(coeffs: Vec<BigInt>) -> arith::IntPolynomial {
    arith::IntPolynomial::new(coeffs)
}

fn poly_to(p: &arith::IntPolynomial) -> Vec<BigInt> {
    p.coeffs().to_vec()
}

#[pyfunction]
fn mobius_table(n: usize) -> PyResult<Vec<i8>> {
    Ok(arith::mobius_table(n).py()?.values().to_vec())
}

#[pyfunction]
fn primes_up_to(n: u64) -> Vec<u64> {
    arith::primes_up_to(n)
}

#[pyfunction]
fn is_prime(n: u64) -> bool {
    arith::is_prime(n)
}

#[pyfunction]
fn legendre_symbol(a: i64, p: u64) -> PyResult<i8> {
    arith::legendre_symbol(a, p).py()
}

#[pyfunction]
fn squarefree_kernel(n: i64) -> PyResult<i64> {
    arith::squarefree_kernel(n).py()
}

#[pyfunction]
#[pyo3(name = "lucas_v", signature = (n, p, q))]
fn lucas_v_py(n: u32, p: BigInt, q: BigInt) -> BigInt {
    arith::lucas_v(n, &p, &q)
}

/// Dickson polynomial coefficients, constant term first.
#[pyfunction]
fn dickson_poly(n: u32) -> Vec<BigInt> {
    poly_to(&arith::dickson_poly(n))
}

#[pyfunction]
fn poly_eval_mod(coeffs: Vec<BigInt>, x: i64, p: u64) -> u64 {
    arith::poly_eval_mod(&poly_from(coeffs), x, p)
}

#[pyfunction]
fn poly_pair_dependent(f: Vec<BigInt>, g: Vec<BigInt>) -> bool {
    arith::poly_pair_dependent(&poly_from(f), &poly_from(g))
}

#[pyfunction]
fn count_coprime_pairs(t: u64) -> PyResult<u64> {
    farey::count_coprime_pairs(t).py()
}

/// `(alpha, beta)` tuples in `(beta, alpha)` lexicographic order.
#[pyfunction]
fn enumerate_coprime_pairs(t: u64) -> PyResult<Vec<(u64, u64)>> {
    Ok(farey::enumerate_coprime_pairs(t)
        .py()?
        .map(|c| (c.alpha, c.beta))
        .collect())
}

/// Counts `R_{T,p}(v)` for `v = 0..p-1`.
#[pyfunction]
fn residue_histogram(t: u64, p: u64) -> PyResult<Vec<u64>> {
    Ok(farey::residue_histogram(t, p).py()?.counts)
}

#[pyfunction]
fn residue_histogram_oracle(t: u64, p: u64) -> PyResult<Vec<u64>> {
    Ok(farey::residue_histogram_oracle(t, p).py()?.counts)
}

#[pyfunction]
fn m_count(w: u64, p: u64, d: u64, v: u64) -> PyResult<u64> {
    farey::m_count(w, p, d, v).py()
}

#[pyfunction]
fn l1_discrepancy(t: u64, p: u64) -> PyResult<f64> {
    farey::l1_discrepancy(t, p).py()
}

#[pyfunction]
fn l2_m_deviation(w: u64, p: u64) -> PyResult<f64> {
    farey::l2_m_deviation(w, p).py()
}

/// `y^2 = x^3 + A(t) x + B(t)` with validated discriminant and non-constant `j`.
#[pyclass(frozen, name = "CurveFamily")]
struct PyCurveFamily {
    inner: elliptic::CurveFamily,
}

#[pymethods]
impl PyCurveFamily {
    #[new]
    fn new(a: Vec<BigInt>, b: Vec<BigInt>) -> PyResult<Self> {
        let inner = elliptic::family_validate(poly_from(a), poly_from(b)).py()?;
        Ok(Self { inner })
    }

    /// Parses `"A=<coeffs>;B=<coeffs>"`.
    #[staticmethod]
    fn parse(s: &str) -> PyResult<Self> {
        Ok(Self { inner: elliptic::CurveFamily::parse(s).py()? })
    }

    #[getter]
    fn a(&self) -> Vec<BigInt> {
        poly_to(self.inner.a_poly())
    }

    #[getter]
    fn b(&self) -> Vec<BigInt> {
        poly_to(self.inner.b_poly())
    }

    #[getter]
    fn delta(&self) -> Vec<BigInt> {
        poly_to(self.inner.delta_poly())
    }

    #[getter]
    fn id(&self) -> u64 {
        self.inner.id()
    }

    fn serialize(&self) -> String {
        self.inner.serialize()
    }

    /// `(a4, a6)` of the reduction at `v`, or `None` for bad reduction.
    fn specialize(&self, v: u64, p: u64) -> PyResult<Option<(u64, u64)>> {
        Ok(match elliptic::specialize_mod_p(&self.inner, v, p).py()? {
            elliptic::Reduction::Good(c) => Some((c.a4, c.a6)),
            elliptic::Reduction::Bad => None,
        })
    }

    /// `a_p(v)` for `v = 0..p-1`, `None` where the reduction is bad.
    fn trace_table(&self, p: u64) -> PyResult<Vec<Option<i32>>> {
        let table = elliptic::trace_table(&self.inner, p).py()?;
        Ok(table.entries.iter().map(|e| e.trace()).collect())
    }

    /// The trace table in the on-disk cache format.
    fn trace_cache(&self, p: u64) -> PyResult<String> {
        Ok(elliptic::trace_table(&self.inner, p).py()?.to_cache_string(&self.inner))
    }

    fn pi_a(&self, alpha: u64, beta: u64, a: i64, x: u64) -> PyResult<u64> {
        let tau = farey::CoprimePair::new(alpha, beta)
            .ok_or_else(|| FareyLtError::new_err(format!("({alpha}, {beta}) is not a coprime pair")))?;
        elliptic::pi_a(&self.inner, tau, a, x).py()
    }

    fn __repr__(&self) -> String {
        format!("CurveFamily({:?})", self.inner.serialize())
    }
}

#[pyfunction]
fn trace_of_frobenius(a4: i64, a6: i64, p: u64) -> PyResult<i32> {
    if p < 5 || !arith::is_prime(p) {
        return Err(FareyLtError::new_err(format!("p = {p} must be a prime >= 5")));
    }
    let curve = elliptic::SpecializedCurve::new(a4, a6, p)
        .ok_or_else(|| FareyLtError::new_err("curve is singular mod p"))?;
    Ok(elliptic::trace_of_frobenius(&curve))
}

#[pyclass(frozen, get_all, name = "ImaginaryQuadraticField")]
struct PyField {
    d: i64,
    disc: i64,
    class_number: u64,
    unit_count: u32,
}

#[pymethods]
impl PyField {
    fn __repr__(&self) -> String {
        format!(
            "ImaginaryQuadraticField(d={}, disc={}, class_number={}, unit_count={})",
            self.d, self.disc, self.class_number, self.unit_count
        )
    }
}

#[pyfunction]
fn field_of(d: i64) -> PyResult<PyField> {
    let f = quadratic::field_of(d).py()?;
    Ok(PyField { d: f.d, disc: f.disc, class_number: f.class_number, unit_count: f.unit_count })
}

#[pyfunction]
fn class_number(disc: i64) -> PyResult<u64> {
    quadratic::class_number(disc).py()
}

#[pyfunction]
fn lemma_poly(hw: u32) -> PyResult<Vec<BigInt>> {
    Ok(poly_to(&quadratic::lemma_poly(hw).py()?))
}

#[pyfunction]
fn frobenius_field(a_p: i64, p: u64) -> PyResult<i64> {
    quadratic::frobenius_field(a_p, p).py()
}

#[pyfunction]
fn lucas_lemma_check(a_p: i64, p: u64, hw: u32) -> PyResult<bool> {
    quadratic::lucas_lemma_check(a_p, p, hw).py()
}

#[pyclass(frozen, get_all, name = "AverageReport")]
struct PyAverageReport {
    family: String,
    family_id: u64,
    mode: String,
    x: u64,
    t_order: u64,
    total_direct: u64,
    total_swapped: u64,
    normalized: f64,
    envelope: f64,
    skipped_primes: u64,
    /// `(p, contribution_direct, contribution_swapped, good_v, bad_v)` per prime.
    rows: Vec<(u64, u64, u64, u64, u64)>,
    csv: String,
}

impl From<langtrotter::AverageReport> for PyAverageReport {
    fn from(r: langtrotter::AverageReport) -> Self {
        Self {
            csv: r.to_csv(),
            family: r.family,
            family_id: r.family_id,
            mode: r.mode.to_string(),
            x: r.x,
            t_order: r.t_order,
            total_direct: r.total_direct,
            total_swapped: r.total_swapped,
            normalized: r.normalized,
            envelope: r.envelope,
            skipped_primes: r.skipped_primes,
            rows: r
                .rows
                .iter()
                .map(|c| (c.p, c.contribution_direct, c.contribution_swapped, c.good_v, c.bad_v))
                .collect(),
        }
    }
}

#[pyfunction]
fn average_pi_a(family: &PyCurveFamily, a: i64, x: u64, t: u64) -> PyResult<PyAverageReport> {
    Ok(langtrotter::average_pi_a(&family.inner, a, x, t).py()?.into())
}

#[pyfunction]
fn average_pi_field(family: &PyCurveFamily, d: i64, x: u64, t: u64) -> PyResult<PyAverageReport> {
    Ok(langtrotter::average_pi_field(&family.inner, d, x, t).py()?.into())
}

#[pyclass(frozen, get_all, name = "ChebotarevReport")]
struct PyChebotarevReport {
    p: u64,
    ell: u64,
    counts: BTreeMap<u64, u64>,
    trace_counts: BTreeMap<i32, u64>,
    main_term: f64,
    max_abs_dev: f64,
    good_v: u64,
    ell_below_17: bool,
}

#[pyfunction]
fn chebotarev_counts(family: &PyCurveFamily, p: u64, ell: u64) -> PyResult<PyChebotarevReport> {
    let r = langtrotter::chebotarev_counts(&family.inner, p, ell).py()?;
    Ok(PyChebotarevReport {
        p: r.p,
        ell: r.ell,
        counts: r.counts,
        trace_counts: r.trace_counts,
        main_term: r.main_term,
        max_abs_dev: r.max_abs_dev,
        good_v: r.good_v,
        ell_below_17: r.ell_below_17,
    })
}

#[pyfunction]
fn theorem2_envelope(t: u64, x: u64, part: u8) -> PyResult<f64> {
    let part = langtrotter::EnvelopePart::try_from(part).py()?;
    Ok(langtrotter::theorem2_envelope(t, x, part))
}

/// Farey fractions in residue classes and averaged Lang-Trotter counts.
#[pymodule]
fn farey_lt(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("FareyLtError", m.py().get_type::<FareyLtError>())?;
    m.add_class::<PyCurveFamily>()?;
    m.add_class::<PyField>()?;
    m.add_class::<PyAverageReport>()?;
    m.add_class::<PyChebotarevReport>()?;

    m.add_function(wrap_pyfunction!(mobius_table, m)?)?;
    m.add_function(wrap_pyfunction!(primes_up_to, m)?)?;
    m.add_function(wrap_pyfunction!(is_prime, m)?)?;
    m.add_function(wrap_pyfunction!(legendre_symbol, m)?)?;
    m.add_function(wrap_pyfunction!(squarefree_kernel, m)?)?;
    m.add_function(wrap_pyfunction!(lucas_v_py, m)?)?;
    m.add_function(wrap_pyfunction!(dickson_poly, m)?)?;
    m.add_function(wrap_pyfunction!(poly_eval_mod, m)?)?;
    m.add_function(wrap_pyfunction!(poly_pair_dependent, m)?)?;

    m.add_function(wrap_pyfunction!(count_coprime_pairs, m)?)?;
    m.add_function(wrap_pyfunction!(enumerate_coprime_pairs, m)?)?;
    m.add_function(wrap_pyfunction!(residue_histogram, m)?)?;
    m.add_function(wrap_pyfunction!(residue_histogram_oracle, m)?)?;
    m.add_function(wrap_pyfunction!(m_count, m)?)?;
    m.add_function(wrap_pyfunction!(l1_discrepancy, m)?)?;
    m.add_function(wrap_pyfunction!(l2_m_deviation, m)?)?;

    m.add_function(wrap_pyfunction!(trace_of_frobenius, m)?)?;

    m.add_function(wrap_pyfunction!(field_of, m)?)?;
    m.add_function(wrap_pyfunction!(class_number, m)?)?;
    m.add_function(wrap_pyfunction!(lemma_poly, m)?)?;
    m.add_function(wrap_pyfunction!(frobenius_field, m)?)?;
    m.add_function(wrap_pyfunction!(lucas_lemma_check, m)?)?;

    m.add_function(wrap_pyfunction!(average_pi_a, m)?)?;
    m.add_function(wrap_pyfunction!(average_pi_field, m)?)?;
    m.add_function(wrap_pyfunction!(chebotarev_counts, m)?)?;
    m.add_function(wrap_pyfunction!(theorem2_envelope, m)?)?;
    Ok(())
}
