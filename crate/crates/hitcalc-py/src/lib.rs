//! Python bindings for the hitcalc core.
//!
//! Build as an importable module with
//! `cargo build --release -p hitcalc-py --features extension-module`
//! and copy `libhitcalc_py.so` next to the interpreter as `hitcalc_py.so`.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use hitcalc::dual::{self, DualPolynomial};
use hitcalc::groups::{self, Group};
use hitcalc::hit::{cohit_basis_part, CohitBasis as CoreBasis, Part};
use hitcalc::kameko;
use hitcalc::monomial::WeightVector;
use hitcalc::poly::Polynomial;

fn err(e: hitcalc::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn parse_part(part: &str) -> PyResult<Part> {
    match part {
        "full" => Ok(Part::Full),
        "zero" => Ok(Part::Zero),
        "positive" => Ok(Part::Positive),
        other => Err(PyValueError::new_err(format!("unknown part {other:?}"))),
    }
}

/// A cohit basis for `(QP_n)_d`, or one of its part summands.
#[pyclass(name = "CohitBasis")]
struct PyCohitBasis {
    inner: CoreBasis,
}

#[pymethods]
impl PyCohitBasis {
    #[new]
    #[pyo3(signature = (n, d, part="full"))]
    fn new(n: usize, d: u64, part: &str) -> PyResult<Self> {
        let inner = cohit_basis_part(n, d, parse_part(part)?).map_err(err)?;
        Ok(PyCohitBasis { inner })
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    #[getter]
    fn d(&self) -> u64 {
        self.inner.d()
    }

    #[getter]
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    /// Admissible monomials as exponent tuples, in basis order.
    fn admissibles(&self) -> Vec<Vec<u64>> {
        self.inner
            .admissibles()
            .iter()
            .map(|m| m.exponents().to_vec())
            .collect()
    }

    /// Per-weight subquotient dimensions as `[(omega, dim), ...]`.
    fn weight_dims(&self) -> Vec<(Vec<u32>, usize)> {
        self.inner
            .weight_dims()
            .into_iter()
            .map(|(w, k)| (w.entries().to_vec(), k))
            .collect()
    }

    /// Whether the polynomial (parsed from `u1^3 * u2 + ...` syntax) is hit.
    fn is_hit(&self, poly: &str) -> PyResult<bool> {
        let f = Polynomial::parse(self.inner.n(), poly).map_err(err)?;
        self.inner.is_hit(&f).map_err(err)
    }

    /// Coordinates of the class of `poly` over the admissible basis.
    fn coords(&self, poly: &str) -> PyResult<Vec<bool>> {
        let f = Polynomial::parse(self.inner.n(), poly).map_err(err)?;
        self.inner.reduce_to_admissible(&f).map_err(err)
    }

    fn __repr__(&self) -> String {
        format!(
            "CohitBasis(n={}, d={}, part={:?}, dim={})",
            self.inner.n(),
            self.inner.d(),
            self.inner.part().as_str(),
            self.inner.dim()
        )
    }
}

/// Dimension of `(QP_n)_d` (part `full`, `zero`, or `positive`).
#[pyfunction]
#[pyo3(signature = (n, d, part="full"))]
fn cohit_dim(n: usize, d: u64, part: &str) -> PyResult<usize> {
    Ok(cohit_basis_part(n, d, parse_part(part)?).map_err(err)?.dim())
}

/// Kernel of the Kameko map from degree `source_degree`:
/// `(total, [(omega, dim), ...])`.
#[pyfunction]
fn kameko_kernel(n: usize, source_degree: u64) -> PyResult<(usize, Vec<(Vec<u32>, usize)>)> {
    let (_, rep) = kameko::kameko_kernel_restricted(n, source_degree).map_err(err)?;
    Ok((
        rep.total,
        rep.per_omega
            .into_iter()
            .map(|(w, k)| (w.entries().to_vec(), k))
            .collect(),
    ))
}

/// Whether the Kameko map out of degree `d` is an isomorphism.
#[pyfunction]
fn kameko_iso(n: usize, d: u64) -> PyResult<bool> {
    kameko::kameko_iso_check(n, d).map_err(err)
}

/// Invariants of `(QP_n)_d` under `group` (`"sigma"` or `"gl"`):
/// `(dim, [generator strings])`. With `omega`, the weight subquotient.
#[pyfunction]
#[pyo3(signature = (n, d, group, omega=None))]
fn invariants(
    n: usize,
    d: u64,
    group: &str,
    omega: Option<Vec<u32>>,
) -> PyResult<(usize, Vec<String>)> {
    let group = Group::parse(group).map_err(err)?;
    let omega = omega.map(WeightVector::new);
    let rep = groups::invariants(n, d, omega.as_ref(), group).map_err(err)?;
    Ok((rep.dim, rep.generators.iter().map(|g| g.to_string()).collect()))
}

/// Whether the class of `poly` is fixed by every generator of `group`.
#[pyfunction]
fn verify_invariant(n: usize, d: u64, poly: &str, group: &str) -> PyResult<bool> {
    let f = Polynomial::parse(n, poly).map_err(err)?;
    let group = Group::parse(group).map_err(err)?;
    groups::verify_invariant_class(&f, n, d, group).map_err(err)
}

/// Whether the dual polynomial (in `a1^(3) * a2^(1) + ...` syntax) is
/// annihilated by every positive-degree right Steenrod action.
#[pyfunction]
fn check_annihilated(n: usize, dual_poly: &str) -> PyResult<bool> {
    let f = DualPolynomial::parse(n, dual_poly).map_err(err)?;
    dual::is_annihilated(&f).map_err(err)
}

/// Kronecker pairing of a dual polynomial against a polynomial, mod 2.
#[pyfunction]
fn pairing(n: usize, dual_poly: &str, poly: &str) -> PyResult<u8> {
    let f = DualPolynomial::parse(n, dual_poly).map_err(err)?;
    let g = Polynomial::parse(n, poly).map_err(err)?;
    dual::pairing(&f, &g).map_err(err)
}

#[pymodule]
fn hitcalc_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyCohitBasis>()?;
    m.add_function(wrap_pyfunction!(cohit_dim, m)?)?;
    m.add_function(wrap_pyfunction!(kameko_kernel, m)?)?;
    m.add_function(wrap_pyfunction!(kameko_iso, m)?)?;
    m.add_function(wrap_pyfunction!(invariants, m)?)?;
    m.add_function(wrap_pyfunction!(verify_invariant, m)?)?;
    m.add_function(wrap_pyfunction!(check_annihilated, m)?)?;
    m.add_function(wrap_pyfunction!(pairing, m)?)?;
    Ok(())
}
