//! Python bindings: `Tower` and `Series` wrap the f64 streams directly, and a
//! handful of module functions cover the exact-rational paths (values travel
//! as strings like "3/7" so nothing is rounded).

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use lazyder::apps::{compchain, lambert_w_series, lambert_w_tower, revchain, stirling_backsub, stirling_laplace};
use lazyder::cli::{eval_series_f64, eval_series_rat, eval_tower_f64, eval_tower_rat, tower_fn_rat};
use lazyder::dtower::{dvar, DTower};
use lazyder::expr::parse_expr;
use lazyder::field::{parse_rat, render_rat};
use lazyder::pseries::{dtower_to_ser, scompose, ser_to_dtower, sreverse, svar, Series as Ser};

fn perr(e: lazyder::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// An infinite derivative tower over f64: element k is the k-th derivative at
/// the expansion point.
#[pyclass(unsendable, skip_from_py_object)]
#[derive(Clone)]
struct Tower {
    inner: DTower<f64>,
}

#[pymethods]
impl Tower {
    /// Evaluate `expr` (in the variable x) at the point `at`.
    #[new]
    fn new(expr: &str, at: f64) -> PyResult<Self> {
        let e = parse_expr(expr).map_err(perr)?;
        Ok(Tower { inner: eval_tower_f64(&e, at).map_err(perr)? })
    }

    /// The identity tower x ↦ x at the given point: value, 1, 0, 0, ...
    #[staticmethod]
    fn var(at: f64) -> Self {
        Tower { inner: dvar(at) }
    }

    #[staticmethod]
    fn constant(c: f64) -> Self {
        Tower { inner: DTower::constant(c) }
    }

    /// First `n` derivatives (element 0 is the value).
    fn take(&self, n: usize) -> PyResult<Vec<f64>> {
        self.inner.take(n).map_err(perr)
    }

    fn value(&self) -> PyResult<f64> {
        self.inner.head().map_err(perr)
    }

    /// The derivative tower (shift by one).
    fn df(&self) -> Self {
        Tower { inner: self.inner.df() }
    }

    /// The Taylor series about the expansion point (divides by k!).
    fn to_series(&self) -> Series {
        Series { inner: dtower_to_ser(&self.inner) }
    }

    fn __add__(&self, other: &Tower) -> Self {
        Tower { inner: self.inner.add(&other.inner) }
    }

    fn __sub__(&self, other: &Tower) -> Self {
        Tower { inner: self.inner.sub(&other.inner) }
    }

    fn __mul__(&self, other: &Tower) -> Self {
        Tower { inner: self.inner.mul(&other.inner) }
    }

    fn __truediv__(&self, other: &Tower) -> Self {
        Tower { inner: self.inner.div(&other.inner) }
    }

    fn __neg__(&self) -> Self {
        Tower { inner: self.inner.neg() }
    }

    fn exp(&self) -> Self {
        Tower { inner: self.inner.exp() }
    }

    fn log(&self) -> Self {
        Tower { inner: self.inner.log() }
    }

    fn sqrt(&self) -> Self {
        Tower { inner: self.inner.sqrt() }
    }

    fn sin(&self) -> Self {
        Tower { inner: self.inner.sin() }
    }

    fn cos(&self) -> Self {
        Tower { inner: self.inner.cos() }
    }

    fn tan(&self) -> Self {
        Tower { inner: self.inner.tan() }
    }

    fn atan(&self) -> Self {
        Tower { inner: self.inner.atan() }
    }

    fn __repr__(&self) -> &'static str {
        "Tower(..)"
    }
}

/// A formal power series over f64.
#[pyclass(unsendable, skip_from_py_object)]
#[derive(Clone)]
struct Series {
    inner: Ser<f64>,
}

#[pymethods]
impl Series {
    /// Taylor expansion of `expr` about `center`.
    #[new]
    fn new(expr: &str, center: f64) -> PyResult<Self> {
        let e = parse_expr(expr).map_err(perr)?;
        Ok(Series { inner: eval_series_f64(&e, center).map_err(perr)? })
    }

    #[staticmethod]
    fn var() -> Self {
        Series { inner: svar() }
    }

    #[staticmethod]
    fn constant(c: f64) -> Self {
        Series { inner: Ser::constant(c) }
    }

    /// First `n` coefficients.
    fn coeffs(&self, n: usize) -> PyResult<Vec<f64>> {
        self.inner.to_list(n).map_err(perr)
    }

    /// Formal derivative.
    fn diff(&self) -> Self {
        Series { inner: self.inner.sdif() }
    }

    /// Formal antiderivative with constant term `c`.
    fn integrate(&self, c: f64) -> Self {
        Series { inner: Ser::sint(c, &self.inner) }
    }

    /// Substitute `inner` (which must have zero constant term) into self.
    fn compose(&self, inner: &Series) -> Self {
        Series { inner: scompose(&self.inner, &inner.inner) }
    }

    /// Compositional inverse; self must look like 0 + u1·x + ... with u1 != 0.
    fn reverse(&self) -> Self {
        Series { inner: sreverse(&self.inner) }
    }

    /// The derivative tower at the center (multiplies by k!).
    fn to_tower(&self) -> Tower {
        Tower { inner: ser_to_dtower(&self.inner) }
    }

    fn __add__(&self, other: &Series) -> Self {
        Series { inner: self.inner.add(&other.inner) }
    }

    fn __sub__(&self, other: &Series) -> Self {
        Series { inner: self.inner.sub(&other.inner) }
    }

    fn __mul__(&self, other: &Series) -> Self {
        Series { inner: self.inner.mul(&other.inner) }
    }

    fn __truediv__(&self, other: &Series) -> Self {
        Series { inner: self.inner.div(&other.inner) }
    }

    fn __neg__(&self) -> Self {
        Series { inner: self.inner.neg() }
    }

    fn exp(&self) -> Self {
        Series { inner: self.inner.exp() }
    }

    fn log(&self) -> Self {
        Series { inner: self.inner.log() }
    }

    fn sqrt(&self) -> Self {
        Series { inner: self.inner.sqrt() }
    }

    fn sin(&self) -> Self {
        Series { inner: self.inner.sin() }
    }

    fn cos(&self) -> Self {
        Series { inner: self.inner.cos() }
    }

    fn __repr__(&self) -> &'static str {
        "Series(..)"
    }
}

/// Exact derivatives of `expr` at the rational point `at` ("3/7", "-2", "0.25").
#[pyfunction]
fn eval_tower(expr: &str, at: &str, terms: usize) -> PyResult<Vec<String>> {
    let e = parse_expr(expr).map_err(perr)?;
    let x = parse_rat(at).map_err(perr)?;
    let t = eval_tower_rat(&e, &x).map_err(perr)?;
    Ok(t.take(terms).map_err(perr)?.iter().map(render_rat).collect())
}

/// Exact Taylor coefficients of `expr` about the rational point `center`.
#[pyfunction]
fn eval_series(expr: &str, center: &str, terms: usize) -> PyResult<Vec<String>> {
    let e = parse_expr(expr).map_err(perr)?;
    let x = parse_rat(center).map_err(perr)?;
    let s = eval_series_rat(&e, &x).map_err(perr)?;
    Ok(s.to_list(terms).map_err(perr)?.iter().map(render_rat).collect())
}

/// Derivative tower of the inverse of `expr`, expanded about y0 = expr(`at`);
/// element 0 is `at` itself.  Exact rationals.
#[pyfunction]
fn revert(expr: &str, at: &str, terms: usize) -> PyResult<Vec<String>> {
    let e = parse_expr(expr).map_err(perr)?;
    let y0 = parse_rat(at).map_err(perr)?;
    let r = revchain(tower_fn_rat(e), y0);
    Ok(r.take(terms).map_err(perr)?.iter().map(render_rat).collect())
}

/// Derivative tower of outer∘inner at the rational point `at`, exact.
#[pyfunction]
fn compose(outer: &str, inner: &str, at: &str, terms: usize) -> PyResult<Vec<String>> {
    let eo = parse_expr(outer).map_err(perr)?;
    let ei = parse_expr(inner).map_err(perr)?;
    let x = parse_rat(at).map_err(perr)?;
    let f = eval_tower_rat(&ei, &x).map_err(perr)?;
    let g = eval_tower_rat(&eo, &f.head().map_err(perr)?).map_err(perr)?;
    let out = compchain(&g, &f).take(terms).map_err(perr)?;
    Ok(out.iter().map(render_rat).collect())
}

/// Derivatives of Lambert W at 0: 0, 1, -2, 9, -64, 625, ...
#[pyfunction]
fn lambert_tower(terms: usize) -> PyResult<Vec<f64>> {
    lambert_w_tower().take(terms).map_err(perr)
}

/// Taylor coefficients of W about x0 = w0·e^w0.
#[pyfunction]
fn lambert_series(w0: f64, terms: usize) -> PyResult<Vec<f64>> {
    lambert_w_series(w0).to_list(terms).map_err(perr)
}

/// Stirling series coefficients, exact. `method` is "backsub" or "laplace".
#[pyfunction]
#[pyo3(signature = (terms, method = "backsub"))]
fn stirling(terms: usize, method: &str) -> PyResult<Vec<String>> {
    let coeffs = match method {
        "backsub" => stirling_backsub().to_list(terms).map_err(perr)?,
        "laplace" => {
            // the Laplace route produces s1, s2, ...; s0 = 1 by construction
            let mut v = vec![lazyder::field::rat_of(1, 1)];
            if terms > 1 {
                v.extend(stirling_laplace().take(terms - 1).map_err(perr)?);
            }
            v.truncate(terms);
            v
        }
        other => return Err(PyValueError::new_err(format!("unknown method: {other}"))),
    };
    Ok(coeffs.iter().map(render_rat).collect())
}

#[pymodule]
fn lazyder_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Tower>()?;
    m.add_class::<Series>()?;
    m.add_function(wrap_pyfunction!(eval_tower, m)?)?;
    m.add_function(wrap_pyfunction!(eval_series, m)?)?;
    m.add_function(wrap_pyfunction!(revert, m)?)?;
    m.add_function(wrap_pyfunction!(compose, m)?)?;
    m.add_function(wrap_pyfunction!(lambert_tower, m)?)?;
    m.add_function(wrap_pyfunction!(lambert_series, m)?)?;
    m.add_function(wrap_pyfunction!(stirling, m)?)?;
    Ok(())
}
