//! Python bindings: `import logaesthetic`.

use std::f64::consts::PI;

use logaesthetic::isoptic::{self, IsopticConfig};
use logaesthetic::lcg::{self, DEFAULT_TOLERANCE};
use logaesthetic::numerics;
use logaesthetic::{Error, PlanePoint, QuadratureConfig};
use pyo3::exceptions::{PyArithmeticError, PyOSError, PyValueError};
use pyo3::prelude::*;

fn to_py(e: Error) -> PyErr {
    match e {
        Error::OutOfDomain { .. }
        | Error::InvalidParameter(_)
        | Error::DegenerateAngle(_)
        | Error::EmptyDomain
        | Error::NoLcg
        | Error::SingularTarget
        | Error::InvalidPolyline(_) => PyValueError::new_err(e.to_string()),
        Error::Io(_) => PyOSError::new_err(e.to_string()),
        _ => PyArithmeticError::new_err(e.to_string()),
    }
}

fn xy(p: PlanePoint) -> (f64, f64) {
    (p.x, p.y)
}

fn iso(delta: f64) -> PyResult<IsopticConfig> {
    IsopticConfig::new(delta).map_err(to_py)
}

fn cfg() -> QuadratureConfig {
    QuadratureConfig::default()
}

/// Log-aesthetic curve with shape parameter `alpha` (may be +-inf) and scale `lam`.
#[pyclass(name = "CurveParams", frozen, from_py_object)]
#[derive(Clone, Copy)]
struct PyCurveParams {
    inner: logaesthetic::CurveParams,
}

#[pymethods]
impl PyCurveParams {
    #[new]
    #[pyo3(signature = (alpha, lam = 1.0))]
    fn new(alpha: f64, lam: f64) -> PyResult<Self> {
        let inner = logaesthetic::CurveParams::new(alpha, lam).map_err(to_py)?;
        Ok(PyCurveParams { inner })
    }

    #[staticmethod]
    fn circle() -> Self {
        PyCurveParams {
            inner: logaesthetic::CurveParams::circle(),
        }
    }

    #[getter]
    fn alpha(&self) -> f64 {
        self.inner.alpha().to_f64()
    }

    #[getter]
    fn lam(&self) -> f64 {
        self.inner.lambda()
    }

    fn theta_bounds(&self) -> (Option<f64>, Option<f64>) {
        let d = self.inner.theta_bounds();
        (d.lower, d.upper)
    }

    fn arc_bounds(&self) -> (Option<f64>, Option<f64>) {
        let d = self.inner.arc_bounds();
        (d.lower, d.upper)
    }

    fn rho(&self, theta: f64) -> PyResult<f64> {
        self.inner.rho_of_theta(theta).map_err(to_py)
    }

    fn rho_of_s(&self, s: f64) -> PyResult<f64> {
        self.inner.rho_of_s(s).map_err(to_py)
    }

    fn theta_of_s(&self, s: f64) -> PyResult<f64> {
        self.inner.theta_of_s(s).map_err(to_py)
    }

    fn point(&self, theta: f64) -> PyResult<(f64, f64)> {
        self.inner.point_of_theta(theta, &cfg()).map(xy).map_err(to_py)
    }

    fn point_of_s(&self, s: f64) -> PyResult<(f64, f64)> {
        self.inner.point_of_s(s, &cfg()).map(xy).map_err(to_py)
    }

    fn closed_form_point(&self, theta: f64) -> PyResult<Option<(f64, f64)>> {
        Ok(self.inner.closed_form_point(theta).map_err(to_py)?.map(xy))
    }

    fn evolute_point(&self, theta: f64) -> PyResult<(f64, f64)> {
        self.inner.evolute_point(theta, &cfg()).map(xy).map_err(to_py)
    }

    /// `n` rows of `(theta, x, y)` over `[theta_from, theta_to]`.
    fn sample(&self, theta_from: f64, theta_to: f64, n: usize) -> PyResult<Vec<(f64, f64, f64)>> {
        let p = self.inner.sample_curve(theta_from, theta_to, n, &cfg()).map_err(to_py)?;
        Ok(rows(&p))
    }

    fn __repr__(&self) -> String {
        format!("CurveParams({})", self.inner)
    }
}

fn rows(p: &logaesthetic::Polyline) -> Vec<(f64, f64, f64)> {
    p.params().iter().zip(p.points()).map(|(&t, q)| (t, q.x, q.y)).collect()
}

#[pyfunction]
fn fresnel(x: f64) -> (f64, f64) {
    numerics::fresnel(x)
}

#[pyfunction]
fn isoptic_point(curve: PyCurveParams, theta: f64, delta: f64) -> PyResult<(f64, f64)> {
    isoptic::isoptic_point(&curve.inner, theta, iso(delta)?, &cfg()).map(xy).map_err(to_py)
}

#[pyfunction]
fn isoptic_domain(curve: PyCurveParams, delta: f64) -> PyResult<(Option<f64>, Option<f64>)> {
    let d = isoptic::isoptic_domain(&curve.inner, iso(delta)?).map_err(to_py)?;
    Ok((d.lower, d.upper))
}

#[pyfunction]
fn sample_isoptic(
    curve: PyCurveParams,
    theta_from: f64,
    theta_to: f64,
    n: usize,
    delta: f64,
) -> PyResult<Vec<(f64, f64, f64)>> {
    let p = isoptic::sample_isoptic(&curve.inner, theta_from, theta_to, n, iso(delta)?, &cfg()).map_err(to_py)?;
    Ok(rows(&p))
}

/// Returns `(dist1, dist2, angle_error, passes)`.
#[pyfunction]
fn verify_isoptic_point(
    curve: PyCurveParams,
    theta: f64,
    delta: f64,
    candidate: (f64, f64),
) -> PyResult<(f64, f64, f64, bool)> {
    let c = PlanePoint::new(candidate.0, candidate.1);
    let r = isoptic::verify_isoptic_point(&curve.inner, theta, iso(delta)?, c, &cfg()).map_err(to_py)?;
    Ok((r.dist1, r.dist2, r.angle_error, r.passes(c)))
}

#[pyfunction]
fn lcg_point(curve: PyCurveParams, theta: f64) -> PyResult<(f64, f64)> {
    let p = lcg::lcg_point_lac(&curve.inner, theta).map_err(to_py)?;
    Ok((p.x, p.y))
}

#[pyfunction]
fn isoptic_lcg_point(curve: PyCurveParams, theta: f64, delta: f64) -> PyResult<(f64, f64)> {
    let p = lcg::isoptic_lcg_point(&curve.inner, theta, iso(delta)?, &cfg()).map_err(to_py)?;
    Ok((p.x, p.y))
}

#[pyfunction]
fn lcg_isoptic_alpha1_closed(lam: f64, delta: f64, theta: f64) -> PyResult<(f64, f64)> {
    let p = lcg::lcg_isoptic_alpha1_closed(lam, delta, theta).map_err(to_py)?;
    Ok((p.x, p.y))
}

#[pyfunction]
#[pyo3(signature = (curve, theta, delta, phi = PI))]
fn isoptic_slope(curve: PyCurveParams, theta: f64, delta: f64, phi: f64) -> PyResult<f64> {
    let s = lcg::isoptic_slope(&curve.inner, theta, iso(delta)?, phi, &cfg()).map_err(to_py)?;
    Ok(s.value)
}

#[pyclass(name = "AutoisopticReport", frozen, get_all)]
struct PyReport {
    verdict: String,
    limit_estimate: f64,
    delta: f64,
    phi: f64,
    tolerance: f64,
    /// `(theta, alpha_hat)` pairs.
    samples: Vec<(f64, f64)>,
}

#[pymethods]
impl PyReport {
    fn __repr__(&self) -> String {
        format!(
            "AutoisopticReport(verdict={:?}, limit_estimate={}, samples={})",
            self.verdict,
            self.limit_estimate,
            self.samples.len()
        )
    }
}

#[pyfunction]
#[pyo3(signature = (curve, delta, thetas, phi = PI, tol = DEFAULT_TOLERANCE))]
fn autoisoptic_report(curve: PyCurveParams, delta: f64, thetas: Vec<f64>, phi: f64, tol: f64) -> PyResult<PyReport> {
    let r = lcg::autoisoptic_report(&curve.inner, delta, &thetas, phi, tol, &cfg()).map_err(to_py)?;
    Ok(PyReport {
        verdict: r.verdict.to_string(),
        limit_estimate: r.limit_estimate,
        delta: r.delta,
        phi: r.phi,
        tolerance: r.tolerance,
        samples: r.samples.iter().map(|s| (s.theta, s.value)).collect(),
    })
}

/// Evolute LCG slopes at each theta; they should equal `-1/(alpha-2)`.
#[pyfunction]
#[pyo3(signature = (curve, thetas, phi = PI))]
fn autoevolute_check(curve: PyCurveParams, thetas: Vec<f64>, phi: f64) -> PyResult<Vec<f64>> {
    let s = lcg::autoevolute_check(&curve.inner, &thetas, phi).map_err(to_py)?;
    Ok(s.iter().map(|e| e.value).collect())
}

#[pymodule]
#[pyo3(name = "logaesthetic")]
fn logaesthetic_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyCurveParams>()?;
    m.add_class::<PyReport>()?;
    m.add_function(wrap_pyfunction!(fresnel, m)?)?;
    m.add_function(wrap_pyfunction!(isoptic_point, m)?)?;
    m.add_function(wrap_pyfunction!(isoptic_domain, m)?)?;
    m.add_function(wrap_pyfunction!(sample_isoptic, m)?)?;
    m.add_function(wrap_pyfunction!(verify_isoptic_point, m)?)?;
    m.add_function(wrap_pyfunction!(lcg_point, m)?)?;
    m.add_function(wrap_pyfunction!(isoptic_lcg_point, m)?)?;
    m.add_function(wrap_pyfunction!(lcg_isoptic_alpha1_closed, m)?)?;
    m.add_function(wrap_pyfunction!(isoptic_slope, m)?)?;
    m.add_function(wrap_pyfunction!(autoisoptic_report, m)?)?;
    m.add_function(wrap_pyfunction!(autoevolute_check, m)?)?;
    Ok(())
}
