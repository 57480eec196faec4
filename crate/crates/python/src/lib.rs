//! Python module `qmod`: the main evaluators and identity checks of `qmod-core`.

use num_complex::Complex64;
use pyo3::create_exception;
use pyo3::exceptions::{PyArithmeticError, PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use qmod_core::modularity::{self as md, IdentityId};
use qmod_core::{qcore, raysum, specialfns, Error};

create_exception!(qmod, DomainError, PyValueError, "Input outside the domain of a function or identity.");
create_exception!(qmod, PoleError, DomainError, "Input too close to a singularity.");
create_exception!(qmod, ConvergenceError, PyRuntimeError, "A series, product or quadrature did not converge.");
create_exception!(qmod, NumericOverflowError, PyArithmeticError, "A result is not representable in double precision.");

fn py_err(e: Error) -> PyErr {
    match e {
        Error::Domain(m) => DomainError::new_err(m),
        Error::Pole(m) => PoleError::new_err(m),
        Error::Convergence(m) => ConvergenceError::new_err(m),
        Error::Overflow(m) => NumericOverflowError::new_err(m),
    }
}

fn ok<T>(r: qmod_core::Result<T>) -> PyResult<T> {
    r.map_err(py_err)
}

/// Stopping policy for products and series.
#[pyclass(name = "Truncation", from_py_object)]
#[derive(Clone, Copy)]
pub struct PyTruncation(qmod_core::Truncation);

#[pymethods]
impl PyTruncation {
    #[new]
    #[pyo3(signature = (term_tol = 1e-16, max_terms = 1_000_000))]
    fn new(term_tol: f64, max_terms: usize) -> PyResult<Self> {
        Ok(Self(ok(qmod_core::Truncation::new(term_tol, max_terms))?))
    }
    #[getter]
    fn term_tol(&self) -> f64 {
        self.0.term_tol
    }
    #[getter]
    fn max_terms(&self) -> usize {
        self.0.max_terms
    }
    fn __repr__(&self) -> String {
        format!("Truncation(term_tol={:e}, max_terms={})", self.0.term_tol, self.0.max_terms)
    }
}

/// Quadrature contract for ray integrals. An inadmissible direction is replaced by the
/// default chooser's where the evaluator allows it.
#[pyclass(name = "RaySpec", from_py_object)]
#[derive(Clone, Copy)]
pub struct PyRaySpec(qmod_core::RaySpec);

#[pymethods]
impl PyRaySpec {
    #[new]
    #[pyo3(signature = (direction_d = 0.0, rel_tol = 1e-11, panel_growth = 2.0, max_panels = 200))]
    fn new(direction_d: f64, rel_tol: f64, panel_growth: f64, max_panels: usize) -> PyResult<Self> {
        let spec = qmod_core::RaySpec { direction_d, rel_tol, panel_growth, max_panels };
        ok(spec.validate())?;
        Ok(Self(spec))
    }
    #[getter]
    fn direction_d(&self) -> f64 {
        self.0.direction_d
    }
    #[getter]
    fn rel_tol(&self) -> f64 {
        self.0.rel_tol
    }
    fn __repr__(&self) -> String {
        format!("RaySpec(direction_d={}, rel_tol={:e})", self.0.direction_d, self.0.rel_tol)
    }
}

/// `(tau, nu)` with every derived coordinate.
#[pyclass(name = "ModularPoint", from_py_object)]
#[derive(Clone, Copy)]
pub struct PyModularPoint(qmod_core::ModularPoint);

#[pymethods]
impl PyModularPoint {
    #[new]
    fn new(tau: Complex64, nu: Complex64) -> PyResult<Self> {
        Ok(Self(ok(qmod_core::ModularPoint::new(tau, nu))?))
    }
    /// `tau = alpha i`, `nu = xi alpha i`.
    #[staticmethod]
    fn from_real(alpha: f64, xi: f64) -> PyResult<Self> {
        Ok(Self(ok(qmod_core::ModularPoint::from_real(alpha, xi))?))
    }
    #[getter]
    fn tau(&self) -> Complex64 {
        self.0.tau
    }
    #[getter]
    fn nu(&self) -> Complex64 {
        self.0.nu
    }
    #[getter]
    fn q(&self) -> Complex64 {
        self.0.q
    }
    #[getter]
    fn x(&self) -> Complex64 {
        self.0.x
    }
    #[getter]
    fn tau_star(&self) -> Complex64 {
        self.0.tau_star
    }
    #[getter]
    fn nu_star(&self) -> Complex64 {
        self.0.nu_star
    }
    #[getter]
    fn q_star(&self) -> Complex64 {
        self.0.q_star
    }
    #[getter]
    fn x_star(&self) -> Complex64 {
        self.0.x_star
    }
    #[getter]
    fn s(&self) -> Complex64 {
        self.0.s
    }
    fn admissible_thm29(&self) -> bool {
        self.0.admissible_thm29()
    }
    fn __repr__(&self) -> String {
        format!("ModularPoint(tau={}, nu={})", self.0.tau, self.0.nu)
    }
}

/// One identity check at one input.
#[pyclass(name = "ResidualReport", skip_from_py_object)]
#[derive(Clone)]
pub struct PyResidualReport(md::ResidualReport);

#[pymethods]
impl PyResidualReport {
    #[getter]
    fn identity_id(&self) -> &'static str {
        self.0.identity_id.name()
    }
    #[getter]
    fn input(&self) -> String {
        self.0.input.to_string()
    }
    #[getter]
    fn lhs(&self) -> Complex64 {
        self.0.lhs
    }
    #[getter]
    fn rhs(&self) -> Complex64 {
        self.0.rhs
    }
    #[getter]
    fn abs_residual(&self) -> f64 {
        self.0.abs_residual
    }
    #[getter]
    fn rel_residual(&self) -> f64 {
        self.0.rel_residual
    }
    #[getter]
    fn tolerance(&self) -> f64 {
        self.0.tolerance
    }
    #[getter]
    fn passed(&self) -> bool {
        self.0.pass
    }
    /// `"pass"`, `"fail"` or `"skip"`.
    #[getter]
    fn status(&self) -> &'static str {
        match self.0.status {
            md::Status::Pass => "pass",
            md::Status::Fail => "fail",
            md::Status::Skip => "skip",
        }
    }
    #[getter]
    fn note(&self) -> Option<String> {
        self.0.note.clone()
    }
    fn __repr__(&self) -> String {
        format!(
            "ResidualReport({} {} {}, rel={:e})",
            self.status(),
            self.identity_id(),
            self.0.input,
            self.0.rel_residual
        )
    }
}

fn tr(t: Option<PyTruncation>) -> qmod_core::Truncation {
    t.map(|t| t.0).unwrap_or_default()
}

fn spec(s: Option<PyRaySpec>) -> qmod_core::RaySpec {
    s.map(|s| s.0).unwrap_or_default()
}

fn point(tau: Complex64, nu: Complex64) -> PyResult<qmod_core::ModularPoint> {
    ok(qmod_core::ModularPoint::new(tau, nu))
}

/// `(x;q)_inf` by the truncated product.
#[pyfunction]
#[pyo3(signature = (x, q, truncation = None))]
fn qpochhammer(x: Complex64, q: Complex64, truncation: Option<PyTruncation>) -> PyResult<Complex64> {
    Ok(ok(qcore::qpochhammer(x, q, &tr(truncation)))?.value)
}

/// `(x;q)_inf` by Euler's series.
#[pyfunction]
#[pyo3(signature = (x, q, truncation = None))]
fn euler_series(x: Complex64, q: Complex64, truncation: Option<PyTruncation>) -> PyResult<Complex64> {
    Ok(ok(qcore::euler_series(x, q, &tr(truncation)))?.value)
}

/// `(x;q)_inf` with `q = e^{2 pi i tau}`, `x = e^{2 pi i nu}` by the modular-type expansion.
#[pyfunction]
#[pyo3(signature = (tau, nu, truncation = None, ray = None))]
fn qpochhammer_modular(
    tau: Complex64,
    nu: Complex64,
    truncation: Option<PyTruncation>,
    ray: Option<PyRaySpec>,
) -> PyResult<Complex64> {
    ok(md::qpochhammer_modular(&point(tau, nu)?, &tr(truncation), &spec(ray)))
}

/// The completed Ramanujan form of `(x;q)_inf`.
#[pyfunction]
#[pyo3(signature = (tau, nu, truncation = None, ray = None))]
fn ramanujan_completed(
    tau: Complex64,
    nu: Complex64,
    truncation: Option<PyTruncation>,
    ray: Option<PyRaySpec>,
) -> PyResult<Complex64> {
    ok(md::ramanujan_completed(&point(tau, nu)?, &tr(truncation), &spec(ray)))
}

/// Jackson's q-Gamma function.
#[pyfunction]
#[pyo3(signature = (z, q, truncation = None))]
fn q_gamma(z: Complex64, q: Complex64, truncation: Option<PyTruncation>) -> PyResult<Complex64> {
    ok(qcore::q_gamma(z, q, &tr(truncation)))
}

/// Dedekind eta.
#[pyfunction]
#[pyo3(signature = (tau, truncation = None))]
fn eta(tau: Complex64, truncation: Option<PyTruncation>) -> PyResult<Complex64> {
    ok(qcore::eta(tau, &tr(truncation)))
}

/// `theta(q, x) = (x;q)_inf (q/x;q)_inf (q;q)_inf` with `q = e^{2 pi i tau}`.
#[pyfunction]
#[pyo3(signature = (tau, x, truncation = None))]
fn theta(tau: Complex64, x: Complex64, truncation: Option<PyTruncation>) -> PyResult<Complex64> {
    ok(qcore::theta_product_tau(tau, x, &tr(truncation)))
}

/// The dilogarithm `Li2(x)`.
#[pyfunction]
fn dilog(x: Complex64) -> Complex64 {
    specialfns::dilog(x)
}

/// Principal `log Gamma(z)`.
#[pyfunction]
fn log_gamma(z: Complex64) -> PyResult<Complex64> {
    ok(specialfns::log_gamma(z))
}

/// The Stirling-remainder term `G(tau, nu)`.
#[pyfunction]
fn big_g(tau: Complex64, nu: Complex64) -> PyResult<Complex64> {
    ok(raysum::big_g(&point(tau, nu)?))
}

/// The perturbation term `P(tau, nu)` along the default ray.
#[pyfunction]
fn perturbation(tau: Complex64, nu: Complex64) -> PyResult<Complex64> {
    ok(raysum::perturbation(&point(tau, nu)?))
}

/// `A_n(z)` by its integral representation.
#[pyfunction]
fn a_n(n: usize, z: Complex64) -> PyResult<Complex64> {
    let ray = ok(raysum::a_n_ray(z))?;
    ok(raysum::a_n(n, z, &ray))
}

/// `L1(tau, nu) = sum x q^n / (1 - x q^n)`.
#[pyfunction]
#[pyo3(signature = (tau, nu, truncation = None))]
fn lambert_l1(tau: Complex64, nu: Complex64, truncation: Option<PyTruncation>) -> PyResult<Complex64> {
    ok(qcore::lambert_l1(&point(tau, nu)?, &tr(truncation)))
}

/// `L2(tau, nu) = sum (n+1) x q^n / (1 - x q^n)`.
#[pyfunction]
#[pyo3(signature = (tau, nu, truncation = None))]
fn lambert_l2(tau: Complex64, nu: Complex64, truncation: Option<PyTruncation>) -> PyResult<Complex64> {
    ok(qcore::lambert_l2(&point(tau, nu)?, &tr(truncation)))
}

/// The almost-modular term `M(alpha, xi)`.
#[pyfunction]
#[pyo3(signature = (alpha, xi, truncation = None, ray = None))]
fn m_almost_modular(alpha: f64, xi: f64, truncation: Option<PyTruncation>, ray: Option<PyRaySpec>) -> PyResult<f64> {
    ok(raysum::m_almost_modular(alpha, xi, &spec(ray), &tr(truncation)))
}

/// `M(alpha, xi)` from its principal-value definition.
#[pyfunction]
#[pyo3(signature = (alpha, xi, n_terms = raysum::PV_DEFAULT_TERMS))]
fn pv_m_direct(alpha: f64, xi: f64, n_terms: usize) -> PyResult<f64> {
    ok(raysum::pv_m_direct(alpha, xi, n_terms))
}

/// `log (x;q)_inf - [log(1-x)/2 - Li2(x)/(2 pi alpha)]` at `q = e^{-2 pi alpha}`.
#[pyfunction]
fn q_to_one_remainder(alpha: f64, x: f64) -> PyResult<f64> {
    ok(md::q_to_one_remainder(alpha, x, &Default::default(), &Default::default()))
}

/// `(tau, N, theta_N, -P, error, bound_rhs)`.
type TableRow = (Complex64, usize, Complex64, Complex64, f64, f64);

/// Rows of the asymptotic-series table.
#[pyfunction]
#[pyo3(signature = (nu, taus, n_max, eps = std::f64::consts::FRAC_PI_4))]
fn theta_series_table(nu: Complex64, taus: Vec<Complex64>, n_max: usize, eps: f64) -> PyResult<Vec<TableRow>> {
    let rows = ok(md::theta_series_table(nu, &taus, n_max, eps, &Default::default()))?;
    Ok(rows.into_iter().map(|r| (r.tau, r.n, r.theta_partial, r.minus_p, r.error, r.bound_rhs)).collect())
}

/// Names of every identity accepted by [`check`].
#[pyfunction]
fn identities() -> Vec<&'static str> {
    IdentityId::ALL.iter().map(|i| i.name()).collect()
}

/// Runs an identity over its shipped default grid.
#[pyfunction]
#[pyo3(signature = (identity, tol = None))]
fn check(identity: &str, tol: Option<f64>) -> PyResult<Vec<PyResidualReport>> {
    let id: IdentityId = ok(identity.parse())?;
    let inputs = ok(md::default_inputs(id))?;
    let reports = md::run_check(id, &inputs, tol, &Default::default(), &Default::default());
    Ok(reports.into_iter().map(PyResidualReport).collect())
}

#[pymodule]
fn qmod(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("DomainError", m.py().get_type::<DomainError>())?;
    m.add("PoleError", m.py().get_type::<PoleError>())?;
    m.add("ConvergenceError", m.py().get_type::<ConvergenceError>())?;
    m.add("NumericOverflowError", m.py().get_type::<NumericOverflowError>())?;
    m.add_class::<PyTruncation>()?;
    m.add_class::<PyRaySpec>()?;
    m.add_class::<PyModularPoint>()?;
    m.add_class::<PyResidualReport>()?;
    m.add_function(wrap_pyfunction!(qpochhammer, m)?)?;
    m.add_function(wrap_pyfunction!(euler_series, m)?)?;
    m.add_function(wrap_pyfunction!(qpochhammer_modular, m)?)?;
    m.add_function(wrap_pyfunction!(ramanujan_completed, m)?)?;
    m.add_function(wrap_pyfunction!(q_gamma, m)?)?;
    m.add_function(wrap_pyfunction!(eta, m)?)?;
    m.add_function(wrap_pyfunction!(theta, m)?)?;
    m.add_function(wrap_pyfunction!(dilog, m)?)?;
    m.add_function(wrap_pyfunction!(log_gamma, m)?)?;
    m.add_function(wrap_pyfunction!(big_g, m)?)?;
    m.add_function(wrap_pyfunction!(perturbation, m)?)?;
    m.add_function(wrap_pyfunction!(a_n, m)?)?;
    m.add_function(wrap_pyfunction!(lambert_l1, m)?)?;
    m.add_function(wrap_pyfunction!(lambert_l2, m)?)?;
    m.add_function(wrap_pyfunction!(m_almost_modular, m)?)?;
    m.add_function(wrap_pyfunction!(pv_m_direct, m)?)?;
    m.add_function(wrap_pyfunction!(q_to_one_remainder, m)?)?;
    m.add_function(wrap_pyfunction!(theta_series_table, m)?)?;
    m.add_function(wrap_pyfunction!(identities, m)?)?;
    m.add_function(wrap_pyfunction!(check, m)?)?;
    Ok(())
}
