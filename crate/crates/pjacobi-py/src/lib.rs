//! Python bindings for `pjacobi`.

use num_complex::Complex64;
use pjacobi::limits::{self, ScalingResult, TMode};
use pjacobi::orthopoly;
use pjacobi::painleve::{self, PainleveParams, PainleveTrajectory, Sign};
use pjacobi::sampler;
use pjacobi::specfun;
use pjacobi::weight::{self, WeightSpec};
use pyo3::create_exception;
use pyo3::exceptions::{PyArithmeticError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

create_exception!(pjacobi_py, NumericalError, PyArithmeticError, "Numerical failure inside pjacobi.");

fn to_py(e: pjacobi::Error) -> PyErr {
    if e.is_input_error() {
        PyValueError::new_err(e.to_string())
    } else {
        NumericalError::new_err(e.to_string())
    }
}

trait IntoPy<T> {
    fn py(self) -> PyResult<T>;
}

impl<T> IntoPy<T> for pjacobi::Result<T> {
    fn py(self) -> PyResult<T> {
        self.map_err(to_py)
    }
}

/// The weight (1 − x²)^β (t² − x²)^α on (−1, 1), t ≥ 1.
#[pyclass(name = "Weight", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyWeight {
    inner: WeightSpec,
}

#[pymethods]
impl PyWeight {
    #[new]
    fn new(alpha: f64, beta: f64, t: f64) -> PyResult<Self> {
        Ok(PyWeight { inner: WeightSpec::new(alpha, beta, t).py()? })
    }

    /// Weight with t = cosh(s / (4n)).
    #[staticmethod]
    fn from_s(alpha: f64, beta: f64, s: f64, n: usize) -> PyResult<Self> {
        Ok(PyWeight { inner: WeightSpec::from_s(alpha, beta, s, n).py()? })
    }

    #[getter]
    fn alpha(&self) -> f64 {
        self.inner.alpha
    }

    #[getter]
    fn beta(&self) -> f64 {
        self.inner.beta
    }

    #[getter]
    fn t(&self) -> f64 {
        self.inner.t
    }

    #[getter]
    fn t_minus_1(&self) -> f64 {
        self.inner.t_minus_1()
    }

    #[getter]
    fn is_merged(&self) -> bool {
        self.inner.is_merged()
    }

    fn __call__(&self, x: f64) -> PyResult<f64> {
        weight::eval_weight(&self.inner, x).py()
    }

    fn __repr__(&self) -> String {
        format!("Weight(alpha={}, beta={}, t={})", self.inner.alpha, self.inner.beta, self.inner.t)
    }
}

/// Christoffel–Darboux kernel K_n for a weight.
#[pyclass(name = "KernelEvaluator", frozen)]
struct PyKernel {
    inner: orthopoly::KernelEvaluator,
}

#[pymethods]
impl PyKernel {
    #[new]
    fn new(weight: &PyWeight, n: usize) -> PyResult<Self> {
        Ok(PyKernel { inner: orthopoly::KernelEvaluator::new(&weight.inner, n).py()? })
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n
    }

    #[getter]
    fn weight(&self) -> PyWeight {
        PyWeight { inner: self.inner.spec.clone() }
    }

    /// K_n(x, y), using the confluent form near the diagonal.
    fn kernel(&self, py: Python<'_>, x: f64, y: f64) -> PyResult<f64> {
        py.detach(|| self.inner.kernel(x, y)).py()
    }

    fn kernel_diag(&self, x: f64) -> PyResult<f64> {
        self.inner.kernel_kn_diag(x).py()
    }

    /// √(w(x)w(y)) Σ_{k<n} p_k(x) p_k(y).
    fn kernel_direct_sum(&self, x: f64, y: f64) -> PyResult<f64> {
        self.inner.kernel_direct_sum(x, y).py()
    }

    /// Recurrence coefficients as a dict of lists; bsq[0] holds the mass μ₀.
    fn recurrence<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        let t = &self.inner.table;
        let d = PyDict::new(py);
        d.set_item("a", t.a.clone())?;
        d.set_item("bsq", t.bsq.clone())?;
        d.set_item("gamma", t.gamma.clone())?;
        d.set_item("mu0", t.mu0)?;
        Ok(d)
    }

    fn orthonormality_residual(&self, py: Python<'_>) -> PyResult<f64> {
        py.detach(|| orthopoly::orthonormality_residual(&self.inner.table, &self.inner.spec, self.inner.n)).py()
    }
}

fn scaling_dict<'py>(py: Python<'py>, r: &ScalingResult) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    d.set_item("regime", r.regime.as_str())?;
    match &r.grid {
        limits::Grid::Points(x) => d.set_item("x", x.clone())?,
        limits::Grid::Pairs(p) => {
            d.set_item("u", p.iter().map(|q| q.0).collect::<Vec<_>>())?;
            d.set_item("v", p.iter().map(|q| q.1).collect::<Vec<_>>())?;
        }
    }
    d.set_item("computed", r.computed.clone())?;
    d.set_item("reference", r.reference.clone())?;
    d.set_item("reference_alt", r.reference_alt.clone())?;
    d.set_item("max_abs_err", r.max_abs_err)?;
    d.set_item("max_rel_err", r.max_rel_err)?;
    d.set_item("max_abs_err_alt", r.max_abs_err_alt)?;
    d.set_item("n", r.meta.n)?;
    d.set_item("t", r.meta.t)?;
    d.set_item("s", r.meta.s)?;
    Ok(d)
}

/// (1/n) K_n(x, x) against the arcsine density.
#[pyfunction]
fn bulk_density<'py>(py: Python<'py>, kernel: &PyKernel, x: Vec<f64>) -> PyResult<Bound<'py, PyDict>> {
    let r = py.detach(|| limits::bulk_density_experiment(&kernel.inner, &x)).py()?;
    scaling_dict(py, &r)
}

/// Bulk scaling at x0 against the sine kernel.
#[pyfunction]
fn bulk_sine<'py>(py: Python<'py>, kernel: &PyKernel, x0: f64, uv: Vec<(f64, f64)>) -> PyResult<Bound<'py, PyDict>> {
    let r = py.detach(|| limits::bulk_sine_experiment(&kernel.inner, x0, &uv)).py()?;
    scaling_dict(py, &r)
}

/// Hard-edge scaling against the Bessel kernel of order β (t > 1) or α + β (t = 1).
#[pyfunction]
fn edge_bessel<'py>(py: Python<'py>, kernel: &PyKernel, uv: Vec<(f64, f64)>) -> PyResult<Bound<'py, PyDict>> {
    let mode = if kernel.inner.spec.is_merged() { TMode::TEqualsOne } else { TMode::FixedT };
    let r = py.detach(|| limits::edge_bessel_experiment(&kernel.inner, mode, &uv)).py()?;
    scaling_dict(py, &r)
}

/// Ψ-kernel proxy at n against the proxy at 2n.
#[pyfunction]
fn double_scaling<'py>(
    py: Python<'py>,
    alpha: f64,
    beta: f64,
    s: f64,
    n: usize,
    uv: Vec<(f64, f64)>,
) -> PyResult<Bound<'py, PyDict>> {
    let base = WeightSpec::new(alpha, beta, 2.0).py()?;
    let r = py.detach(|| limits::double_scaling_experiment(&base, s, n, &uv)).py()?;
    scaling_dict(py, &r)
}

/// Bessel-scaled proxy against J_β and J_{α+β} for each s.
#[pyfunction]
fn transition_scan<'py>(
    py: Python<'py>,
    alpha: f64,
    beta: f64,
    s: Vec<f64>,
    n: usize,
    uv: Vec<(f64, f64)>,
) -> PyResult<Vec<Bound<'py, PyDict>>> {
    let base = WeightSpec::new(alpha, beta, 2.0).py()?;
    let rs = py.detach(|| limits::transition_scan(&base, &s, n, &uv)).py()?;
    rs.iter().map(|r| scaling_dict(py, r)).collect()
}

#[pyfunction]
fn sine_kernel(delta: f64) -> f64 {
    limits::sine_kernel(delta)
}

#[pyfunction]
fn bessel_kernel(nu: f64, u: f64, v: f64) -> PyResult<f64> {
    limits::bessel_kernel(nu, u, v).py()
}

/// Solution of the Schlesinger system with derived Painlevé quantities.
#[pyclass(name = "Trajectory", frozen)]
struct PyTrajectory {
    inner: PainleveTrajectory,
}

#[pymethods]
impl PyTrajectory {
    #[getter]
    fn theta(&self) -> f64 {
        self.inner.params.theta
    }

    #[getter]
    fn gamma(&self) -> f64 {
        self.inner.params.gamma
    }

    #[getter]
    fn s(&self) -> Vec<f64> {
        self.inner.s_grid.clone()
    }

    #[getter]
    fn b(&self) -> Vec<f64> {
        self.inner.b.clone()
    }

    #[getter]
    fn y(&self) -> Vec<f64> {
        self.inner.y.clone()
    }

    #[getter]
    fn u(&self) -> Vec<f64> {
        self.inner.u.clone()
    }

    #[getter]
    fn sigma(&self) -> Vec<f64> {
        self.inner.sigma.clone()
    }

    #[getter]
    fn v(&self) -> Vec<f64> {
        self.inner.v.clone()
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    /// (b, y) from the dense interpolant.
    fn state_at(&self, s: f64) -> PyResult<(f64, f64)> {
        let d = self.inner.derived_at(s).py()?;
        Ok((d.b, d.y))
    }

    /// Maximum |residual| of each scalar equation over `refine` points per step.
    #[pyo3(signature = (refine = 4))]
    fn max_residuals<'py>(&self, py: Python<'py>, refine: usize) -> PyResult<Bound<'py, PyDict>> {
        let m = py.detach(|| self.inner.max_residuals(refine)).py()?;
        let d = PyDict::new(py);
        d.set_item("second_order", m.second_order)?;
        d.set_item("gpv", m.gpv)?;
        d.set_item("p3", m.p3)?;
        d.set_item("u_ode", m.u_ode)?;
        d.set_item("sigma_prime", m.sigma_prime)?;
        d.set_item("points", m.points)?;
        Ok(d)
    }

    fn identity_errors(&self) -> [f64; 3] {
        self.inner.identity_errors()
    }

    /// Max |shifted residual| of the Bäcklund image and the round-trip error.
    #[pyo3(signature = (plus = true, refine = 4))]
    fn backlund_check(&self, py: Python<'_>, plus: bool, refine: usize) -> PyResult<(f64, f64)> {
        let sign = if plus { Sign::Plus } else { Sign::Minus };
        py.detach(|| {
            let res = painleve::backlund_residual_profile(&self.inner, sign, refine)?;
            let rt = painleve::backlund_round_trip_error(&self.inner, sign)?;
            Ok((res.iter().map(|r| r.1.abs()).fold(0.0, f64::max), rt))
        })
        .py()
    }
}

/// Integrate from (s0, b0, y0) to s1 with relative tolerance `tol`.
#[pyfunction]
#[pyo3(signature = (theta, gamma, s0, s1, b0, y0, tol = 1e-10))]
fn integrate_schlesinger(
    py: Python<'_>,
    theta: f64,
    gamma: f64,
    s0: f64,
    s1: f64,
    b0: f64,
    y0: f64,
    tol: f64,
) -> PyResult<PyTrajectory> {
    let p = PainleveParams::new(theta, gamma).py()?;
    let inner = py.detach(|| painleve::integrate_schlesinger(&p, s0, s1, b0, y0, tol)).py()?;
    Ok(PyTrajectory { inner })
}

/// Bäcklund image (γ̃, b̃, ỹ) of the point (s, b, y).
#[pyfunction]
#[pyo3(signature = (theta, gamma, s, b, y, plus = true))]
fn backlund(theta: f64, gamma: f64, s: f64, b: f64, y: f64, plus: bool) -> PyResult<(f64, f64, f64)> {
    let p = PainleveParams::new(theta, gamma).py()?;
    let sign = if plus { Sign::Plus } else { Sign::Minus };
    let r = painleve::backlund(&p, s, b, y, sign).py()?;
    Ok((r.params.gamma, r.b, r.y))
}

/// Stokes multiplier, connection matrices and the cyclic-relation residual.
#[pyfunction]
fn monodromy<'py>(py: Python<'py>, theta: f64, gamma: f64) -> PyResult<Bound<'py, PyDict>> {
    let p = PainleveParams::new(theta, gamma).py()?;
    let md = painleve::monodromy_constants(&p).py()?;
    let cyc = painleve::verify_cyclic(&md, &p).py()?;
    let mat = |m: pjacobi::linalg::Mat2| -> [[Complex64; 2]; 2] { m.0 };
    let d = PyDict::new(py);
    d.set_item("s0", md.s0)?;
    d.set_item("e12", mat(md.e12))?;
    d.set_item("e0", mat(md.e0))?;
    d.set_item("c", md.c)?;
    d.set_item("branch", format!("{:?}", md.branch))?;
    d.set_item("cyclic_residual", cyc)?;
    Ok(d)
}

/// `reps` configurations of the determinantal process with kernel K_n, sorted per row.
#[pyfunction]
#[pyo3(signature = (kernel, reps, seed = 0))]
fn sample(py: Python<'_>, kernel: &PyKernel, reps: usize, seed: u64) -> PyResult<Vec<Vec<f64>>> {
    let run = py.detach(|| sampler::sample_dpp(&kernel.inner, seed, reps)).py()?;
    Ok(run.points)
}

#[pyfunction]
fn bessel_j(nu: f64, z: Complex64) -> PyResult<Complex64> {
    specfun::bessel_j(nu, z).py()
}

#[pyfunction]
fn bessel_i(nu: f64, z: Complex64) -> PyResult<Complex64> {
    specfun::bessel_i(nu, z).py()
}

#[pyfunction]
fn bessel_k(nu: f64, z: Complex64) -> PyResult<Complex64> {
    specfun::bessel_k(nu, z).py()
}

#[pyfunction]
fn hyp2f1(a: f64, b: f64, c: f64, z: Complex64) -> PyResult<Complex64> {
    specfun::hyp2f1(a, b, c, z).py()
}

#[pyfunction]
fn gamma(x: f64) -> f64 {
    specfun::gamma(x)
}

#[pymodule]
fn pjacobi_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("NumericalError", m.py().get_type::<NumericalError>())?;
    m.add_class::<PyWeight>()?;
    m.add_class::<PyKernel>()?;
    m.add_class::<PyTrajectory>()?;
    m.add_function(wrap_pyfunction!(bulk_density, m)?)?;
    m.add_function(wrap_pyfunction!(bulk_sine, m)?)?;
    m.add_function(wrap_pyfunction!(edge_bessel, m)?)?;
    m.add_function(wrap_pyfunction!(double_scaling, m)?)?;
    m.add_function(wrap_pyfunction!(transition_scan, m)?)?;
    m.add_function(wrap_pyfunction!(sine_kernel, m)?)?;
    m.add_function(wrap_pyfunction!(bessel_kernel, m)?)?;
    m.add_function(wrap_pyfunction!(integrate_schlesinger, m)?)?;
    m.add_function(wrap_pyfunction!(backlund, m)?)?;
    m.add_function(wrap_pyfunction!(monodromy, m)?)?;
    m.add_function(wrap_pyfunction!(sample, m)?)?;
    m.add_function(wrap_pyfunction!(bessel_j, m)?)?;
    m.add_function(wrap_pyfunction!(bessel_i, m)?)?;
    m.add_function(wrap_pyfunction!(bessel_k, m)?)?;
    m.add_function(wrap_pyfunction!(hyp2f1, m)?)?;
    m.add_function(wrap_pyfunction!(gamma, m)?)?;
    Ok(())
}
