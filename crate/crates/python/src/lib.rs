//! Python bindings: configs, log-domain magnitudes, the exact engine, the
//! closed forms, measurement limits and undecidability verdicts.

use num_complex::Complex64;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use spinbath_core::analytic::{self, ClockParams};
use spinbath_core::exact::{self, CouplingMode, EvolveOptions, DEFAULT_N_CAP};
use spinbath_core::limits::{self, MeasuringDevice};
use spinbath_core::undecidability::{self as und, FeasibilityThresholds};
use spinbath_core::{DensityMatrix2, Error};

fn err(e: Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn rho_rows(rho: &DensityMatrix2) -> [[Complex64; 2]; 2] {
    [[rho.get(0, 0), rho.get(0, 1)], [rho.get(1, 0), rho.get(1, 1)]]
}

#[pyclass(name = "QubitState", frozen, from_py_object)]
#[derive(Clone, Copy)]
struct PyQubitState(spinbath_core::QubitState);

#[pymethods]
impl PyQubitState {
    #[new]
    fn new(up: Complex64, down: Complex64) -> PyResult<Self> {
        spinbath_core::QubitState::new(up, down).map(Self).map_err(err)
    }

    /// cos(t)|↑⟩ + e^{iφ} sin(t)|↓⟩
    #[staticmethod]
    fn from_bloch(t: f64, phi: f64) -> Self {
        Self(spinbath_core::QubitState::from_bloch(t, phi))
    }

    #[staticmethod]
    fn plus() -> Self {
        Self(spinbath_core::QubitState::plus())
    }

    #[getter]
    fn up(&self) -> Complex64 {
        self.0.up()
    }

    #[getter]
    fn down(&self) -> Complex64 {
        self.0.down()
    }

    fn population_imbalance(&self) -> f64 {
        self.0.population_imbalance()
    }

    fn sx_expectation(&self) -> f64 {
        self.0.sx_expectation()
    }

    fn __repr__(&self) -> String {
        let (u, d) = (self.0.up(), self.0.down());
        format!("QubitState(({}{:+}j), ({}{:+}j))", u.re, u.im, d.re, d.im)
    }
}

#[pyclass(name = "ExperimentConfig", frozen, from_py_object)]
#[derive(Clone)]
struct PyConfig(spinbath_core::ExperimentConfig);

#[pymethods]
impl PyConfig {
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        spinbath_core::ExperimentConfig::from_json(text).map(Self).map_err(err)
    }

    /// `n` identical environment spins with coupling `f` (rad/s); electron
    /// defaults for the other fields.
    #[staticmethod]
    fn uniform(central: PyQubitState, env_state: PyQubitState, f: f64, n: usize, b_field: f64, tau: f64) -> PyResult<Self> {
        spinbath_core::ExperimentConfig::uniform(central.0, env_state.0, f, n, b_field, tau).map(Self).map_err(err)
    }

    fn to_json(&self) -> String {
        self.0.to_json()
    }

    fn with_n(&self, n: usize) -> PyResult<Self> {
        self.0.with_n(n).map(Self).map_err(err)
    }

    #[getter]
    fn n(&self) -> usize {
        self.0.n()
    }

    #[getter]
    fn tau(&self) -> f64 {
        self.0.tau
    }

    #[getter]
    fn t_total(&self) -> f64 {
        self.0.t_total
    }

    #[getter]
    fn central(&self) -> PyQubitState {
        PyQubitState(self.0.central)
    }

    fn omega_central(&self) -> f64 {
        self.0.omega_central()
    }

    fn omega_env(&self) -> f64 {
        self.0.omega_env()
    }

    fn zeeman_splitting(&self) -> f64 {
        self.0.zeeman_splitting()
    }

    fn __repr__(&self) -> String {
        format!("ExperimentConfig(n={}, tau={:e}, T_total={:e})", self.0.n(), self.0.tau, self.0.t_total)
    }
}

/// sign · 10^log10
#[pyclass(name = "LogMagnitude", frozen, from_py_object)]
#[derive(Clone, Copy)]
struct PyLogMagnitude(spinbath_core::LogMagnitude);

#[pymethods]
impl PyLogMagnitude {
    #[staticmethod]
    fn from_float(x: f64) -> PyResult<Self> {
        spinbath_core::LogMagnitude::from_f64(x).map(Self).map_err(err)
    }

    #[staticmethod]
    fn from_log10(sign: i8, log10: f64) -> PyResult<Self> {
        spinbath_core::LogMagnitude::from_log10(sign, log10).map(Self).map_err(err)
    }

    #[getter]
    fn sign(&self) -> i8 {
        self.0.sign()
    }

    /// log10 of the absolute value; -inf for zero.
    #[getter]
    fn log10(&self) -> f64 {
        self.0.log10()
    }

    /// Plain float; 0.0 or inf when out of range.
    fn __float__(&self) -> f64 {
        self.0.to_f64()
    }

    fn __mul__(&self, other: &Self) -> Self {
        Self(self.0 * other.0)
    }

    fn __add__(&self, other: &Self) -> Self {
        Self(self.0.add(&other.0))
    }

    fn __lt__(&self, other: &Self) -> bool {
        self.0 < other.0
    }

    fn __le__(&self, other: &Self) -> bool {
        self.0 <= other.0
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.0 == other.0
    }

    fn __repr__(&self) -> String {
        format!("LogMagnitude({})", self.0)
    }
}

#[pyclass(name = "Verdict", frozen, skip_from_py_object)]
#[derive(Clone, Copy)]
struct PyVerdict(und::UndecidabilityVerdict);

#[pymethods]
impl PyVerdict {
    #[getter]
    fn signal(&self) -> PyLogMagnitude {
        PyLogMagnitude(self.0.signal)
    }

    #[getter]
    fn floor(&self) -> PyLogMagnitude {
        PyLogMagnitude(self.0.floor)
    }

    #[getter]
    fn undecidable(&self) -> bool {
        self.0.is_undecidable()
    }

    #[getter]
    fn margin_log10(&self) -> Option<f64> {
        self.0.margin_log10
    }

    #[allow(clippy::wrong_self_convention)]
    fn to_json(&self) -> String {
        serde_json::to_string(&self.0).expect("verdict serializes")
    }

    fn __repr__(&self) -> String {
        format!("Verdict({:?}, margin_log10={:?})", self.0.verdict, self.0.margin_log10)
    }
}

/// Dense evolution; returns (reduced ρ, ⟨M⟩ in the lab frame, norm²).
#[pyfunction]
#[pyo3(signature = (cfg, dephasing = false, n_cap = DEFAULT_N_CAP))]
fn simulate(cfg: &PyConfig, dephasing: bool, n_cap: usize) -> PyResult<([[Complex64; 2]; 2], f64, f64)> {
    let coupling = if dephasing { CouplingMode::Dephasing } else { CouplingMode::Heisenberg };
    let rotating = EvolveOptions { interaction_picture: true, coupling, n_cap };
    let psi = exact::evolve_sequential(&cfg.0, &rotating).map_err(err)?;
    let lab = exact::evolve_sequential(&cfg.0, &EvolveOptions { interaction_picture: false, ..rotating }).map_err(err)?;
    Ok((rho_rows(&exact::partial_trace_env(&psi)), exact::expectation_global_m(&lab), psi.norm_sqr()))
}

#[pyfunction]
fn reduced_rho(cfg: &PyConfig) -> [[Complex64; 2]; 2] {
    rho_rows(&analytic::reduced_rho(&cfg.0))
}

#[pyfunction]
fn decoherence_factor(cfg: &PyConfig) -> Complex64 {
    analytic::decoherence_factor_z(&cfg.0)
}

#[pyfunction]
fn expectation_m_unitary(cfg: &PyConfig) -> f64 {
    analytic::expectation_m_unitary(&cfg.0)
}

/// Real-clock ⟨M⟩ with the clock taken from the config's τ and T_total.
#[pyfunction]
fn expectation_m_realclock(cfg: &PyConfig) -> PyResult<PyLogMagnitude> {
    analytic::expectation_m_realclock(&cfg.0, &ClockParams::for_config(&cfg.0)).map(PyLogMagnitude).map_err(err)
}

#[pyfunction]
fn expectation_collapsed_m(cfg: &PyConfig) -> f64 {
    exact::expectation_collapsed_m(&cfg.0)
}

/// (bound_quantum, bound_sr, bound_gr, binding floor)
#[pyfunction]
fn delta_theta_floor(mass: f64, radius: f64, duration: f64) -> PyResult<(f64, f64, f64, f64)> {
    let r = limits::delta_theta_floor(&MeasuringDevice::new(mass, radius, duration).map_err(err)?);
    Ok((r.bound_quantum, r.bound_sr, r.bound_gr, r.floor()))
}

#[pyfunction]
fn k_exponent(cfg: &PyConfig) -> f64 {
    und::k_exponent(&cfg.0)
}

#[pyfunction]
fn k_lower_bound(cfg: &PyConfig) -> PyResult<PyLogMagnitude> {
    und::k_lower_bound(&cfg.0).map(PyLogMagnitude).map_err(err)
}

/// Feasibility conditions a–c as (pass_a, pass_b, pass_c).
#[pyfunction]
fn feasibility(cfg: &PyConfig) -> (bool, bool, bool) {
    let r = und::feasibility_check(&cfg.0, &FeasibilityThresholds::default());
    (r.cond_a.pass, r.cond_b.pass, r.cond_c.pass)
}

#[pyfunction]
fn verdict_for_k(k: f64, dtheta: f64, n: u64) -> PyResult<PyVerdict> {
    und::verdict_for_k(k, dtheta, n).map(PyVerdict).map_err(err)
}

#[pyfunction]
fn decide(cfg: &PyConfig, dtheta: f64) -> PyResult<PyVerdict> {
    und::decide(&cfg.0, &ClockParams::for_config(&cfg.0), dtheta).map(PyVerdict).map_err(err)
}

#[pyfunction]
fn local_undecidability(cfg: &PyConfig, dtheta: f64) -> PyResult<PyVerdict> {
    und::local_undecidability(&cfg.0, dtheta).map(PyVerdict).map_err(err)
}

/// Smallest undecidable N up to `n_max` as (quintic, linear); None if not reached.
#[pyfunction]
fn crossover_n(cfg: &PyConfig, dtheta: f64, n_max: u64) -> PyResult<(Option<u64>, Option<u64>)> {
    let r = und::crossover_n(&cfg.0, dtheta, n_max).map_err(err)?;
    Ok((r.quintic, r.linear))
}

#[pymodule]
fn spinbath(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyQubitState>()?;
    m.add_class::<PyConfig>()?;
    m.add_class::<PyLogMagnitude>()?;
    m.add_class::<PyVerdict>()?;
    m.add_function(wrap_pyfunction!(simulate, m)?)?;
    m.add_function(wrap_pyfunction!(reduced_rho, m)?)?;
    m.add_function(wrap_pyfunction!(decoherence_factor, m)?)?;
    m.add_function(wrap_pyfunction!(expectation_m_unitary, m)?)?;
    m.add_function(wrap_pyfunction!(expectation_m_realclock, m)?)?;
    m.add_function(wrap_pyfunction!(expectation_collapsed_m, m)?)?;
    m.add_function(wrap_pyfunction!(delta_theta_floor, m)?)?;
    m.add_function(wrap_pyfunction!(k_exponent, m)?)?;
    m.add_function(wrap_pyfunction!(k_lower_bound, m)?)?;
    m.add_function(wrap_pyfunction!(feasibility, m)?)?;
    m.add_function(wrap_pyfunction!(verdict_for_k, m)?)?;
    m.add_function(wrap_pyfunction!(decide, m)?)?;
    m.add_function(wrap_pyfunction!(local_undecidability, m)?)?;
    m.add_function(wrap_pyfunction!(crossover_n, m)?)?;
    m.add("CONSTANTS_VERSION", spinbath_core::constants::CONSTANTS_VERSION)?;
    Ok(())
}
