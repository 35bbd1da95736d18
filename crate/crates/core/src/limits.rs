//! Angular precision limits of spin-measuring devices and the propagation of
//! that irreducible tilt Δθ into measured observables and prepared states.
//!
//! All bounds carry coefficient 1: they are order-of-magnitude floors, and
//! the report returns the raw formula values.

use nalgebra::Matrix2;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::analytic::{decoherence_factor_z, expectation_m_realclock, real_clock_damping_exponent, ClockParams};
use crate::config::ExperimentConfig;
use crate::constants::PhysicalConstants;
use crate::error::{Error, Result};
use crate::logmag::{log_exp_neg, log_pow, LogMagnitude};
use crate::state::QubitState;

/// Above this tilt the first-order preparation formula is flagged.
pub const FIRST_ORDER_LIMIT: f64 = 0.1;

/// A rigid-rotator measuring apparatus.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct MeasuringDevice {
    /// Apparatus mass M, kg.
    pub mass: f64,
    /// Characteristic length R, m.
    pub radius: f64,
    /// Measurement duration τ, s.
    pub duration: f64,
}

impl MeasuringDevice {
    pub fn new(mass: f64, radius: f64, duration: f64) -> Result<Self> {
        for (name, v) in [("mass", mass), ("radius", radius), ("duration", duration)] {
            if !(v > 0.0) || !v.is_finite() {
                return Err(Error::config(name, format!("must be positive and finite, got {v}")));
            }
        }
        Ok(MeasuringDevice { mass, radius, duration })
    }

    /// Moment of inertia I ≈ M R².
    pub fn moment_of_inertia(&self) -> f64 {
        self.mass * self.radius * self.radius
    }

    /// Schwarzschild radius 2GM/c².
    pub fn schwarzschild_radius(&self) -> f64 {
        let k = PhysicalConstants::codata2018();
        2.0 * k.g * self.mass / (k.c * k.c)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundKind {
    /// (1/R)·√(ħτ/M), from the rotator's angle/momentum uncertainty.
    Quantum,
    /// √(ħ/(cMR)), after imposing R ≤ cτ.
    SpecialRelativity,
    /// l_P/R, after also imposing R ≥ 2GM/c².
    GeneralRelativity,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct AngleBoundReport {
    pub bound_quantum: f64,
    pub bound_sr: f64,
    pub bound_gr: f64,
    /// Largest bound among those whose preconditions hold.
    pub binding: BoundKind,
    /// R ≤ cτ.
    pub sr_consistent: bool,
    /// R ≥ 2GM/c².
    pub gr_consistent: bool,
}

impl AngleBoundReport {
    pub fn bound(&self, kind: BoundKind) -> f64 {
        match kind {
            BoundKind::Quantum => self.bound_quantum,
            BoundKind::SpecialRelativity => self.bound_sr,
            BoundKind::GeneralRelativity => self.bound_gr,
        }
    }

    /// Value of the binding bound.
    pub fn floor(&self) -> f64 {
        self.bound(self.binding)
    }
}

/// Evaluates the three angular-uncertainty floors for a device. Devices that
/// break the relativistic preconditions are flagged, not rejected.
pub fn delta_theta_floor(dev: &MeasuringDevice) -> AngleBoundReport {
    let k = PhysicalConstants::codata2018();
    let bound_quantum = (k.hbar * dev.duration / dev.mass).sqrt() / dev.radius;
    let bound_sr = (k.hbar / (k.c * dev.mass * dev.radius)).sqrt();
    let bound_gr = k.planck_length / dev.radius;
    let sr_consistent = dev.radius <= k.c * dev.duration;
    let gr_consistent = dev.radius >= dev.schwarzschild_radius();

    let mut binding = BoundKind::Quantum;
    let mut best = bound_quantum;
    if sr_consistent && bound_sr > best {
        binding = BoundKind::SpecialRelativity;
        best = bound_sr;
    }
    if sr_consistent && gr_consistent && bound_gr > best {
        binding = BoundKind::GeneralRelativity;
    }
    AngleBoundReport { bound_quantum, bound_sr, bound_gr, binding, sr_consistent, gr_consistent }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SpinAxis {
    X,
    Y,
    Z,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum TiltMode {
    /// cos(Δθ)σ_axis + sin(Δθ)σ_tilt
    #[default]
    Exact,
    /// σ_axis + Δθ σ_tilt
    FirstOrder,
}

fn pauli(axis: SpinAxis) -> Matrix2<Complex64> {
    let (o, l, i) = (Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0), Complex64::new(0.0, 1.0));
    match axis {
        SpinAxis::X => Matrix2::new(o, l, l, o),
        SpinAxis::Y => Matrix2::new(o, -i, i, o),
        SpinAxis::Z => Matrix2::new(l, o, o, -l),
    }
}

/// The spin component a device aligned with `axis` actually measures when
/// its direction is off by `dtheta` in the x–z plane: σ_z tilts toward σ_x,
/// σ_x and σ_y tilt toward σ_z.
pub fn tilted_spin_operator(axis: SpinAxis, dtheta: f64, mode: TiltMode) -> Result<Matrix2<Complex64>> {
    if !(dtheta.abs() <= std::f64::consts::FRAC_PI_2) {
        return Err(Error::domain(format!("tilt must satisfy |dtheta| <= pi/2, got {dtheta}")));
    }
    let toward = if axis == SpinAxis::Z { SpinAxis::X } else { SpinAxis::Z };
    let (along, across) = match mode {
        TiltMode::Exact => (dtheta.cos(), dtheta.sin()),
        TiltMode::FirstOrder => (1.0, dtheta),
    };
    Ok(pauli(axis) * Complex64::new(along, 0.0) + pauli(toward) * Complex64::new(across, 0.0))
}

/// ⟨q| op |q⟩ for a 2×2 operator.
pub fn expectation(op: &Matrix2<Complex64>, q: &QubitState) -> Complex64 {
    let (a, b) = (q.up(), q.down());
    a.conj() * (op[(0, 0)] * a + op[(0, 1)] * b) + b.conj() * (op[(1, 0)] * a + op[(1, 1)] * b)
}

/// A prepared state together with a note when the tilt is outside the
/// first-order regime.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Prepared {
    pub state: QubitState,
    pub warning: Option<&'static str>,
}

/// State actually produced when preparing `intended` in the eigenbasis of
/// S_z + Δθ S_x: `(α − Δθ/2·β, β + Δθ/2·α)`, renormalized.
pub fn prepared_state(intended: &QubitState, dtheta: f64) -> Result<Prepared> {
    if !dtheta.is_finite() {
        return Err(Error::domain(format!("tilt must be finite, got {dtheta}")));
    }
    if dtheta == 0.0 {
        return Ok(Prepared { state: *intended, warning: None });
    }
    let h = 0.5 * dtheta;
    let (a, b) = (intended.up(), intended.down());
    let state = QubitState::renormalize(a - b * h, b + a * h)?;
    let warning = (dtheta.abs() > FIRST_ORDER_LIMIT).then_some("tilt above 0.1 rad; first-order preparation model is inaccurate");
    Ok(Prepared { state, warning })
}

/// |α'|² − |β'|² of the prepared state, evaluated in closed form so that it
/// stays accurate when Δθ is far below machine epsilon:
/// `[(|α|²−|β|²)(1 − Δθ²/4) − Δθ(αβ* + α*β)] / (1 + Δθ²/4)`.
pub fn prepared_population_imbalance(intended: &QubitState, dtheta: f64) -> f64 {
    let q = 0.25 * dtheta * dtheta;
    (intended.population_imbalance() * (1.0 - q) - dtheta * intended.sx_expectation()) / (1.0 + q)
}

/// Error terms accompanying a measurement of M with tilted devices.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ErrorBudget {
    /// (Δθ)^N (|a'|²−|b'|²) ∏_k (|α'_k|²−|β'_k|²) with prepared populations.
    pub leading: LogMagnitude,
    /// The same term when every environment spin is optimally balanced, so
    /// that only the preparation residue survives: (Δθ)^{2N} |a'|²−|b'|² ∏|α_kβ_k* + α_k*β_k|.
    pub preparation_corrected: LogMagnitude,
    /// Σ_{n=1}^{N} C(N+1, n) Δθ^n, an upper bound on |⟨E(Δθ)⟩|.
    pub cross_terms_bound: LogMagnitude,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct MeasuredM {
    /// e^{-K} with K the real-clock damping exponent of `clock`.
    pub damping_envelope: LogMagnitude,
    /// Full real-clock ⟨M⟩; `None` when the couplings are not uniform.
    pub central_value: Option<LogMagnitude>,
    /// (Δθ)^{N+1} ⟨σ_z ⊗ ∏σ_z^k⟩, the pure-z term of the operator expansion.
    pub operator_expansion_term: LogMagnitude,
    pub budget: ErrorBudget,
}

/// Σ_{n=1}^{N} C(N+1, n) x^n = (1+x)^{N+1} − 1 − x^{N+1}, in log form.
pub fn cross_terms_bound(n: u64, x: f64) -> Result<LogMagnitude> {
    if !(x >= 0.0) || !x.is_finite() {
        return Err(Error::domain(format!("tilt must be finite and >= 0, got {x}")));
    }
    if n == 0 || x == 0.0 {
        return Ok(LogMagnitude::ZERO);
    }
    let e = (n + 1) as f64 * x.ln_1p();
    let full = if e < 700.0 { LogMagnitude::from_f64(e.exp_m1())? } else { LogMagnitude::from_log10(1, e * std::f64::consts::LOG10_E)? };
    Ok(full.add(&-log_pow(x, (n + 1) as f64)?))
}

fn tilt_power(dtheta: f64, exponent: f64) -> Result<LogMagnitude> {
    if dtheta == 0.0 {
        Ok(if exponent == 0.0 { LogMagnitude::ONE } else { LogMagnitude::ZERO })
    } else {
        log_pow(dtheta, exponent)
    }
}

/// Central value and error budget for ⟨M^{Δθ}⟩.
pub fn expectation_m_measured(cfg: &ExperimentConfig, clock: &ClockParams, dtheta: f64) -> Result<MeasuredM> {
    if !(dtheta >= 0.0) || !dtheta.is_finite() {
        return Err(Error::domain(format!("dtheta must be finite and >= 0, got {dtheta}")));
    }
    let n = cfg.n() as f64;
    let central_factor = LogMagnitude::from_f64(prepared_population_imbalance(&cfg.central, dtheta))?;
    let env_factors: LogMagnitude = cfg
        .env
        .iter()
        .map(|s| LogMagnitude::from_f64(prepared_population_imbalance(&s.state, dtheta)))
        .product::<Result<LogMagnitude>>()?;
    let leading = tilt_power(dtheta, n)? * central_factor * env_factors;

    let balanced_residue: LogMagnitude =
        cfg.env.iter().map(|s| LogMagnitude::from_f64(s.state.sx_expectation().abs())).product::<Result<LogMagnitude>>()?;
    let preparation_corrected = tilt_power(dtheta, 2.0 * n)? * central_factor.abs() * balanced_residue;

    let raw_z: LogMagnitude = std::iter::once(cfg.central.population_imbalance())
        .chain(cfg.env.iter().map(|s| s.state.population_imbalance()))
        .map(LogMagnitude::from_f64)
        .product::<Result<LogMagnitude>>()?;

    Ok(MeasuredM {
        damping_envelope: log_exp_neg(real_clock_damping_exponent(cfg, clock))?,
        central_value: expectation_m_realclock(cfg, clock).ok(),
        operator_expansion_term: tilt_power(dtheta, n + 1.0)? * raw_z,
        budget: ErrorBudget { leading, preparation_corrected, cross_terms_bound: cross_terms_bound(cfg.n() as u64, dtheta)? },
    })
}

/// ⟨S_x^{Δθ}⟩ split into the coherence part (∝ z) and the tilt error.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SxMeasured {
    pub value: f64,
    /// 2 Re(z a' b'^*) with a' = a − Δθ/2·b, b' = b + Δθ/2·a.
    pub coherence_part: f64,
    /// Δθ(|a|²−|b|² + Δθ(ab* + a*b)).
    pub error_part: f64,
    /// |z|.
    pub z_abs: f64,
}

pub fn expectation_sx_measured(cfg: &ExperimentConfig, dtheta: f64) -> Result<SxMeasured> {
    if !(dtheta >= 0.0) || !dtheta.is_finite() {
        return Err(Error::domain(format!("dtheta must be finite and >= 0, got {dtheta}")));
    }
    let z = decoherence_factor_z(cfg);
    let (a, b) = (cfg.central.up(), cfg.central.down());
    let h = 0.5 * dtheta;
    let coherence_part = 2.0 * (z * (a - b * h) * (b + a * h).conj()).re;
    let error_part = dtheta * (cfg.central.population_imbalance() + dtheta * cfg.central.sx_expectation());
    Ok(SxMeasured { value: coherence_part + error_part, coherence_part, error_part, z_abs: z.norm() })
}
