//! Closed-form results for the weak-coupling model: the two-branch final
//! state, its decoherence factor, the reduced density matrix, and the global
//! observable M = σ_x ⊗ ∏ σ_x^k with and without real-clock damping.
//!
//! Every quantity here is a product over environment spins, so nothing limits
//! N except floating-point range; the real-clock expectation is therefore
//! returned as a [`LogMagnitude`].
//!
//! Phase convention: the coupling phase `φ_k = f_k τ` enters as
//! `e^{-i s_c s_e φ_k}` for central/environment spin projections
//! `s_c, s_e = ±1`, which is what `exp(-iHτ)` produces from `f σ_z⊗σ_z`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::config::ExperimentConfig;
use crate::constants::PhysicalConstants;
use crate::error::{Error, Result};
use crate::logmag::LogMagnitude;
use crate::state::{DensityMatrix2, QubitState};

/// Largest f/(B|γ₁−γ₂|/ħ) for which the weak-coupling state is considered valid.
pub const WEAK_COUPLING_RATIO: f64 = 0.1;

/// The two decoherence branches of the weak-coupling final state:
/// `a|↑⟩⊗∏|E↑_k⟩ + b|↓⟩⊗∏|E↓_k⟩`.
#[derive(Clone, Debug, PartialEq)]
pub struct BranchState {
    pub branch_up_amp: Complex64,
    pub branch_down_amp: Complex64,
    pub env_up_branch: Vec<QubitState>,
    pub env_down_branch: Vec<QubitState>,
    /// Set when some coupling is not small against the Zeeman splitting.
    pub warning: Option<String>,
}

impl BranchState {
    pub fn n(&self) -> usize {
        self.env_up_branch.len()
    }

    /// Amplitude of the product basis state `index` (bit 0 = central spin,
    /// bit k = k-th environment spin, 0 = ↑).
    pub fn amplitude(&self, index: usize) -> Complex64 {
        let (amp, branch) =
            if index & 1 == 0 { (self.branch_up_amp, &self.env_up_branch) } else { (self.branch_down_amp, &self.env_down_branch) };
        branch.iter().enumerate().fold(amp, |acc, (k, q)| acc * if (index >> (k + 1)) & 1 == 0 { q.up() } else { q.down() })
    }
}

/// Real-clock parameters: `theta = (3/2) T_P^{4/3} τ^{2/3}` (s²) and the
/// experiment duration entering the oscillating phase.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClockParams {
    pub theta: f64,
    pub t_exp: f64,
}

impl ClockParams {
    pub fn new(theta: f64, t_exp: f64) -> Result<Self> {
        if !(theta >= 0.0) || !theta.is_finite() {
            return Err(Error::domain(format!("clock theta must be >= 0, got {theta}")));
        }
        Ok(ClockParams { theta, t_exp })
    }

    /// Ideal clock: no fundamental decoherence.
    pub fn ideal(t_exp: f64) -> Self {
        ClockParams { theta: 0.0, t_exp }
    }

    pub fn from_flight_time(tau: f64, t_exp: f64) -> Result<Self> {
        if !(tau >= 0.0) {
            return Err(Error::domain(format!("flight time must be >= 0, got {tau}")));
        }
        Self::new(1.5 * PhysicalConstants::codata2018().planck_time_4_3() * tau.powf(2.0 / 3.0), t_exp)
    }

    /// Clock built from the config's own τ and `T_total`.
    pub fn for_config(cfg: &ExperimentConfig) -> Self {
        Self::from_flight_time(cfg.tau, cfg.t_total).expect("validated config has tau > 0")
    }
}

fn branch_env(spin: &QubitState, f: f64, tau: f64, central_up: bool) -> QubitState {
    let phi = if central_up { f * tau } else { -f * tau };
    let rot = Complex64::from_polar(1.0, -phi);
    QubitState::from_parts_unchecked(spin.up() * rot, spin.down() * rot.conj())
}

/// Weak-coupling state after all N spins have flown through, with
/// ∫f_k dt = f_k τ.
pub fn final_state_weak_coupling(cfg: &ExperimentConfig) -> BranchState {
    let splitting = cfg.zeeman_splitting().abs();
    let worst = cfg.env.iter().map(|s| s.f.abs()).fold(0.0, f64::max);
    let warning = (worst > 0.0 && !(worst < WEAK_COUPLING_RATIO * splitting)).then(|| {
        format!(
            "coupling f = {worst:e} rad/s is not small against B|gamma1-gamma2|/hbar = {splitting:e} rad/s; \
             the weak-coupling state is outside its validity range"
        )
    });
    BranchState {
        branch_up_amp: cfg.central.up(),
        branch_down_amp: cfg.central.down(),
        env_up_branch: cfg.env.iter().map(|s| branch_env(&s.state, s.f, cfg.tau, true)).collect(),
        env_down_branch: cfg.env.iter().map(|s| branch_env(&s.state, s.f, cfg.tau, false)).collect(),
        warning,
    }
}

/// z = ∏_k ⟨E↓_k|E↑_k⟩ = ∏_k [cos(2f_kτ) − i(|α_k|²−|β_k|²) sin(2f_kτ)].
pub fn decoherence_factor_z(cfg: &ExperimentConfig) -> Complex64 {
    cfg.env.iter().fold(Complex64::new(1.0, 0.0), |z, s| {
        let two_phi = 2.0 * s.f * cfg.tau;
        z * Complex64::new(two_phi.cos(), -s.state.population_imbalance() * two_phi.sin())
    })
}

/// Reduced central-spin state `[[|a|², ab*z], [a*b z̄, |b|²]]`.
pub fn reduced_rho(cfg: &ExperimentConfig) -> DensityMatrix2 {
    let z = decoherence_factor_z(cfg);
    let (a, b) = (cfg.central.up(), cfg.central.down());
    DensityMatrix2::new(a.norm_sqr(), a * b.conj() * z, b.norm_sqr())
}

/// Per-spin precession frequency Ω_k = √(4f_k² + (B(γ₁−γ₂)/ħ)²).
pub fn omega_k(cfg: &ExperimentConfig, f: f64) -> f64 {
    let delta = cfg.zeeman_splitting();
    (4.0 * f * f + delta * delta).sqrt()
}

/// ⟨M⟩ for unitary evolution with per-spin phases:
/// `ab* ∏_k (α_kβ_k* + α_k*β_k) e^{-2iΩ_kτ} + c.c.`
///
/// With no environment spins the empty product is 1 and the result is
/// `2 Re(ab*)`.
pub fn expectation_m_unitary(cfg: &ExperimentConfig) -> f64 {
    let phase: f64 = cfg.env.iter().map(|s| omega_k(cfg, s.f) * cfg.tau).sum();
    let amplitude: f64 = cfg.env.iter().map(|s| s.state.sx_expectation()).product();
    let ab = cfg.central.coherence();
    2.0 * (ab * Complex64::from_polar(1.0, -2.0 * phase)).re * amplitude
}

/// ⟨M⟩ for unitary evolution in the uniform-coupling convention, where the
/// accumulated phase is `2NΩT` with `Ω = B(γ₁−γ₂)/ħ`. Shares its code path
/// with [`expectation_m_realclock`] at `theta = 0`.
pub fn expectation_m_unitary_uniform(cfg: &ExperimentConfig, t_exp: f64) -> Result<f64> {
    Ok(expectation_m_realclock(cfg, &ClockParams::ideal(t_exp))?.to_f64())
}

/// Exponent of the overall real-clock damping, `4N(B(γ₁−γ₂)/ħ)²θ`.
pub fn real_clock_damping_exponent(cfg: &ExperimentConfig, clock: &ClockParams) -> f64 {
    let delta = cfg.zeeman_splitting();
    4.0 * cfg.n() as f64 * delta * delta * clock.theta
}

/// ⟨M⟩ under real-clock decoherence:
///
/// `ab* e^{-2iNΩT} e^{-4NΩ²θ} ∏_k[α_kβ_k* e^{-16ω₁ω₂θ} + α_k*β_k] + c.c.`
///
/// with `Ω = B(γ₁−γ₂)/ħ`, `ω_i = Bγ_i/ħ`. The magnitude easily leaves the
/// `f64` range, so the result is a [`LogMagnitude`]. Requires every
/// environment spin to share the same coupling.
pub fn expectation_m_realclock(cfg: &ExperimentConfig, clock: &ClockParams) -> Result<LogMagnitude> {
    if !(clock.theta >= 0.0) {
        return Err(Error::domain(format!("clock theta must be >= 0, got {}", clock.theta)));
    }
    if cfg.n() > 0 && cfg.uniform_coupling().is_none() {
        return Err(Error::domain("the real-clock expression assumes one coupling f shared by all environment spins"));
    }
    let n = cfg.n() as f64;
    let delta = cfg.zeeman_splitting();
    let asym = (-16.0 * cfg.omega_central() * cfg.omega_env() * clock.theta).exp();

    // Unit-modulus part of the product and its log10 magnitude, kept apart.
    let mut unit = Complex64::new(1.0, 0.0);
    let mut log10_mag = 0.0;
    for s in &cfg.env {
        let c = s.state.coherence();
        let factor = c * asym + c.conj();
        let norm = factor.norm();
        if norm == 0.0 {
            return Ok(LogMagnitude::ZERO);
        }
        unit *= factor / norm;
        log10_mag += norm.log10();
    }
    let phase = Complex64::from_polar(1.0, -2.0 * n * delta * clock.t_exp);
    let oscillating = 2.0 * (cfg.central.coherence() * phase * unit).re;
    let damping = -real_clock_damping_exponent(cfg, clock) * std::f64::consts::LOG10_E;
    Ok(LogMagnitude::from_f64(oscillating)? * LogMagnitude::from_log10(1, log10_mag + damping)?)
}

/// Exponent `(2/3) ω² T_P^{4/3} T^{2/3}` of the real-clock off-diagonal decay.
pub fn off_diagonal_damping_exponent(omega_nm: f64, t: f64) -> Result<f64> {
    if !(t >= 0.0) || !t.is_finite() {
        return Err(Error::domain(format!("clock time must be >= 0, got {t}")));
    }
    if !omega_nm.is_finite() {
        return Err(Error::domain(format!("Bohr frequency must be finite, got {omega_nm}")));
    }
    Ok(2.0 / 3.0 * omega_nm * omega_nm * PhysicalConstants::codata2018().planck_time_4_3() * t.powf(2.0 / 3.0))
}

/// `exp(-(2/3) ω_nm² T_P^{4/3} T^{2/3})`, in (0, 1] until it underflows.
pub fn off_diagonal_damping(omega_nm: f64, t: f64) -> Result<f64> {
    Ok((-off_diagonal_damping_exponent(omega_nm, t)?).exp())
}

/// Damps the coherences of a central-spin state whose two levels are split
/// by `omega_nm` (rad/s). Diagonal entries are untouched.
pub fn damp_reduced_rho(rho: &DensityMatrix2, omega_nm: f64, t: f64) -> Result<DensityMatrix2> {
    let g = off_diagonal_damping(omega_nm, t)?;
    let mut out = *rho;
    out.0[(0, 1)] *= g;
    out.0[(1, 0)] *= g;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::EnvSpin;
    use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, FRAC_PI_4, PI};

    fn cfg(central: QubitState, env: Vec<(QubitState, f64)>, tau: f64) -> ExperimentConfig {
        let env = env.into_iter().map(|(state, f)| EnvSpin { state, f }).collect();
        ExperimentConfig::from_angular(central, env, 3.0, 1.0, tau).unwrap()
    }

    #[test]
    fn no_coupling_leaves_branches_equal() {
        let c = cfg(QubitState::plus(), vec![(QubitState::from_bloch(0.3, 0.7), 0.0); 3], 1.0);
        let s = final_state_weak_coupling(&c);
        assert_eq!(s.env_up_branch, s.env_down_branch);
        assert_eq!(s.env_up_branch[0], c.env[0].state);
        assert!(s.warning.is_none());
    }

    #[test]
    fn quarter_turn_phases() {
        let c = cfg(QubitState::plus(), vec![(QubitState::plus(), FRAC_PI_2)], 1.0);
        let s = final_state_weak_coupling(&c);
        let h = FRAC_1_SQRT_2;
        let want = |p: f64| (Complex64::from_polar(h, p), Complex64::from_polar(h, -p));
        // down branch carries (e^{iπ/2}, e^{-iπ/2})/√2, up branch its conjugate
        let (u, d) = want(FRAC_PI_2);
        assert!((s.env_down_branch[0].up() - u).norm() < 1e-15);
        assert!((s.env_down_branch[0].down() - d).norm() < 1e-15);
        assert!((s.env_up_branch[0].up() - u.conj()).norm() < 1e-15);
        assert!((s.env_up_branch[0].down() - d.conj()).norm() < 1e-15);
        // large coupling relative to splitting 2 rad/s
        assert!(s.warning.is_some());
    }

    #[test]
    fn z_examples() {
        assert_eq!(decoherence_factor_z(&cfg(QubitState::plus(), vec![], 1.0)), Complex64::new(1.0, 0.0));
        let c = cfg(QubitState::plus(), vec![(QubitState::from_angle(0.2), 0.1), (QubitState::plus(), FRAC_PI_4)], 1.0);
        assert!(decoherence_factor_z(&c).norm() < 1e-15);
        // |α|²−|β|² = cos(2t) = 0.2
        let t = 0.5 * 0.2f64.acos();
        let c = cfg(QubitState::plus(), vec![(QubitState::from_angle(t), 0.3); 5], 1.0);
        let want = (0.6f64.cos().powi(2) + 0.04 * 0.6f64.sin().powi(2)).powf(2.5);
        assert!((decoherence_factor_z(&c).norm() - want).abs() < 1e-14);
    }

    #[test]
    fn z_equals_branch_overlap() {
        let c = cfg(
            QubitState::from_bloch(0.4, 0.2),
            vec![(QubitState::from_bloch(0.2, 1.0), 0.13), (QubitState::from_bloch(1.1, -0.5), 0.71)],
            1.3,
        );
        let s = final_state_weak_coupling(&c);
        let overlap = s.env_down_branch.iter().zip(&s.env_up_branch).map(|(d, u)| d.inner(u)).product::<Complex64>();
        assert!((overlap - decoherence_factor_z(&c)).norm() < 1e-14);
    }

    #[test]
    fn reduced_rho_is_a_state() {
        let c = cfg(QubitState::from_bloch(0.4, 0.2), vec![(QubitState::from_bloch(0.9, 2.0), 0.4); 4], 1.0);
        let rho = reduced_rho(&c);
        assert!((rho.trace().re - 1.0).abs() < 1e-14);
        assert!(rho.hermiticity_defect() < 1e-15);
        assert!(rho.is_positive_semidefinite(1e-14));
        let pure = reduced_rho(&cfg(QubitState::from_bloch(0.4, 0.2), vec![], 1.0));
        assert!(pure.max_abs_diff(&DensityMatrix2::from_pure(&QubitState::from_bloch(0.4, 0.2))) < 1e-15);
    }

    #[test]
    fn large_n_offdiagonal_vanishes() {
        let env: Vec<_> =
            (0..400).map(|k| (QubitState::from_bloch(0.3 + 0.001 * k as f64, 0.1 * k as f64), 0.37 + 0.01 * k as f64)).collect();
        let rho = reduced_rho(&cfg(QubitState::plus(), env, 1.0));
        assert!(rho.get(0, 1).norm() < 1e-12);
        assert!((rho.get(0, 0).re - 0.5).abs() < 1e-15);
    }

    #[test]
    fn m_unitary_examples() {
        let c = cfg(QubitState::plus(), vec![(QubitState::UP, 0.1), (QubitState::plus(), 0.1)], 1.0);
        assert_eq!(expectation_m_unitary(&c), 0.0);
        let central = QubitState::from_bloch(0.3, 0.9);
        let c = cfg(central, vec![], 1.0);
        assert!((expectation_m_unitary(&c) - 2.0 * central.coherence().re).abs() < 1e-15);
    }

    #[test]
    fn realclock_reduces_to_uniform_unitary() {
        let c = cfg(QubitState::from_bloch(0.3, 0.9), vec![(QubitState::from_bloch(0.7, 0.4), 0.05); 6], 0.8);
        let t = c.t_total;
        let ideal = expectation_m_realclock(&c, &ClockParams::ideal(t)).unwrap().to_f64();
        let direct = {
            let prod: f64 = c.env.iter().map(|s| s.state.sx_expectation()).product();
            let ph = Complex64::from_polar(1.0, -2.0 * 6.0 * c.zeeman_splitting() * t);
            2.0 * (c.central.coherence() * ph).re * prod
        };
        assert!((ideal - direct).abs() < 1e-12, "{ideal} vs {direct}");
        assert_eq!(expectation_m_unitary_uniform(&c, t).unwrap(), ideal);
    }

    #[test]
    fn realclock_total_damping() {
        let c = cfg(QubitState::plus(), vec![(QubitState::plus(), 0.05); 3], 1.0);
        let v = expectation_m_realclock(&c, &ClockParams::new(1e6, PI).unwrap()).unwrap();
        assert!(v.to_f64().abs() < 1e-300);
    }

    #[test]
    fn realclock_requires_uniform_coupling() {
        let c = cfg(QubitState::plus(), vec![(QubitState::plus(), 0.05), (QubitState::plus(), 0.06)], 1.0);
        assert!(expectation_m_realclock(&c, &ClockParams::ideal(1.0)).is_err());
        assert!(ClockParams::new(-1.0, 1.0).is_err());
    }

    #[test]
    fn realclock_log_domain_example() {
        // N = 10, B(γ₁−γ₂) = 1e15 rad/s, τ = 1 s
        let env = vec![EnvSpin { state: QubitState::plus(), f: 1e12 }; 10];
        let c = ExperimentConfig::from_angular(QubitState::plus(), env, 2e15, 1e15, 1.0).unwrap();
        let clock = ClockParams::for_config(&c);
        let exponent = real_clock_damping_exponent(&c, &clock);
        let tp43 = PhysicalConstants::codata2018().planck_time_4_3();
        assert!((exponent - 40.0 * 1e30 * 1.5 * tp43).abs() <= 1e-12 * exponent);
        assert!((exponent / 1.22e-26 - 1.0).abs() < 0.01, "{exponent:e}");
        let v = expectation_m_realclock(&c, &clock).unwrap();
        assert!(v.log10() <= 2f64.log10() + 1e-12);
    }

    #[test]
    fn damping_examples() {
        assert_eq!(off_diagonal_damping(1e15, 0.0).unwrap(), 1.0);
        assert_eq!(off_diagonal_damping(0.0, 10.0).unwrap(), 1.0);
        let e = off_diagonal_damping_exponent(1e15, 1.0).unwrap();
        assert!((e / 1.35e-28 - 1.0).abs() < 0.01, "{e:e}");
        assert!(off_diagonal_damping(1.0, -1.0).is_err());
        let rho = DensityMatrix2::from_pure(&QubitState::plus());
        let damped = damp_reduced_rho(&rho, 1e32, 1.0).unwrap();
        assert!(damped.get(0, 1).norm() < 0.5);
        assert_eq!(damped.get(0, 0), rho.get(0, 0));
    }
}
