//! Feasibility conditions, the real-clock exponent K, and the verdict on
//! whether collapse can be told apart from unitary evolution.
//!
//! The comparison is e^{-K} against the irreducible error floor (Δθ)^{2N}.
//! Both sides are far below `f64` range for any interesting configuration,
//! so everything is compared as [`LogMagnitude`]. A tie counts as
//! undecidable.

use serde::{Deserialize, Serialize};

use crate::analytic::{real_clock_damping_exponent, ClockParams};
use crate::config::ExperimentConfig;
use crate::constants::PhysicalConstants;
use crate::error::{Error, Result};
use crate::limits::cross_terms_bound;
use crate::logmag::{log_exp_neg, log_pow, LogMagnitude};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    Decidable,
    Undecidable,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct UndecidabilityVerdict {
    pub signal: LogMagnitude,
    pub floor: LogMagnitude,
    pub verdict: Verdict,
    /// floor.log10 − signal.log10; `None` when either side is exactly zero.
    pub margin_log10: Option<f64>,
}

impl UndecidabilityVerdict {
    pub fn compare(signal: LogMagnitude, floor: LogMagnitude) -> Self {
        let verdict = if signal.abs() <= floor.abs() { Verdict::Undecidable } else { Verdict::Decidable };
        let margin_log10 = (!signal.is_zero() && !floor.is_zero()).then(|| floor.log10() - signal.log10());
        UndecidabilityVerdict { signal, floor, verdict, margin_log10 }
    }

    pub fn is_undecidable(&self) -> bool {
        self.verdict == Verdict::Undecidable
    }
}

/// How K grows with the number of environment spins.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum KModel {
    /// K = 6N (B(γ₁−γ₂)/ħ)² T_P^{4/3} τ^{2/3}
    Linear,
    /// K ≥ N⁵ T_P^{4/3} ħ^{20/3} / (m⁴ (γ₁γ₂)^{8/3} μ₀^{8/3})
    Quintic,
}

// ---- feasibility ---------------------------------------------------------

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct FeasibilityThresholds {
    /// Largest f / (B|γ₁−γ₂|/ħ) accepted as "much smaller".
    pub max_coupling_ratio: f64,
    /// Length the dispersion √(ħT/m) is compared against; `None` means `d`.
    pub dispersion_reference: Option<f64>,
}

impl Default for FeasibilityThresholds {
    fn default() -> Self {
        FeasibilityThresholds { max_coupling_ratio: 0.1, dispersion_reference: None }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CouplingStrength {
    /// f = μ₀|γ₁γ₂|/(ħd³), rad/s.
    pub f: f64,
    /// fτ; must exceed 1.
    pub value: f64,
    pub pass: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Dispersion {
    /// Δx = √(ħT/m), m.
    pub dx: f64,
    pub reference: f64,
    pub pass: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PointerBasis {
    /// f/(B|γ₁−γ₂|/ħ); `None` when γ₁ = γ₂ (no splitting at all).
    pub ratio: Option<f64>,
    pub threshold: f64,
    pub pass: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SignalEstimate {
    pub k: f64,
    /// e^{-K}.
    pub signal: LogMagnitude,
}

/// Slack of each condition in decades; positive means satisfied.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Margins {
    pub cond_a: f64,
    pub cond_b: f64,
    pub cond_c: Option<f64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct FeasibilityReport {
    pub cond_a: CouplingStrength,
    pub cond_b: Dispersion,
    pub cond_c: PointerBasis,
    pub cond_d: SignalEstimate,
    pub margins: Margins,
}

impl FeasibilityReport {
    pub fn all_pass(&self) -> bool {
        self.cond_a.pass && self.cond_b.pass && self.cond_c.pass
    }
}

/// Dipolar spin-spin coupling μ₀|γ₁γ₂|/(ħd³), rad/s.
pub fn dipolar_coupling(cfg: &ExperimentConfig) -> f64 {
    let k = PhysicalConstants::codata2018();
    k.mu0 * (cfg.gamma1 * cfg.gamma2).abs() / (k.hbar * cfg.d.powi(3))
}

pub fn feasibility_check(cfg: &ExperimentConfig, thresholds: &FeasibilityThresholds) -> FeasibilityReport {
    let k = PhysicalConstants::codata2018();
    let f = dipolar_coupling(cfg);
    let f_tau = f * cfg.tau;

    let dx = (k.hbar * cfg.t_total / cfg.m).sqrt();
    let reference = thresholds.dispersion_reference.unwrap_or(cfg.d);

    let splitting = cfg.zeeman_splitting().abs();
    let ratio = (splitting > 0.0).then(|| f / splitting);
    let c_pass = ratio.is_some_and(|r| r < thresholds.max_coupling_ratio);

    let k_value = k_exponent(cfg);
    FeasibilityReport {
        cond_a: CouplingStrength { f, value: f_tau, pass: f_tau > 1.0 },
        cond_b: Dispersion { dx, reference, pass: dx <= reference },
        cond_c: PointerBasis { ratio, threshold: thresholds.max_coupling_ratio, pass: c_pass },
        cond_d: SignalEstimate { k: k_value, signal: log_exp_neg(k_value).unwrap_or(LogMagnitude::ZERO) },
        margins: Margins {
            cond_a: f_tau.log10(),
            cond_b: (reference / dx).log10(),
            cond_c: ratio.map(|r| (thresholds.max_coupling_ratio / r).log10()).filter(|m| m.is_finite()),
        },
    }
}

// ---- K -------------------------------------------------------------------

/// K per environment spin: 6 (B(γ₁−γ₂)/ħ)² T_P^{4/3} τ^{2/3}.
pub fn k_linear_coefficient(cfg: &ExperimentConfig) -> f64 {
    let delta = cfg.zeeman_splitting();
    6.0 * delta * delta * PhysicalConstants::codata2018().planck_time_4_3() * cfg.tau.powf(2.0 / 3.0)
}

/// K = 6N (B(γ₁−γ₂)/ħ)² T_P^{4/3} τ^{2/3}.
pub fn k_exponent(cfg: &ExperimentConfig) -> f64 {
    cfg.n() as f64 * k_linear_coefficient(cfg)
}

/// c in K ≥ c·N⁵, i.e. T_P^{4/3} ħ^{20/3} / (m⁴ |γ₁γ₂|^{8/3} μ₀^{8/3}).
///
/// The N⁵ growth comes from combining the coupling, dispersion and pointer
/// conditions for this particular model; other models need not scale this way.
pub fn k_quintic_coefficient(cfg: &ExperimentConfig) -> Result<LogMagnitude> {
    let k = PhysicalConstants::codata2018();
    let gg = (cfg.gamma1 * cfg.gamma2).abs();
    if !(gg > 0.0) {
        return Err(Error::domain("the N^5 bound needs nonzero magnetic moments gamma1 and gamma2"));
    }
    let log10 = (4.0 / 3.0) * k.planck_time.log10() + (20.0 / 3.0) * k.hbar.log10()
        - 4.0 * cfg.m.log10()
        - (8.0 / 3.0) * gg.log10()
        - (8.0 / 3.0) * k.mu0.log10();
    LogMagnitude::from_log10(1, log10)
}

/// The N⁵ lower bound on K, in log form.
pub fn k_lower_bound(cfg: &ExperimentConfig) -> Result<LogMagnitude> {
    let n = cfg.n();
    if n == 0 {
        return Ok(LogMagnitude::ZERO);
    }
    Ok(k_quintic_coefficient(cfg)? * log_pow(n as f64, 5.0)?)
}

/// e^{-K} for K given in log form; underflows cleanly to zero when K itself
/// exceeds the `f64` range.
pub fn signal_from_log_k(k: LogMagnitude) -> Result<LogMagnitude> {
    if k.sign() < 0 {
        return Err(Error::domain("K must be non-negative"));
    }
    let kv = k.to_f64();
    if kv.is_infinite() {
        return Ok(LogMagnitude::ZERO);
    }
    log_exp_neg(kv)
}

// ---- verdicts ------------------------------------------------------------

fn check_tilt(dtheta: f64) -> Result<()> {
    if !(dtheta > 0.0) || !dtheta.is_finite() {
        return Err(Error::domain(format!("dtheta must be positive and finite (a perfectly aligned device is impossible), got {dtheta}")));
    }
    Ok(())
}

/// The error floor (Δθ)^{2N}.
pub fn error_floor(dtheta: f64, n: u64) -> Result<LogMagnitude> {
    check_tilt(dtheta)?;
    log_pow(dtheta, 2.0 * n as f64)
}

/// Verdict for a given K, tilt and environment size.
pub fn verdict_for_k(k: f64, dtheta: f64, n: u64) -> Result<UndecidabilityVerdict> {
    Ok(UndecidabilityVerdict::compare(log_exp_neg(k)?, error_floor(dtheta, n)?))
}

/// Global-observable verdict with K = 4N(B(γ₁−γ₂)/ħ)²θ taken from `clock`;
/// for `ClockParams::for_config(cfg)` this is exactly [`k_exponent`].
pub fn decide(cfg: &ExperimentConfig, clock: &ClockParams, dtheta: f64) -> Result<UndecidabilityVerdict> {
    verdict_for_k(real_clock_damping_exponent(cfg, clock), dtheta, cfg.n() as u64)
}

/// Both K-growth models side by side, plus the cross-term budget that the
/// floor leaves out.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DecisionReport {
    pub n: u64,
    pub dtheta: f64,
    pub k_linear: f64,
    pub k_quintic: LogMagnitude,
    pub linear: UndecidabilityVerdict,
    pub quintic: UndecidabilityVerdict,
    /// Σ_{n=1}^{N} C(N+1,n) Δθ^n, an upper bound on the cross terms.
    pub cross_terms_bound: LogMagnitude,
}

pub fn decide_both_models(cfg: &ExperimentConfig, clock: &ClockParams, dtheta: f64) -> Result<DecisionReport> {
    let n = cfg.n() as u64;
    let k_linear = real_clock_damping_exponent(cfg, clock);
    let k_quintic = k_lower_bound(cfg)?;
    let floor = error_floor(dtheta, n)?;
    Ok(DecisionReport {
        n,
        dtheta,
        k_linear,
        k_quintic,
        linear: UndecidabilityVerdict::compare(log_exp_neg(k_linear)?, floor),
        quintic: UndecidabilityVerdict::compare(signal_from_log_k(k_quintic)?, floor),
        cross_terms_bound: cross_terms_bound(n, dtheta)?,
    })
}

/// Quintic-model verdict at `n` for coefficient `c` (K = c·N⁵).
pub fn quintic_verdict_at(c: LogMagnitude, dtheta: f64, n: u64) -> Result<UndecidabilityVerdict> {
    let k = if n == 0 { LogMagnitude::ZERO } else { c * log_pow(n as f64, 5.0)? };
    Ok(UndecidabilityVerdict::compare(signal_from_log_k(k)?, error_floor(dtheta, n)?))
}

/// Linear-model verdict at `n` for coefficient `c` (K = c·N).
pub fn linear_verdict_at(c: f64, dtheta: f64, n: u64) -> Result<UndecidabilityVerdict> {
    verdict_for_k(c * n as f64, dtheta, n)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrossoverReport {
    pub n_max: u64,
    /// Smallest undecidable N under K = c·N⁵.
    pub quintic: Option<u64>,
    /// Smallest undecidable N under K = c·N.
    pub linear: Option<u64>,
}

/// Scans N = 1..=n_max for the first undecidable environment size under
/// each K-growth model, given the two growth coefficients directly.
pub fn crossover_n_from_coefficients(
    linear_coefficient: f64,
    quintic_coefficient: LogMagnitude,
    dtheta: f64,
    n_max: u64,
) -> Result<CrossoverReport> {
    if n_max == 0 {
        return Err(Error::domain("crossover scan needs n_max >= 1"));
    }
    check_tilt(dtheta)?;
    let mut quintic = None;
    let mut linear = None;
    for n in 1..=n_max {
        if quintic.is_none() && quintic_verdict_at(quintic_coefficient, dtheta, n)?.is_undecidable() {
            quintic = Some(n);
        }
        if linear.is_none() && linear_verdict_at(linear_coefficient, dtheta, n)?.is_undecidable() {
            linear = Some(n);
        }
        if quintic.is_some() && linear.is_some() {
            break;
        }
    }
    Ok(CrossoverReport { n_max, quintic, linear })
}

/// Smallest undecidable N for the per-spin parameters of `template`.
pub fn crossover_n(template: &ExperimentConfig, dtheta: f64, n_max: u64) -> Result<CrossoverReport> {
    crossover_n_from_coefficients(k_linear_coefficient(template), k_quintic_coefficient(template)?, dtheta, n_max)
}

/// Real root of c·N⁴ = 2 ln(1/Δθ) as log10 N; the quintic-model crossover is
/// the smallest integer N at or above it.
pub fn quintic_crossover_log10(quintic_coefficient: LogMagnitude, dtheta: f64) -> Result<f64> {
    check_tilt(dtheta)?;
    if quintic_coefficient.sign() <= 0 {
        return Err(Error::domain("quintic coefficient must be positive"));
    }
    if dtheta >= 1.0 {
        return Ok(f64::NEG_INFINITY);
    }
    Ok(((-2.0 * dtheta.ln()).log10() - quintic_coefficient.log10()) / 4.0)
}

/// Whether the linear model is undecidable at every N (c ≥ 2 ln(1/Δθ));
/// the linear verdict does not depend on N.
pub fn linear_always_undecidable(linear_coefficient: f64, dtheta: f64) -> Result<bool> {
    Ok(linear_verdict_at(linear_coefficient, dtheta, 1)?.is_undecidable())
}

/// Local-observable verdict: the coherence |z|·|ab* + a*b| visible in ⟨σ_x⟩
/// against the tilt floor (Δθ)² + Δθ·||a|²−|b|²|.
pub fn local_undecidability(cfg: &ExperimentConfig, dtheta: f64) -> Result<UndecidabilityVerdict> {
    check_tilt(dtheta)?;
    let mut z = LogMagnitude::ONE;
    for s in &cfg.env {
        let two_phi = 2.0 * s.f * cfg.tau;
        let p = s.state.population_imbalance();
        let factor = (two_phi.cos().powi(2) + p * p * two_phi.sin().powi(2)).sqrt();
        z = z * LogMagnitude::from_f64(factor)?;
    }
    let signal = z * LogMagnitude::from_f64(cfg.central.sx_expectation().abs())?;
    let floor = LogMagnitude::from_f64(dtheta * dtheta + dtheta * cfg.central.population_imbalance().abs())?;
    Ok(UndecidabilityVerdict::compare(signal, floor))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::EnvSpin;
    use crate::constants::{BOHR_MAGNETON, ELECTRON_MASS};
    use crate::state::QubitState;

    fn electron_cfg(n: usize, tau: f64) -> ExperimentConfig {
        ExperimentConfig {
            central: QubitState::plus(),
            env: vec![EnvSpin { state: QubitState::plus(), f: 1e6 }; n],
            b_field: 1.0,
            gamma1: BOHR_MAGNETON,
            gamma2: BOHR_MAGNETON,
            tau,
            t_total: n as f64 * tau,
            m: ELECTRON_MASS,
            d: 1e-9,
        }
    }

    #[test]
    fn coupling_condition_example() {
        let r = feasibility_check(&electron_cfg(1, 1e-8), &FeasibilityThresholds::default());
        let k = PhysicalConstants::codata2018();
        let want = k.mu0 * BOHR_MAGNETON * BOHR_MAGNETON * 1e-8 / (k.hbar * 1e-27);
        assert!((r.cond_a.value - want).abs() <= 1e-12 * want);
        assert!((r.cond_a.f / 1e9 - 1.0).abs() < 0.1, "{}", r.cond_a.f);
        assert!(r.cond_a.pass && r.cond_a.value > 9.0 && r.cond_a.value < 11.0);
        // identical moments: no pointer-basis selection
        assert!(!r.cond_c.pass);
        assert_eq!(r.cond_c.ratio, None);
    }

    #[test]
    fn short_flight_fails_coupling() {
        let r = feasibility_check(&electron_cfg(1, 1e-15), &FeasibilityThresholds::default());
        assert!(!r.cond_a.pass);
        assert!(r.margins.cond_a < -5.0);
    }

    #[test]
    fn dispersion_uses_reference() {
        let cfg = electron_cfg(1, 1e-8);
        let r = feasibility_check(&cfg, &FeasibilityThresholds::default());
        assert_eq!(r.cond_b.reference, cfg.d);
        let r2 = feasibility_check(&cfg, &FeasibilityThresholds { dispersion_reference: Some(1.0), ..Default::default() });
        assert!(r2.cond_b.pass);
        assert_eq!(r2.cond_b.pass, r2.cond_b.dx <= 1.0);
    }

    #[test]
    fn k_linear_in_n() {
        let mut cfg = ExperimentConfig::from_angular(QubitState::plus(), vec![], 2e15, 1e15, 1.0).unwrap();
        assert_eq!(k_exponent(&cfg), 0.0);
        cfg.env = vec![EnvSpin { state: QubitState::plus(), f: 1.0 }; 10];
        cfg.t_total = 10.0;
        let k10 = k_exponent(&cfg);
        let tp = PhysicalConstants::codata2018().planck_time;
        assert!((tp / 5.39e-44 - 1.0).abs() < 1e-3);
        assert!((k10 / (60.0 * 1e30 * tp.powf(4.0 / 3.0)) - 1.0).abs() < 1e-12);
        assert!((k10 / 1.2e-26 - 1.0).abs() < 0.05, "{k10:e}");
        let doubled = cfg.with_n(20).unwrap();
        assert!((k_exponent(&doubled) - 2.0 * k10).abs() <= 1e-15 * k10);
        // real-clock damping exponent 4Nθ·Ω² equals K: the 4 vs 6 prefactors agree
        let clock = ClockParams::for_config(&cfg);
        assert!((real_clock_damping_exponent(&cfg, &clock) - k10).abs() <= 1e-12 * k10);
    }

    #[test]
    fn lower_bound_scaling() {
        let cfg = ExperimentConfig::uniform(QubitState::plus(), QubitState::plus(), 1.0, 7, 1.0, 1.0).unwrap();
        assert!(k_lower_bound(&cfg.with_n(0).unwrap()).unwrap().is_zero());
        let one = k_lower_bound(&cfg).unwrap();
        let two = k_lower_bound(&cfg.with_n(14).unwrap()).unwrap();
        assert!((two.log10() - one.log10() - 32f64.log10()).abs() < 1e-12);
        let mut bad = cfg.clone();
        bad.gamma2 = 0.0;
        assert!(k_lower_bound(&bad).is_err());
    }

    #[test]
    fn decide_examples() {
        let v = verdict_for_k(300.0, 1e-62, 1).unwrap();
        assert_eq!(v.verdict, Verdict::Undecidable);
        assert!((v.signal.log10() + 130.288_344_570_975_55).abs() < 1e-10);
        assert!((v.floor.log10() + 124.0).abs() < 1e-12);
        assert!((v.margin_log10.unwrap() - 6.288_344_570_975_55).abs() < 1e-10);

        let v = verdict_for_k(100.0, 1e-62, 1).unwrap();
        assert_eq!(v.verdict, Verdict::Decidable);
        assert!((v.signal.log10() + 43.429_448_190_325_18).abs() < 1e-10);

        for k in [0.0, 1e-30, 5.0, 1e5] {
            assert!(verdict_for_k(k, 1.0, 17).unwrap().is_undecidable());
        }
        assert!(verdict_for_k(1.0, 0.0, 1).is_err());
        assert!(verdict_for_k(1.0, -1e-3, 1).is_err());
    }

    #[test]
    fn tie_is_undecidable() {
        let x = LogMagnitude::from_f64(1e-5).unwrap();
        assert!(UndecidabilityVerdict::compare(x, x).is_undecidable());
    }

    #[test]
    fn ideal_clock_never_undecidable() {
        let cfg = ExperimentConfig::uniform(QubitState::plus(), QubitState::plus(), 1.0, 50, 1.0, 1.0).unwrap();
        let v = decide(&cfg, &ClockParams::ideal(cfg.t_total), 1e-62).unwrap();
        assert_eq!(v.verdict, Verdict::Decidable);
        let r = crossover_n_from_coefficients(0.0, LogMagnitude::ZERO, 1e-62, 10_000).unwrap();
        assert_eq!(r.quintic, None);
        assert_eq!(r.linear, None);
    }

    #[test]
    fn strong_decoherence_crosses_at_one() {
        let r = crossover_n_from_coefficients(1e6, LogMagnitude::from_f64(1e6).unwrap(), 1e-62, 10).unwrap();
        assert_eq!(r.quintic, Some(1));
        assert_eq!(r.linear, Some(1));
        assert!(crossover_n_from_coefficients(1.0, LogMagnitude::ONE, 1e-62, 0).is_err());
    }

    #[test]
    fn electron_gas_crossover_region() {
        // m = electron mass, γ = Bohr magneton: c ≈ 10^-25.47, so
        // N* = (2·62·ln10 / c)^{1/4} ≈ 10^7
        let cfg = ExperimentConfig {
            gamma1: BOHR_MAGNETON,
            gamma2: BOHR_MAGNETON,
            ..ExperimentConfig::uniform(QubitState::plus(), QubitState::plus(), 1.0, 1_000_000, 1.0, 1.0).unwrap()
        };
        let c = k_quintic_coefficient(&cfg).unwrap();
        assert!((c.log10() + 25.465).abs() < 1e-3, "{}", c.log10());
        let root = quintic_crossover_log10(c, 1e-62).unwrap();
        assert!((root - 6.99).abs() < 0.01, "{root}");
        let kb = k_lower_bound(&cfg).unwrap();
        assert!((kb.log10() - (c.log10() + 30.0)).abs() < 1e-9);
        let report = decide_both_models(&cfg, &ClockParams::for_config(&cfg), 1e-62).unwrap();
        // at N = 10^6 the quintic signal is still above the floor
        assert_eq!(report.quintic.verdict, Verdict::Decidable);
    }

    #[test]
    fn local_examples() {
        let env = |n| vec![EnvSpin { state: QubitState::plus(), f: 0.3 }; n];
        let mk = |n| ExperimentConfig::from_angular(QubitState::plus(), env(n), 30.0, 1.0, 1.0).unwrap();
        let v20 = local_undecidability(&mk(20), 1e-2).unwrap();
        assert_eq!(v20.verdict, Verdict::Decidable);
        assert!((v20.signal.to_f64() - 0.6f64.cos().powi(20)).abs() < 1e-15);
        assert!((v20.floor.to_f64() - 1e-4).abs() < 1e-18);
        let v200 = local_undecidability(&mk(200), 1e-2).unwrap();
        assert_eq!(v200.verdict, Verdict::Undecidable);
        assert!((v200.signal.log10() - 200.0 * 0.6f64.cos().log10()).abs() < 1e-10);
        assert!(local_undecidability(&mk(3), 0.0).is_err());
    }

    #[test]
    fn closed_form_crossover() {
        // c·N⁴ = 2 ln 100 at N = 3 for c = 2 ln 100 / 81
        let c = LogMagnitude::from_f64(2.0 * 100f64.ln() / 81.0).unwrap();
        let root = quintic_crossover_log10(c, 1e-2).unwrap();
        assert!((10f64.powf(root) - 3.0).abs() < 1e-12);
        assert_eq!(quintic_crossover_log10(c, 1.0).unwrap(), f64::NEG_INFINITY);
        assert!(linear_always_undecidable(2.0 * 100f64.ln(), 1e-2).unwrap());
        assert!(!linear_always_undecidable(9.2, 1e-2).unwrap());
    }
}
