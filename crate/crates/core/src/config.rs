//! Physical parameters of one run and their JSON form.

use serde::{Deserialize, Serialize};

use crate::constants::{PhysicalConstants, BOHR_MAGNETON, ELECTRON_MASS};
use crate::error::{Error, Result};
use crate::state::QubitState;

/// One environment spin: its prepared state and its coupling to the central
/// spin, as an angular frequency (rad/s).
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EnvSpin {
    pub state: QubitState,
    pub f: f64,
}

/// Everything that defines one experiment.
///
/// All fields are SI. Angular frequencies used by the dynamics are obtained
/// as `B·γ/ħ` through [`ExperimentConfig::omega_central`] and friends.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    /// Central spin amplitudes (a, b).
    pub central: QubitState,
    /// Environment spins in flight order.
    pub env: Vec<EnvSpin>,
    /// Magnetic field along z, T.
    #[serde(rename = "B")]
    pub b_field: f64,
    /// Central magnetic moment, J/T.
    pub gamma1: f64,
    /// Environment magnetic moment, J/T.
    pub gamma2: f64,
    /// Time of flight of each environment spin through the chamber, s.
    pub tau: f64,
    /// Duration of the whole experiment, s.
    #[serde(rename = "T_total")]
    pub t_total: f64,
    /// Environment particle mass, kg.
    pub m: f64,
    /// Impact parameter, m.
    pub d: f64,
}

impl ExperimentConfig {
    /// Builds a config from angular Zeeman frequencies (rad/s) instead of SI
    /// moments. `B` is set to 1 T, `T_total` to `N·τ`, and the particle
    /// defaults to an electron at 1 nm impact parameter.
    pub fn from_angular(central: QubitState, env: Vec<EnvSpin>, omega1: f64, omega2: f64, tau: f64) -> Result<Self> {
        let hbar = PhysicalConstants::codata2018().hbar;
        let cfg = ExperimentConfig {
            central,
            t_total: env.len() as f64 * tau,
            env,
            b_field: 1.0,
            gamma1: omega1 * hbar,
            gamma2: omega2 * hbar,
            tau,
            m: ELECTRON_MASS,
            d: 1e-9,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    /// An electron-like template: both moments one Bohr magneton apart in the
    /// given field, `n` identical environment spins.
    pub fn uniform(central: QubitState, env_state: QubitState, f: f64, n: usize, b_field: f64, tau: f64) -> Result<Self> {
        let cfg = ExperimentConfig {
            central,
            env: vec![EnvSpin { state: env_state, f }; n],
            b_field,
            gamma1: 2.0 * BOHR_MAGNETON,
            gamma2: BOHR_MAGNETON,
            tau,
            t_total: n as f64 * tau,
            m: ELECTRON_MASS,
            d: 1e-9,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let cfg: ExperimentConfig = serde_json::from_str(s).map_err(|e| Error::Malformed(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }

    /// Checks every field invariant; the error names the offending field.
    pub fn validate(&self) -> Result<()> {
        let finite = |name: &str, v: f64| {
            if v.is_finite() {
                Ok(())
            } else {
                Err(Error::config(name, format!("must be finite, got {v}")))
            }
        };
        finite("B", self.b_field)?;
        finite("gamma1", self.gamma1)?;
        finite("gamma2", self.gamma2)?;
        for (k, spin) in self.env.iter().enumerate() {
            finite(&format!("env[{k}].f"), spin.f)?;
        }
        if !(self.tau > 0.0) || !self.tau.is_finite() {
            return Err(Error::config("tau", format!("must be positive, got {}", self.tau)));
        }
        if !(self.m > 0.0) || !self.m.is_finite() {
            return Err(Error::config("m", format!("must be positive, got {}", self.m)));
        }
        if !(self.d > 0.0) || !self.d.is_finite() {
            return Err(Error::config("d", format!("must be positive, got {}", self.d)));
        }
        let min_total = self.n() as f64 * self.tau;
        if !self.t_total.is_finite() || self.t_total < min_total * (1.0 - 1e-12) {
            return Err(Error::config("T_total", format!("must be at least N*tau = {min_total}, got {}", self.t_total)));
        }
        Ok(())
    }

    /// Number of environment spins.
    pub fn n(&self) -> usize {
        self.env.len()
    }

    /// γ₁B/ħ, rad/s.
    pub fn omega_central(&self) -> f64 {
        self.gamma1 * self.b_field / PhysicalConstants::codata2018().hbar
    }

    /// γ₂B/ħ, rad/s.
    pub fn omega_env(&self) -> f64 {
        self.gamma2 * self.b_field / PhysicalConstants::codata2018().hbar
    }

    /// B(γ₁ − γ₂)/ħ, rad/s.
    pub fn zeeman_splitting(&self) -> f64 {
        (self.gamma1 - self.gamma2) * self.b_field / PhysicalConstants::codata2018().hbar
    }

    /// The common coupling when every environment spin has the same `f`.
    pub fn uniform_coupling(&self) -> Option<f64> {
        let first = self.env.first()?.f;
        self.env.iter().all(|s| s.f == first).then_some(first)
    }

    /// Copy with exactly `n` environment spins, repeating the first spin of
    /// this config as the template. `T_total` is raised to `n·τ` if needed.
    pub fn with_n(&self, n: usize) -> Result<Self> {
        let template =
            self.env.first().copied().ok_or_else(|| Error::config("env", "cannot resize an empty environment without a template spin"))?;
        let mut out = self.clone();
        out.env = vec![template; n];
        out.t_total = out.t_total.max(n as f64 * out.tau);
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> ExperimentConfig {
        ExperimentConfig::uniform(QubitState::plus(), QubitState::from_angle(0.4), 1e3, 3, 1.0, 1e-6).unwrap()
    }

    #[test]
    fn json_uses_listed_field_names() {
        let v: serde_json::Value = serde_json::from_str(&sample().to_json()).unwrap();
        for key in ["central", "env", "B", "gamma1", "gamma2", "tau", "T_total", "m", "d"] {
            assert!(v.get(key).is_some(), "missing {key}");
        }
        assert_eq!(ExperimentConfig::from_json(&sample().to_json()).unwrap(), sample());
    }

    #[test]
    fn validation_names_field() {
        let mut c = sample();
        c.tau = 0.0;
        assert!(matches!(c.validate(), Err(Error::InvalidConfig { field, .. }) if field == "tau"));
        let mut c = sample();
        c.t_total = 1e-9;
        assert!(matches!(c.validate(), Err(Error::InvalidConfig { field, .. }) if field == "T_total"));
        let mut c = sample();
        c.m = -1.0;
        assert!(matches!(c.validate(), Err(Error::InvalidConfig { field, .. }) if field == "m"));
        let mut c = sample();
        c.d = 0.0;
        assert!(matches!(c.validate(), Err(Error::InvalidConfig { field, .. }) if field == "d"));
    }

    #[test]
    fn missing_field_is_reported() {
        let mut v: serde_json::Value = serde_json::from_str(&sample().to_json()).unwrap();
        v.as_object_mut().unwrap().remove("tau");
        let err = ExperimentConfig::from_json(&v.to_string()).unwrap_err();
        assert!(err.to_string().contains("tau"), "{err}");
    }

    #[test]
    fn angular_helper_round_trips_frequencies() {
        let c = ExperimentConfig::from_angular(QubitState::UP, vec![], 3.0, 1.0, 1.0).unwrap();
        assert!((c.omega_central() - 3.0).abs() < 1e-14);
        assert!((c.omega_env() - 1.0).abs() < 1e-14);
        assert!((c.zeeman_splitting() - 2.0).abs() < 1e-14);
    }

    #[test]
    fn resize() {
        let c = sample().with_n(10).unwrap();
        assert_eq!(c.n(), 10);
        assert!(c.validate().is_ok());
    }
}
