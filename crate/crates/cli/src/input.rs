use serde::Deserialize;
use serde_json::Value;
use spinbath_core::limits::MeasuringDevice;
use spinbath_core::undecidability::FeasibilityThresholds;
use spinbath_core::ExperimentConfig;

use crate::error::CliError;

/// Tilt used when the config does not give one: the universe-scale floor.
pub const DEFAULT_DTHETA: f64 = 1e-62;
pub const DEFAULT_N_MAX: u64 = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DeviceSpec {
    /// kg
    pub mass: f64,
    /// m
    pub radius: f64,
    /// s
    pub duration: f64,
}

/// Optional `analysis` block of a config file.
#[derive(Clone, Debug, PartialEq, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct Analysis {
    /// Device tilt Δθ, rad.
    pub dtheta: f64,
    /// Extra tilts for the crossover table.
    pub dtheta_table: Vec<f64>,
    pub device: Option<DeviceSpec>,
    /// Largest N scanned by `crossover`.
    pub n_max: u64,
    pub thresholds: FeasibilityThresholds,
    /// Replaces the real-clock exponent K in `decide` and `sweep`.
    pub k: Option<f64>,
}

impl Default for Analysis {
    fn default() -> Self {
        Analysis {
            dtheta: DEFAULT_DTHETA,
            dtheta_table: Vec::new(),
            device: None,
            n_max: DEFAULT_N_MAX,
            thresholds: FeasibilityThresholds::default(),
            k: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub experiment: ExperimentConfig,
    pub analysis: Analysis,
}

impl RunConfig {
    pub fn from_json(text: &str) -> Result<Self, CliError> {
        let mut value: Value = serde_json::from_str(text)?;
        let obj = value.as_object_mut().ok_or_else(|| CliError::schema("$", "config must be a JSON object"))?;
        let analysis = match obj.remove("analysis") {
            Some(a) => serde_json::from_value(a).map_err(|e| prefixed("analysis", e))?,
            None => Analysis::default(),
        };
        let experiment: ExperimentConfig = serde_json::from_value(value)?;
        experiment.validate()?;
        let cfg = RunConfig { experiment, analysis };
        cfg.validate_analysis()?;
        Ok(cfg)
    }

    fn validate_analysis(&self) -> Result<(), CliError> {
        let a = &self.analysis;
        let tilt_ok = |d: f64| d > 0.0 && d.is_finite();
        if !tilt_ok(a.dtheta) {
            return Err(CliError::schema("analysis.dtheta", format!("must be positive and finite, got {}", a.dtheta)));
        }
        if let Some(i) = a.dtheta_table.iter().position(|&d| !tilt_ok(d)) {
            return Err(CliError::schema(format!("analysis.dtheta_table[{i}]"), "must be positive and finite"));
        }
        if a.n_max == 0 {
            return Err(CliError::schema("analysis.n_max", "must be at least 1"));
        }
        if let Some(k) = a.k {
            if !(k >= 0.0) || !k.is_finite() {
                return Err(CliError::schema("analysis.k", format!("must be finite and >= 0, got {k}")));
            }
        }
        if !(a.thresholds.max_coupling_ratio > 0.0) {
            return Err(CliError::schema("analysis.thresholds.max_coupling_ratio", "must be positive"));
        }
        if let Some(d) = a.device {
            MeasuringDevice::new(d.mass, d.radius, d.duration).map_err(|e| prefixed_core("analysis.device", e.into()))?;
        }
        Ok(())
    }

    pub fn device(&self) -> Result<MeasuringDevice, CliError> {
        let d = self.analysis.device.ok_or_else(|| CliError::schema("analysis.device", "limits needs a device"))?;
        Ok(MeasuringDevice::new(d.mass, d.radius, d.duration)?)
    }
}

fn prefixed(prefix: &str, e: serde_json::Error) -> CliError {
    prefixed_core(prefix, e.into())
}

fn prefixed_core(prefix: &str, e: CliError) -> CliError {
    match e {
        CliError::Schema { field, message } => {
            CliError::Schema { field: Some(field.map_or_else(|| prefix.to_string(), |f| format!("{prefix}.{f}"))), message }
        }
        other => other,
    }
}
