use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use clap::ValueEnum;
use serde::Serialize;

use crate::error::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Command {
    Simulate,
    Analytic,
    Limits,
    Feasibility,
    Decide,
    Crossover,
    Sweep,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Simulate => "simulate",
            Command::Analytic => "analytic",
            Command::Limits => "limits",
            Command::Feasibility => "feasibility",
            Command::Decide => "decide",
            Command::Crossover => "crossover",
            Command::Sweep => "sweep",
        }
    }
}

/// Parameters a sweep may vary.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SweepParam {
    /// Number of environment spins (rounded to an integer).
    N,
    /// Flight time per spin, s.
    Tau,
    /// Device tilt, rad.
    Dtheta,
    /// Coupling of every environment spin, rad/s.
    F,
    /// B·(γ₁−γ₂), J; applied by rescaling B.
    BDgamma,
}

pub const SWEEP_WHITELIST: [&str; 5] = ["N", "tau", "dtheta", "f", "B_dgamma"];

impl FromStr for SweepParam {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        match s {
            "N" => Ok(SweepParam::N),
            "tau" => Ok(SweepParam::Tau),
            "dtheta" => Ok(SweepParam::Dtheta),
            "f" => Ok(SweepParam::F),
            "B_dgamma" => Ok(SweepParam::BDgamma),
            other => Err(CliError::Usage(format!("unknown sweep parameter `{other}`; expected one of {}", SWEEP_WHITELIST.join(", ")))),
        }
    }
}

impl fmt::Display for SweepParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let i = match self {
            SweepParam::N => 0,
            SweepParam::Tau => 1,
            SweepParam::Dtheta => 2,
            SweepParam::F => 3,
            SweepParam::BDgamma => 4,
        };
        f.write_str(SWEEP_WHITELIST[i])
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Scale {
    Linear,
    Log,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SweepAxis {
    pub param: SweepParam,
    pub start: f64,
    pub stop: f64,
    pub points: usize,
    pub scale: Scale,
}

impl SweepAxis {
    /// Grid values in order, endpoints included.
    pub fn values(&self) -> Vec<f64> {
        if self.points == 1 {
            return vec![self.start];
        }
        let last = (self.points - 1) as f64;
        (0..self.points)
            .map(|i| {
                let t = i as f64 / last;
                match self.scale {
                    Scale::Linear => self.start + t * (self.stop - self.start),
                    Scale::Log => 10f64.powf(self.start.log10() + t * (self.stop.log10() - self.start.log10())),
                }
            })
            .collect()
    }
}

/// `PARAM:START:STOP:POINTS:SCALE`, e.g. `dtheta:1e-62:1e-2:25:log`.
impl FromStr for SweepAxis {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        let parts: Vec<&str> = s.split(':').collect();
        let [param, start, stop, points, scale] = parts[..] else {
            return Err(CliError::Usage(format!("sweep spec `{s}` is not PARAM:START:STOP:POINTS:SCALE")));
        };
        let num = |what: &str, v: &str| {
            v.parse::<f64>()
                .ok()
                .filter(|x| x.is_finite())
                .ok_or_else(|| CliError::Usage(format!("sweep {what} `{v}` is not a finite number")))
        };
        let axis = SweepAxis {
            param: param.parse()?,
            start: num("start", start)?,
            stop: num("stop", stop)?,
            points: points
                .parse::<usize>()
                .ok()
                .filter(|&p| p >= 1)
                .ok_or_else(|| CliError::Usage(format!("sweep points `{points}` must be a positive integer")))?,
            scale: match scale {
                "linear" => Scale::Linear,
                "log" => Scale::Log,
                other => return Err(CliError::Usage(format!("sweep scale `{other}` must be linear or log"))),
            },
        };
        if axis.scale == Scale::Log && !(axis.start > 0.0 && axis.stop > 0.0) {
            return Err(CliError::Usage("log sweeps need positive start and stop".into()));
        }
        Ok(axis)
    }
}

/// One invocation: what to read, what to compute, where to write.
#[derive(Clone, Debug, PartialEq)]
pub struct RunManifest {
    pub config_path: PathBuf,
    pub command: Command,
    /// `None` writes to stdout only.
    pub output_path: Option<PathBuf>,
    pub sweep_axis: Option<SweepAxis>,
    pub n_cap: usize,
    pub dephasing_mode: bool,
}

impl RunManifest {
    pub fn validate(&self) -> Result<(), CliError> {
        match (self.command, self.sweep_axis.is_some()) {
            (Command::Sweep, false) => Err(CliError::Usage("command sweep needs --sweep".into())),
            (c, true) if c != Command::Sweep => {
                Err(CliError::Usage(format!("--sweep only applies to the sweep command, not {}", c.name())))
            }
            _ => Ok(()),
        }
    }
}
