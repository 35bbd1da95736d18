//! Library side of the `spinbath` command: config ingestion, the analysis
//! commands, and JSON/CSV emission.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod commands;
pub mod error;
pub mod input;
pub mod manifest;
pub mod sweep;

use std::fs;
use std::path::{Path, PathBuf};

use serde_json::json;
use sha2::{Digest, Sha256};
use spinbath_core::constants::CONSTANTS_VERSION;

pub use error::CliError;
pub use input::RunConfig;
pub use manifest::{Command, RunManifest, Scale, SweepAxis, SweepParam};

/// What a successful run produced.
#[derive(Clone, Debug, PartialEq)]
pub struct RunOutput {
    /// JSON document, or CSV text for sweeps.
    pub body: String,
    /// Files written (output and its sidecar), if any.
    pub written: Vec<PathBuf>,
}

/// Executes one manifest. The result body is also written to `output_path`
/// when set, together with a `<output>.meta.json` sidecar.
pub fn run(manifest: &RunManifest) -> Result<RunOutput, CliError> {
    manifest.validate()?;
    let text = fs::read_to_string(&manifest.config_path)
        .map_err(|e| CliError::Io(format!("cannot read config {}: {e}", manifest.config_path.display())))?;
    let cfg = RunConfig::from_json(&text)?;
    let body = execute(manifest, &cfg)?;

    let mut written = Vec::new();
    if let Some(out) = &manifest.output_path {
        fs::write(out, &body)?;
        let meta = sidecar_path(out);
        fs::write(&meta, metadata(manifest, &text))?;
        written.push(out.clone());
        written.push(meta);
    }
    Ok(RunOutput { body, written })
}

/// Runs the command on an already-parsed config and renders its output.
pub fn execute(manifest: &RunManifest, cfg: &RunConfig) -> Result<String, CliError> {
    let value = match manifest.command {
        Command::Simulate => commands::simulate(cfg, manifest.n_cap, manifest.dephasing_mode)?,
        Command::Analytic => commands::analytic(cfg)?,
        Command::Limits => commands::limits(cfg)?,
        Command::Feasibility => commands::feasibility(cfg)?,
        Command::Decide => commands::decide(cfg)?,
        Command::Crossover => commands::crossover(cfg)?,
        Command::Sweep => {
            let axis = manifest.sweep_axis.as_ref().ok_or_else(|| CliError::Usage("command sweep needs --sweep".into()))?;
            let mut buf = Vec::new();
            sweep::write_sweep(cfg, axis, &mut buf)?;
            return Ok(String::from_utf8(buf).expect("csv output is UTF-8"));
        }
    };
    Ok(serde_json::to_string_pretty(&value)? + "\n")
}

pub fn sidecar_path(out: &Path) -> PathBuf {
    let mut name = out.file_name().unwrap_or_default().to_os_string();
    name.push(".meta.json");
    out.with_file_name(name)
}

/// Run metadata: no timestamps, so reruns reproduce it byte for byte.
fn metadata(manifest: &RunManifest, config_text: &str) -> String {
    let hash = Sha256::digest(config_text.as_bytes());
    let hex: String = hash.iter().map(|b| format!("{b:02x}")).collect();
    let meta = json!({
        "command": manifest.command.name(),
        "config_path": manifest.config_path.display().to_string(),
        "config_sha256": hex,
        "constants": CONSTANTS_VERSION,
        "tool_version": env!("CARGO_PKG_VERSION"),
        "sweep": manifest.sweep_axis,
        "n_cap": manifest.n_cap,
        "dephasing_mode": manifest.dephasing_mode,
    });
    serde_json::to_string_pretty(&meta).expect("metadata serializes") + "\n"
}
