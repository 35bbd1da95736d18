//! Parameter sweeps written as CSV, one row per grid point in grid order.

use std::io::Write;

use rayon::prelude::*;
use spinbath_core::undecidability::{error_floor, k_lower_bound, local_undecidability, signal_from_log_k, UndecidabilityVerdict};
use spinbath_core::{ExperimentConfig, LogMagnitude};

use crate::commands::primary_verdict;
use crate::error::CliError;
use crate::input::RunConfig;
use crate::manifest::{SweepAxis, SweepParam};

/// Column order of the sweep CSV. Magnitudes are log10 of their absolute
/// value (`-inf` for exact zero); an empty cell means "not defined".
pub const COLUMNS: [&str; 20] = [
    "index",
    "param",
    "value",
    "n",
    "dtheta",
    "k_linear",
    "k_linear_log10",
    "k_quintic_log10",
    "linear_signal_log10",
    "linear_floor_log10",
    "linear_verdict",
    "linear_margin_log10",
    "quintic_signal_log10",
    "quintic_floor_log10",
    "quintic_verdict",
    "quintic_margin_log10",
    "local_signal_log10",
    "local_floor_log10",
    "local_verdict",
    "local_margin_log10",
];

/// The config and tilt at one grid point.
pub fn apply(base: &RunConfig, param: SweepParam, value: f64) -> Result<(ExperimentConfig, f64), CliError> {
    let mut e = base.experiment.clone();
    let mut dtheta = base.analysis.dtheta;
    match param {
        SweepParam::N => {
            if !(value >= 0.0) {
                return Err(CliError::Domain(format!("sweep value N = {value} must be >= 0")));
            }
            e = e.with_n(value.round() as usize)?;
        }
        SweepParam::Tau => {
            // keep T_total / τ fixed
            e.t_total *= value / e.tau;
            e.tau = value;
        }
        SweepParam::Dtheta => dtheta = value,
        SweepParam::F => e.env.iter_mut().for_each(|s| s.f = value),
        SweepParam::BDgamma => {
            let dg = e.gamma1 - e.gamma2;
            if dg == 0.0 {
                return Err(CliError::Domain("B_dgamma sweep needs gamma1 != gamma2".into()));
            }
            e.b_field = value / dg;
        }
    }
    e.validate()?;
    Ok((e, dtheta))
}

fn fmt(x: f64) -> String {
    x.to_string()
}

fn log_cell(m: &LogMagnitude) -> String {
    fmt(m.log10())
}

fn verdict_cells(v: &UndecidabilityVerdict) -> [String; 4] {
    [log_cell(&v.signal), log_cell(&v.floor), format!("{:?}", v.verdict), v.margin_log10.map(fmt).unwrap_or_default()]
}

fn row(base: &RunConfig, axis: &SweepAxis, index: usize, value: f64) -> Result<Vec<String>, CliError> {
    let (e, dtheta) = apply(base, axis.param, value)?;
    let n = e.n() as u64;
    let (k, linear) = primary_verdict(&e, base.analysis.k, dtheta)?;
    let (k_quintic, quintic) = match k_lower_bound(&e) {
        Ok(kq) => (Some(kq), Some(UndecidabilityVerdict::compare(signal_from_log_k(kq)?, error_floor(dtheta, n)?))),
        Err(_) => (None, None),
    };
    let local = local_undecidability(&e, dtheta)?;

    let mut cells = vec![
        index.to_string(),
        axis.param.to_string(),
        fmt(value),
        n.to_string(),
        fmt(dtheta),
        fmt(k),
        fmt(k.log10()),
        k_quintic.map(|m| log_cell(&m)).unwrap_or_default(),
    ];
    cells.extend(verdict_cells(&linear));
    cells.extend(quintic.map(|v| verdict_cells(&v)).unwrap_or_default());
    cells.extend(verdict_cells(&local));
    Ok(cells)
}

/// Evaluates the grid (in parallel) and writes the CSV in grid order.
pub fn write_sweep<W: Write>(base: &RunConfig, axis: &SweepAxis, out: W) -> Result<usize, CliError> {
    let values = axis.values();
    let rows = values.par_iter().enumerate().map(|(i, &v)| row(base, axis, i, v)).collect::<Result<Vec<_>, CliError>>()?;
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(out);
    w.write_record(COLUMNS)?;
    for r in &rows {
        w.write_record(r)?;
    }
    w.flush()?;
    Ok(rows.len())
}
