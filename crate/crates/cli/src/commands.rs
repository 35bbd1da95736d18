//! One function per JSON-emitting command. Every result is a JSON object
//! with a `command` key; magnitudes carry `{sign, log10, linear}`.

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Map, Value};
use spinbath_core::analytic::{
    decoherence_factor_z, expectation_m_realclock, expectation_m_unitary, final_state_weak_coupling, off_diagonal_damping_exponent,
    real_clock_damping_exponent, reduced_rho, ClockParams,
};
use spinbath_core::exact::{evolve_sequential, expectation_global_m_complex, partial_trace_env, CouplingMode, EvolveOptions};
use spinbath_core::limits::{delta_theta_floor, expectation_m_measured, expectation_sx_measured};
use spinbath_core::undecidability::{
    crossover_n_from_coefficients, decide_both_models, feasibility_check, k_linear_coefficient, k_quintic_coefficient,
    linear_always_undecidable, local_undecidability, quintic_crossover_log10, verdict_for_k, UndecidabilityVerdict,
};
use spinbath_core::{log_exp_neg, DensityMatrix2, ExperimentConfig, LogMagnitude};

use crate::error::CliError;
use crate::input::RunConfig;

/// Adds `linear` next to every `{sign, log10}` pair: the plain number, or
/// null when it is not representable as a normal `f64`.
pub fn annotate_magnitudes(v: &mut Value) {
    match v {
        Value::Object(map) => {
            let is_mag = map.len() == 2 && map.contains_key("sign") && map.contains_key("log10");
            if is_mag {
                let linear = linear_value(map);
                map.insert("linear".into(), linear);
            } else {
                map.values_mut().for_each(annotate_magnitudes);
            }
        }
        Value::Array(items) => items.iter_mut().for_each(annotate_magnitudes),
        _ => {}
    }
}

fn linear_value(map: &Map<String, Value>) -> Value {
    let sign = map["sign"].as_i64().unwrap_or(0);
    if sign == 0 {
        return json!(0.0);
    }
    let Some(l) = map["log10"].as_f64() else { return Value::Null };
    let x = sign as f64 * 10f64.powf(l);
    if x.is_normal() {
        json!(x)
    } else {
        Value::Null
    }
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("report types serialize")
}

fn finish(command: &str, mut body: Value) -> Value {
    annotate_magnitudes(&mut body);
    let mut out = Map::new();
    out.insert("command".into(), json!(command));
    if let Value::Object(m) = body {
        out.extend(m);
    }
    Value::Object(out)
}

fn rho_json(rho: &DensityMatrix2) -> Value {
    json!(rho.to_rows())
}

pub fn simulate(cfg: &RunConfig, n_cap: usize, dephasing: bool) -> Result<Value, CliError> {
    let e = &cfg.experiment;
    let coupling = if dephasing { CouplingMode::Dephasing } else { CouplingMode::Heisenberg };
    let rotating = EvolveOptions { interaction_picture: true, coupling, n_cap };
    let lab = EvolveOptions { interaction_picture: false, ..rotating };
    let psi = evolve_sequential(e, &rotating)?;
    let psi_lab = evolve_sequential(e, &lab)?;
    let rho = partial_trace_env(&psi);
    let closed = reduced_rho(e);
    let m = expectation_global_m_complex(&psi_lab);
    Ok(finish(
        "simulate",
        json!({
            "n": e.n(),
            "n_cap": n_cap,
            "coupling": if dephasing { "dephasing" } else { "heisenberg" },
            "norm": psi.norm_sqr(),
            "reduced_rho": rho_json(&rho),
            "closed_form_reduced_rho": rho_json(&closed),
            "closed_form_max_abs_diff": rho.max_abs_diff(&closed),
            "expectation_m": m.re,
            "expectation_m_imag": m.im,
        }),
    ))
}

pub fn analytic(cfg: &RunConfig) -> Result<Value, CliError> {
    let e = &cfg.experiment;
    let state = final_state_weak_coupling(e);
    let z = decoherence_factor_z(e);
    let clock = ClockParams::for_config(e);
    let real_clock = match expectation_m_realclock(e, &clock) {
        Ok(m) => json!({
            "expectation_m": to_value(&m),
            "expectation_m_ideal_clock": to_value(&expectation_m_realclock(e, &ClockParams::ideal(clock.t_exp))?),
        }),
        Err(err) => json!({ "expectation_m": null, "expectation_m_ideal_clock": null, "note": err.to_string() }),
    };
    let omega_nm = 2.0 * e.omega_central();
    let exponent = off_diagonal_damping_exponent(omega_nm, e.t_total)?;
    Ok(finish(
        "analytic",
        json!({
            "n": e.n(),
            "weak_coupling_warning": state.warning,
            "decoherence_factor": { "re": z.re, "im": z.im, "abs": z.norm() },
            "reduced_rho": rho_json(&reduced_rho(e)),
            "expectation_m_unitary": expectation_m_unitary(e),
            "real_clock": {
                "theta": clock.theta,
                "t_exp": clock.t_exp,
                "damping_exponent": real_clock_damping_exponent(e, &clock),
                "values": real_clock,
            },
            "off_diagonal_damping": {
                "omega_nm": omega_nm,
                "t": e.t_total,
                "exponent": exponent,
                "factor": to_value(&log_exp_neg(exponent)?),
            },
        }),
    ))
}

pub fn limits(cfg: &RunConfig) -> Result<Value, CliError> {
    let report = delta_theta_floor(&cfg.device()?);
    let e = &cfg.experiment;
    let dtheta = cfg.analysis.dtheta;
    let measured = expectation_m_measured(e, &ClockParams::for_config(e), dtheta)?;
    let sx = expectation_sx_measured(e, dtheta)?;
    let mut body = to_value(&report);
    body["floor"] = json!(report.floor());
    body["dtheta"] = json!(dtheta);
    body["measured_m"] = to_value(&measured);
    body["measured_sx"] = to_value(&sx);
    Ok(finish("limits", body))
}

pub fn feasibility(cfg: &RunConfig) -> Result<Value, CliError> {
    let report = feasibility_check(&cfg.experiment, &cfg.analysis.thresholds);
    let mut body = to_value(&report);
    body["all_pass"] = json!(report.all_pass());
    Ok(finish("feasibility", body))
}

/// Verdict for the primary K: the configured override, or else the
/// real-clock exponent of the config.
pub fn primary_verdict(e: &ExperimentConfig, k_override: Option<f64>, dtheta: f64) -> Result<(f64, UndecidabilityVerdict), CliError> {
    let k = k_override.unwrap_or_else(|| real_clock_damping_exponent(e, &ClockParams::for_config(e)));
    Ok((k, verdict_for_k(k, dtheta, e.n() as u64)?))
}

pub fn decide(cfg: &RunConfig) -> Result<Value, CliError> {
    let e = &cfg.experiment;
    let dtheta = cfg.analysis.dtheta;
    let (k, primary) = primary_verdict(e, cfg.analysis.k, dtheta)?;
    let both = decide_both_models(e, &ClockParams::for_config(e), dtheta);
    let mut body = to_value(&primary);
    body["k"] = json!(k);
    body["k_source"] = json!(if cfg.analysis.k.is_some() { "override" } else { "real_clock" });
    body["n"] = json!(e.n());
    body["dtheta"] = json!(dtheta);
    body["models"] = match both {
        Ok(r) => to_value(&r),
        Err(err) => json!({ "note": err.to_string() }),
    };
    body["local"] = to_value(&local_undecidability(e, dtheta)?);
    Ok(finish("decide", body))
}

pub fn crossover(cfg: &RunConfig) -> Result<Value, CliError> {
    let e = &cfg.experiment;
    let lin = k_linear_coefficient(e);
    let quin = k_quintic_coefficient(e)?;
    let n_max = cfg.analysis.n_max;
    let mut tilts = vec![cfg.analysis.dtheta];
    tilts.extend(&cfg.analysis.dtheta_table);
    let rows = tilts.par_iter().map(|&dtheta| crossover_row(lin, quin, dtheta, n_max)).collect::<Result<Vec<Value>, CliError>>()?;
    Ok(finish(
        "crossover",
        json!({
            "n_max": n_max,
            "linear_coefficient": lin,
            "quintic_coefficient": to_value(&quin),
            "rows": rows,
        }),
    ))
}

fn crossover_row(lin: f64, quin: LogMagnitude, dtheta: f64, n_max: u64) -> Result<Value, CliError> {
    let scan = crossover_n_from_coefficients(lin, quin, dtheta, n_max)?;
    let root = quintic_crossover_log10(quin, dtheta)?;
    let closed = 10f64.powf(root).ceil().max(1.0);
    Ok(json!({
        "dtheta": dtheta,
        "quintic_n_star": scan.quintic,
        "quintic_closed_form_log10": root,
        "quintic_closed_form": (closed < 9.0e15).then_some(closed as u64),
        "linear_n_star": scan.linear,
        "linear_undecidable_at_all_n": linear_always_undecidable(lin, dtheta)?,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn linear_added_next_to_log() {
        let mut v = json!({"a": {"sign": 1, "log10": -3.0}, "b": [{"sign": -1, "log10": -400.0}], "c": {"sign": 0, "log10": null}});
        annotate_magnitudes(&mut v);
        assert!((v["a"]["linear"].as_f64().unwrap() - 1e-3).abs() < 1e-18);
        assert!(v["b"][0]["linear"].is_null());
        assert_eq!(v["c"]["linear"], json!(0.0));
    }
}
