use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;
use spinbath_cli::{run, CliError, Command, RunManifest, SweepAxis};
use spinbath_core::exact::DEFAULT_N_CAP;

/// Central-spin measurement model: exact simulation, closed forms,
/// measurement limits and undecidability verdicts.
#[derive(Parser, Debug)]
#[command(name = "spinbath", version)]
struct Args {
    /// Experiment config (JSON).
    #[arg(long)]
    config: PathBuf,
    /// Output file; a `<out>.meta.json` sidecar is written next to it.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum)]
    command: Command,
    /// PARAM:START:STOP:POINTS:SCALE with PARAM in N, tau, dtheta, f, B_dgamma.
    #[arg(long)]
    sweep: Option<String>,
    /// Largest N the exact engine accepts.
    #[arg(long, default_value_t = DEFAULT_N_CAP)]
    n_cap: usize,
    /// Keep only the σ_zσ_z part of the coupling in `simulate`.
    #[arg(long)]
    dephasing_mode: bool,
}

fn manifest(args: Args) -> Result<RunManifest, CliError> {
    let sweep_axis = args.sweep.as_deref().map(str::parse::<SweepAxis>).transpose()?;
    Ok(RunManifest {
        config_path: args.config,
        command: args.command,
        output_path: args.out,
        sweep_axis,
        n_cap: args.n_cap,
        dephasing_mode: args.dephasing_mode,
    })
}

fn fail(e: &CliError) -> ExitCode {
    eprintln!("{}", e.to_json());
    ExitCode::from(e.exit_code())
}

fn main() -> ExitCode {
    let args = match Args::try_parse() {
        Ok(a) => a,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => return fail(&CliError::Usage(e.render().to_string().trim().to_string())),
    };
    match manifest(args).and_then(|m| run(&m)) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(out.body.as_bytes()).and_then(|_| stdout.flush()).is_err() {
                return ExitCode::from(6);
            }
            ExitCode::SUCCESS
        }
        Err(e) => fail(&e),
    }
}
