mod args;
mod commands;
mod config;
mod errors;
mod output;
mod summary;

use std::process::ExitCode;

use clap::Parser;

use crate::args::{Cli, Command};
use crate::errors::CliResult;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // help/version are not errors; everything else is an input
            // problem and exits 1
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return ExitCode::SUCCESS;
            }
            eprint!("{e}");
            return ExitCode::from(1);
        }
    };
    match dispatch(&cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn dispatch(command: &Command) -> CliResult<()> {
    let resolved = config::resolve(command.common())?;
    match command {
        Command::Solve { .. } => commands::run_solve(&resolved),
        Command::Sample {
            t_list,
            x_min,
            x_max,
            nx,
            ..
        } => commands::run_sample(&resolved, t_list, *x_min, *x_max, *nx),
        Command::Verify { n_psi, tol, .. } => commands::run_verify(&resolved, *n_psi, *tol),
        Command::Grh { dt, tol, .. } => commands::run_grh(&resolved, *dt, *tol),
        Command::SweepA0 { steps, .. } => commands::run_sweep_a0(&resolved, *steps),
        Command::SweepZero { steps, .. } => commands::run_sweep_zero(&resolved, *steps),
        Command::Fv {
            x_min,
            x_max,
            snap_times,
            window,
            ..
        } => commands::run_fv(&resolved, *x_min, *x_max, snap_times.as_deref(), *window),
    }
}
