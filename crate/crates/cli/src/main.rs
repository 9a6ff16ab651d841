use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;

use pubgoods_cli::{load_scenario, render, run, CliError, Format, RunOptions, Verb};

/// Equilibria, mechanisms and voting outcomes for public-goods scenarios.
#[derive(Debug, Parser)]
#[command(name = "pubgoods", version)]
struct Args {
    /// Analysis to run; `report` runs everything the scenario supports.
    #[arg(value_enum)]
    verb: Verb,

    #[arg(long, value_name = "PATH")]
    scenario: PathBuf,

    #[arg(long, value_enum, default_value = "table")]
    format: Format,

    /// Write here instead of standard output.
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,

    /// Resolution of brute-force oracle grids.
    #[arg(long, value_name = "REAL")]
    grid_step: Option<f64>,

    /// Cross-check results against brute force and fail on mismatch.
    #[arg(long)]
    verify: bool,
}

fn execute(args: &Args) -> Result<(), CliError> {
    let scenario = load_scenario(&args.scenario)?;
    let opts = RunOptions {
        grid_step: args.grid_step,
        verify: args.verify,
    };
    let report = run(args.verb, &scenario, &opts)?;
    let bytes = render(&report, args.format);
    match &args.out {
        Some(path) => std::fs::write(path, bytes).map_err(|source| CliError::Io {
            path: path.display().to_string(),
            source,
        }),
        None => std::io::stdout()
            .lock()
            .write_all(&bytes)
            .map_err(|source| CliError::Io {
                path: "<stdout>".into(),
                source,
            }),
    }
}

fn main() -> ExitCode {
    let args = match Args::try_parse() {
        Ok(a) => a,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match execute(&args) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
