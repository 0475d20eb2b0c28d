//! `pjacobi` experiment runner: each subcommand writes `<name>.csv` and
//! `<name>.json` to the output directory and prints the summary on stdout.
//!
//! Exit codes: 0 success, 2 input error, 3 numerical failure, 4 `--assert`
//! tolerance exceeded. Errors are also reported as JSON on stderr.

mod args;
mod commands;
mod error;
mod output;

use args::Cli;
use clap::error::ErrorKind;
use clap::Parser;
use error::CliError;
use serde_json::json;

fn execute(cli: Cli) -> Result<(), CliError> {
    if let Some(w) = cli.workers {
        if w == 0 {
            return error::input("--workers must be positive");
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(w)
            .build_global()
            .map_err(|e| CliError::Input(e.to_string()))?;
    }
    if let Some(tol) = cli.assert_tol {
        if !(tol >= 0.0) {
            return error::input(format!("--assert tolerance {tol} must be non-negative"));
        }
    }
    let name = cli.command.name();
    let outcome = commands::run(&cli.command)?;
    let dir = output::out_dir(cli.out);
    let (csv, js) = output::write(&dir, name, &outcome.table, &outcome.summary)?;
    let report = json!({
        "subcommand": name,
        "csv": csv.display().to_string(),
        "json": js.display().to_string(),
        "summary": outcome.summary,
    });
    println!("{}", serde_json::to_string_pretty(&report).expect("summary serializes"));
    if let Some(tol) = cli.assert_tol {
        let (metric, value) = outcome.metric;
        if !(value <= tol) {
            return Err(CliError::Assert { metric, value, tol });
        }
    }
    Ok(())
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                e.exit();
            }
            let _ = e.print();
            let err = json!({ "error": "usage", "message": e.kind().to_string(), "exit_code": 2 });
            eprintln!("{err}");
            std::process::exit(2);
        }
    };
    if let Err(e) = execute(cli) {
        eprintln!("{}", e.to_json());
        std::process::exit(e.exit_code());
    }
}
