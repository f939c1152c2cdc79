//! `hs` — run interface-evolution scenarios, execute the verification
//! suites, and export reference curves.
//!
//! Exit codes: 0 success, 1 input or usage error, 2 numerical failure
//! (non-convergence or non-finite values). `HS_THREADS` caps the worker
//! count.

mod cmd_check;
mod cmd_ref;
mod cmd_run;

use std::process::ExitCode;

use clap::{Parser, Subcommand};

#[derive(Parser)]
#[command(name = "hs", version, about, max_term_width = 100)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Rasterize a scenario, sweep the requested times, and write fields,
    /// masks, graphs and a manifest.
    Run(cmd_run::RunArgs),
    /// Run a named verification suite and print its probe table.
    Check(cmd_check::CheckArgs),
    /// Evaluate a reference curve as CSV on stdout.
    Ref(cmd_ref::RefArgs),
}

fn main() -> ExitCode {
    if let Ok(threads) = std::env::var("HS_THREADS") {
        match threads.parse::<usize>() {
            Ok(n) if n > 0 => {
                let _ = rayon::ThreadPoolBuilder::new()
                    .num_threads(n)
                    .build_global();
            }
            _ => {
                eprintln!("error: HS_THREADS must be a positive integer");
                return ExitCode::from(1);
            }
        }
    }
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let outcome = match cli.command {
        Command::Run(args) => cmd_run::run(args),
        Command::Check(args) => cmd_check::run(args),
        Command::Ref(args) => cmd_ref::run(args),
    };
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}

/// 2 for numerical failures, 1 for everything else.
fn exit_code_for(e: &hs_core::Error) -> u8 {
    use hs_core::Error;
    match e {
        Error::NotConverged { .. } | Error::NonFiniteValue { .. } => 2,
        Error::AtTime { source, .. } => exit_code_for(source),
        _ => 1,
    }
}
