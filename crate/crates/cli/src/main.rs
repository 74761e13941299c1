//! wavenum: exact arithmetic for periodic root-of-unity sequences, a
//! window-verified prime-identification recursion, modular residue tables,
//! and a wheel-enumeration benchmark — all checked against a classical
//! sieve, all byte-deterministic for a fixed configuration.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

mod commands;
mod errors;
mod output;

use commands::bench::BenchArgs;
use commands::primes::PrimesArgs;
use commands::render::RenderArgs;
use commands::schedule::ScheduleArgs;
use commands::table1::Table1Args;
use commands::verify::VerifyArgs;
use output::Format;

#[derive(Debug, Parser)]
#[command(
    name = "wavenum",
    version,
    propagate_version = true,
    about = "Exact wave-number arithmetic, prime windows, and residue tables"
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Write output to PATH instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,

    /// Worker threads for window scans (default: all available cores).
    #[arg(long, global = true, value_name = "N",
          value_parser = clap::value_parser!(u32).range(1..))]
    jobs: Option<u32>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Identify primes via verified co-number product windows.
    Primes(PrimesArgs),
    /// Report the iteration schedule with counts and estimates.
    Schedule(ScheduleArgs),
    /// Emit the starred-residue table; --check compares the embedded fixture.
    Table1(Table1Args),
    /// Run the invariant suite and print PASS/FAIL/INFO lines.
    Verify(VerifyArgs),
    /// Time wheel enumeration plus trial division against the baseline sieve.
    Bench(BenchArgs),
    /// Print terms of a wave, co-number, or co-number product.
    Render(RenderArgs),
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            // help and version print to stdout and exit clean; real parse
            // failures take the usage exit code
            let code = u8::from(err.use_stderr());
            let _ = err.print();
            return ExitCode::from(code);
        }
    };
    match commands::dispatch(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(errors::exit_code(&err))
        }
    }
}
