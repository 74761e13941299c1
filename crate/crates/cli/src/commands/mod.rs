use std::path::PathBuf;

use anyhow::Result;
use clap::ValueEnum;
use wavenum_core::conumber::{self, ScheduleMode, DEFAULT_PHASE_BUDGET, MIN_PHASE_BUDGET};

use crate::errors::Usage;
use crate::output::Format;
use crate::{Cli, Command};

pub mod bench;
pub mod primes;
pub mod render;
pub mod schedule;
pub mod table1;
pub mod verify;

/// Resolved run configuration shared by every subcommand.
#[derive(Debug, Clone)]
pub struct Ctx {
    pub format: Format,
    pub out: Option<PathBuf>,
    pub jobs: usize,
    pub phase_budget: u64,
}

pub fn dispatch(cli: Cli) -> Result<()> {
    let ctx = Ctx {
        format: cli.format,
        out: cli.out,
        jobs: resolve_jobs(cli.jobs),
        phase_budget: phase_budget_from_env()?,
    };
    let ctx = &ctx;
    // one pool sized by --jobs serves every chunked window scan
    conumber::with_parallelism(ctx.jobs, move || match cli.command {
        Command::Primes(args) => primes::run(args, ctx),
        Command::Schedule(args) => schedule::run(args, ctx),
        Command::Table1(args) => table1::run(args, ctx),
        Command::Verify(args) => verify::run(args, ctx),
        Command::Bench(args) => bench::run(args, ctx),
        Command::Render(args) => render::run(args, ctx),
    })
}

fn resolve_jobs(flag: Option<u32>) -> usize {
    match flag {
        Some(n) => n as usize,
        None => std::thread::available_parallelism().map_or(1, |n| n.get()),
    }
}

/// WAVENUM_PHASE_BUDGET overrides the default scan budget; the floor keeps
/// the seed windows reachable.
fn phase_budget_from_env() -> Result<u64> {
    let raw = match std::env::var("WAVENUM_PHASE_BUDGET") {
        Ok(raw) => raw,
        Err(std::env::VarError::NotPresent) => return Ok(DEFAULT_PHASE_BUDGET),
        Err(std::env::VarError::NotUnicode(_)) => {
            return Err(Usage("WAVENUM_PHASE_BUDGET must be valid UTF-8".into()).into());
        }
    };
    let budget: u64 = raw.trim().parse().map_err(|_| {
        Usage(format!(
            "WAVENUM_PHASE_BUDGET must be an integer, got {raw:?}"
        ))
    })?;
    if budget < MIN_PHASE_BUDGET {
        return Err(Usage(format!(
            "WAVENUM_PHASE_BUDGET must be at least {MIN_PHASE_BUDGET}, got {budget}"
        ))
        .into());
    }
    Ok(budget)
}

/// Comma-separated prime list, e.g. `2,3,5`. Primality, order, and
/// duplicates are enforced by the library constructors downstream.
pub fn parse_prime_list(raw: &str) -> Result<Vec<u64>> {
    raw.split(',')
        .map(|part| {
            part.trim()
                .parse::<u64>()
                .map_err(|_| Usage(format!("invalid prime list entry {part:?}")).into())
        })
        .collect()
}

/// Schedule flavor flag; `conservative` absorbs one prime per step,
/// `maximal` absorbs every known prime and squares the reach.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Conservative,
    Maximal,
}

impl Mode {
    pub fn core(self) -> ScheduleMode {
        match self {
            Mode::Conservative => ScheduleMode::Conservative,
            Mode::Maximal => ScheduleMode::Maximal,
        }
    }
}
