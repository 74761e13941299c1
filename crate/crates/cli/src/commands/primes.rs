use anyhow::Result;
use clap::{ArgGroup, Args};
use wavenum_core::conumber::{self, ScheduleMode};
use wavenum_core::oracle;

use super::schedule::{budget_guard, entries_csv, entry_line, header_line};
use super::{Ctx, Mode};
use crate::output::{emit, json_envelope, Format};

/// Identify primes by scanning co-number product windows; every window is
/// verified against the classical sieve before the recursion advances.
#[derive(Debug, Args)]
#[command(group = ArgGroup::new("scope").required(true).args(["limit", "iterations"]))]
pub struct PrimesArgs {
    /// Identify every prime up to this bound.
    #[arg(long, value_name = "N", value_parser = clap::value_parser!(u64).range(3..))]
    limit: Option<u64>,

    /// Run a fixed number of recursion iterations instead.
    #[arg(long, value_name = "N", value_parser = clap::value_parser!(u32).range(1..))]
    iterations: Option<u32>,

    /// Schedule flavor.
    #[arg(long, value_enum, default_value_t = Mode::Conservative)]
    mode: Mode,
}

pub fn run(args: PrimesArgs, ctx: &Ctx) -> Result<()> {
    let mode = args.mode.core();
    let iterations = match (args.limit, args.iterations) {
        (Some(limit), None) => iterations_for_limit(mode, limit)?,
        (None, Some(n)) => n,
        _ => unreachable!("clap group admits exactly one scope"),
    };
    let outcome = conumber::run_schedule(iterations, mode, ctx.phase_budget)?;

    // every window was verified, so the identified set reads off the oracle
    // table: all primes up to the largest survivor, cut at --limit
    let cut = outcome.entries.last().map(|e| {
        args.limit
            .map_or(e.largest_prime, |l| l.min(e.largest_prime))
    });
    let primes: Vec<u64> = match cut {
        Some(bound) => oracle::sieve(bound)?.primes().to_vec(),
        None => Vec::new(),
    };

    let body = match ctx.format {
        Format::Text => {
            let mut text = match args.limit {
                Some(limit) => format!(
                    "mode {} | limit {limit} | phase budget {} | phases used {} | iterations {} of {}\n",
                    outcome.mode,
                    outcome.phase_budget,
                    outcome.phases_used,
                    outcome.entries.len(),
                    iterations
                ),
                None => header_line(&outcome, iterations),
            };
            for entry in &outcome.entries {
                text.push_str(&entry_line(entry));
            }
            text.push_str(&format!("primes ({}):", primes.len()));
            for p in &primes {
                text.push_str(&format!(" {p}"));
            }
            text.push('\n');
            text
        }
        Format::Csv => entries_csv(&outcome.entries)?,
        Format::Json => {
            let config = serde_json::json!({
                "limit": args.limit,
                "iterations": iterations,
                "mode": outcome.mode,
                "phase_budget": ctx.phase_budget,
                "format": ctx.format.name(),
                "jobs": ctx.jobs,
            });
            let data = serde_json::json!({
                "schedule": serde_json::to_value(&outcome)?,
                "primes": primes,
            });
            json_envelope("primes", config, data)
        }
    };
    emit(ctx.out.as_deref(), &body)?;
    budget_guard(&outcome, iterations, ctx.phase_budget)
}

/// Smallest iteration count whose window upper bound exceeds the limit;
/// after that many verified windows every prime <= limit is identified.
fn iterations_for_limit(mode: ScheduleMode, limit: u64) -> Result<u32> {
    match mode {
        ScheduleMode::Conservative => {
            // window k scans [p_{k+1}, p_{k+1}^2)
            let mut count = 1u32;
            let mut head = 3u64;
            while head.checked_mul(head).is_some_and(|sq| sq <= limit) {
                head = oracle::next_prime_after(head);
                count += 1;
            }
            Ok(count)
        }
        ScheduleMode::Maximal => {
            // each window squares the previous largest prime
            let mut count = 1u32;
            let mut top = 3u64;
            loop {
                match top.checked_mul(top) {
                    Some(hi) if hi <= limit => {
                        top = oracle::largest_prime_below(hi)?;
                        count += 1;
                    }
                    _ => return Ok(count),
                }
            }
        }
    }
}
