use anyhow::Result;
use clap::Args;
use wavenum_core::conumber::{self, ScheduleEntry, ScheduleOutcome};

use super::{Ctx, Mode};
use crate::errors::Capacity;
use crate::output::{csv_table, emit, json_envelope, Format};

/// Report the iteration schedule: window bounds, phases scanned, largest
/// prime identified, cumulative count, and (in maximal mode) the
/// closed-form count estimate with its relative error.
#[derive(Debug, Args)]
pub struct ScheduleArgs {
    /// Number of iterations to run.
    #[arg(long, value_name = "N", default_value_t = 4,
          value_parser = clap::value_parser!(u32).range(1..))]
    iterations: u32,

    /// Schedule flavor.
    #[arg(long, value_enum, default_value_t = Mode::Maximal)]
    mode: Mode,
}

pub fn run(args: ScheduleArgs, ctx: &Ctx) -> Result<()> {
    let outcome = conumber::run_schedule(args.iterations, args.mode.core(), ctx.phase_budget)?;
    let body = match ctx.format {
        Format::Text => {
            let mut text = header_line(&outcome, args.iterations);
            for entry in &outcome.entries {
                text.push_str(&entry_line(entry));
            }
            text
        }
        Format::Csv => entries_csv(&outcome.entries)?,
        Format::Json => {
            let config = serde_json::json!({
                "iterations": args.iterations,
                "mode": outcome.mode,
                "phase_budget": ctx.phase_budget,
                "format": ctx.format.name(),
                "jobs": ctx.jobs,
            });
            json_envelope("schedule", config, serde_json::to_value(&outcome)?)
        }
    };
    emit(ctx.out.as_deref(), &body)?;
    budget_guard(&outcome, args.iterations, ctx.phase_budget)
}

/// Emitting partial results and then signalling the stop keeps the output
/// useful while the exit code reports the truncation.
pub fn budget_guard(outcome: &ScheduleOutcome, requested: u32, budget: u64) -> Result<()> {
    if outcome.budget_exhausted {
        return Err(Capacity(format!(
            "phase budget {budget} exhausted after {} of {requested} iterations",
            outcome.entries.len()
        ))
        .into());
    }
    Ok(())
}

pub fn header_line(outcome: &ScheduleOutcome, requested: u32) -> String {
    format!(
        "mode {} | phase budget {} | phases used {} | iterations {} of {}\n",
        outcome.mode,
        outcome.phase_budget,
        outcome.phases_used,
        outcome.entries.len(),
        requested
    )
}

pub fn entry_line(entry: &ScheduleEntry) -> String {
    let mut line = format!(
        "iteration {}: window [{}, {}) | scanned {} | largest prime {} | primes identified {}",
        entry.iteration,
        entry.window_lo,
        entry.window_hi,
        entry.phases_scanned,
        entry.largest_prime,
        entry.count_identified
    );
    if let (Some(estimate), Some(relative_error)) = (entry.estimate, entry.relative_error) {
        line.push_str(&format!(
            " | estimate {estimate} | relative error {relative_error}"
        ));
    }
    line.push('\n');
    line
}

pub fn entries_csv(entries: &[ScheduleEntry]) -> Result<String> {
    let rows: Vec<Vec<String>> = entries
        .iter()
        .map(|e| {
            vec![
                e.iteration.to_string(),
                e.window_lo.to_string(),
                e.window_hi.to_string(),
                e.phases_scanned.to_string(),
                e.largest_prime.to_string(),
                e.count_identified.to_string(),
                e.estimate.map_or(String::new(), |v| v.to_string()),
                e.relative_error.map_or(String::new(), |v| v.to_string()),
            ]
        })
        .collect();
    csv_table(
        &[
            "iteration",
            "window_lo",
            "window_hi",
            "phases_scanned",
            "largest_prime",
            "count_identified",
            "estimate",
            "relative_error",
        ],
        &rows,
    )
}
