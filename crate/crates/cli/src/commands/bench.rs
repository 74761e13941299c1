use std::time::Instant;

use anyhow::Result;
use clap::Args;
use num_traits::ToPrimitive;
use wavenum_core::conumber::{self, CoProduct};
use wavenum_core::oracle;

use super::{parse_prime_list, Ctx};
use crate::errors::{Capacity, Mismatch};
use crate::output::{csv_table, emit, json_envelope, Format};

/// Time the baseline sieve against wheel-candidate enumeration plus trial
/// division, and check the exact candidate-density arithmetic. Counts and
/// densities are deterministic; the two timing fields are not.
#[derive(Debug, Args)]
pub struct BenchArgs {
    /// Upper bound for both prime enumerations.
    #[arg(long, value_name = "N", value_parser = clap::value_parser!(u64).range(1000..))]
    limit: u64,

    /// Wheel primes to skip by, e.g. `2,3,5`.
    #[arg(
        long,
        visible_alias = "primes",
        value_name = "PRIMES",
        default_value = "2,3,5"
    )]
    wheel_primes: String,
}

pub fn run(args: BenchArgs, ctx: &Ctx) -> Result<()> {
    let wheel = parse_prime_list(&args.wheel_primes)?;
    let coproduct = CoProduct::new(&wheel)?;
    if args.limit > ctx.phase_budget {
        return Err(Capacity(format!(
            "limit {} exceeds the phase budget {}",
            args.limit, ctx.phase_budget
        ))
        .into());
    }
    let period = match coproduct.period().to_u64() {
        Some(p) if p <= ctx.phase_budget => p,
        _ => {
            return Err(Capacity(format!(
                "wheel period {} exceeds the phase budget {}",
                coproduct.period(),
                ctx.phase_budget
            ))
            .into());
        }
    };

    let started = Instant::now();
    let baseline = oracle::sieve_with_budget(args.limit, oracle::DEFAULT_SIEVE_BUDGET_BYTES)?;
    let baseline_ms = started.elapsed().as_secs_f64() * 1e3;
    let baseline_count = baseline.len() as u64;
    drop(baseline);

    let started = Instant::now();
    let (found, examined) = conumber::wheel_primes_up_to(&wheel, args.limit);
    let wheel_ms = started.elapsed().as_secs_f64() * 1e3;
    let wheel_count = found.len() as u64;

    // density * period = phi(P): the survivor count over one full period
    // must land exactly on the closed form
    let per_period = conumber::candidate_count(&wheel, period);
    let phi: u64 = wheel.iter().map(|p| p - 1).product();
    let density = coproduct.density();

    let body = match ctx.format {
        Format::Text => format!(
            "limit {} | wheel primes {} | period {period} | density {density}\n\
             candidates examined {examined} | survivors per period {per_period} = phi({period})\n\
             wheel primes found {wheel_count} | baseline primes {baseline_count}\n\
             baseline sieve {baseline_ms:.3} ms | wheel enumeration + trial division {wheel_ms:.3} ms\n",
            args.limit,
            args.wheel_primes,
        ),
        Format::Csv => csv_table(
            &[
                "limit",
                "wheel_primes",
                "period",
                "density",
                "candidates_examined",
                "survivors_per_period",
                "primes_found",
                "baseline_primes",
                "baseline_ms",
                "wheel_ms",
            ],
            &[vec![
                args.limit.to_string(),
                args.wheel_primes.clone(),
                period.to_string(),
                density.to_string(),
                examined.to_string(),
                per_period.to_string(),
                wheel_count.to_string(),
                baseline_count.to_string(),
                format!("{baseline_ms:.3}"),
                format!("{wheel_ms:.3}"),
            ]],
        )?,
        Format::Json => {
            let config = serde_json::json!({
                "limit": args.limit,
                "wheel_primes": wheel,
                "phase_budget": ctx.phase_budget,
                "format": ctx.format.name(),
                "jobs": ctx.jobs,
            });
            let data = serde_json::json!({
                "period": period,
                "density": density.to_string(),
                "candidates_examined": examined,
                "survivors_per_period": per_period,
                "primes_found": wheel_count,
                "baseline_primes": baseline_count,
                "baseline_ms": baseline_ms,
                "wheel_ms": wheel_ms,
            });
            json_envelope("bench", config, data)
        }
    };
    emit(ctx.out.as_deref(), &body)?;

    if wheel_count != baseline_count {
        return Err(Mismatch(format!(
            "wheel enumeration found {wheel_count} primes, baseline sieve {baseline_count}"
        ))
        .into());
    }
    if per_period != phi {
        return Err(Mismatch(format!(
            "survivors per period {per_period} != phi({period}) = {phi}"
        ))
        .into());
    }
    Ok(())
}
