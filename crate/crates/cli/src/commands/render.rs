use anyhow::Result;
use clap::{ArgGroup, Args};
use num_traits::ToPrimitive;
use wavenum_core::conumber::CoProduct;
use wavenum_core::wave::{self, DecompositionKind, Term, MATERIALIZE_CAP};

use super::{parse_prime_list, Ctx};
use crate::errors::Capacity;
use crate::output::{csv_table, emit, json_envelope, Format};

/// Print terms of a wave, a co-number, or a co-number product as exact
/// frequency strings (`1`, `0`, `5/6`).
#[derive(Debug, Args)]
#[command(group = ArgGroup::new("subject")
    .required(true)
    .args(["wave", "conumber", "conumber_product", "eq16"]))]
pub struct RenderArgs {
    /// Plain wave of this wavelength.
    #[arg(long, value_name = "N", value_parser = clap::value_parser!(u64).range(1..))]
    wave: Option<u64>,

    /// Co-number (starred wave) of this wavelength.
    #[arg(long, value_name = "N", value_parser = clap::value_parser!(u64).range(1..))]
    conumber: Option<u64>,

    /// Co-number product over these primes, e.g. `2,3`.
    #[arg(long, value_name = "PRIMES")]
    conumber_product: Option<String>,

    /// The 36-term co-number product over {2, 3}, printed unreduced.
    #[arg(long, conflicts_with = "terms")]
    eq16: bool,

    /// Number of terms to print, phases 1..=TERMS (default: one period).
    #[arg(long, value_name = "TERMS", value_parser = clap::value_parser!(u64).range(1..))]
    terms: Option<u64>,

    /// Print phase-proportional frequencies (k/P) instead of reduced ones.
    #[arg(long)]
    unreduced: bool,
}

enum Subject {
    Wave { n: u64 },
    CoNumber { n: u64 },
    Product { coproduct: CoProduct },
}

impl Subject {
    fn kind(&self) -> &'static str {
        match self {
            Subject::Wave { .. } => "wave",
            Subject::CoNumber { .. } => "conumber",
            Subject::Product { .. } => "conumber_product",
        }
    }

    /// One period, as a phase count. A product period beyond the
    /// materialization cap cannot be defaulted to.
    fn period(&self) -> Result<u64> {
        match self {
            Subject::Wave { n } | Subject::CoNumber { n } => Ok(*n),
            Subject::Product { coproduct } => match coproduct.period().to_u64() {
                Some(p) if p <= MATERIALIZE_CAP => Ok(p),
                _ => Err(Capacity(format!(
                    "period {} exceeds the materialization cap {MATERIALIZE_CAP}; \
                     pass an explicit --terms",
                    coproduct.period()
                ))
                .into()),
            },
        }
    }

    fn term(&self, k: u64) -> Result<Term> {
        Ok(match self {
            Subject::Wave { n } => wave::term_at(*n, k, DecompositionKind::Plain)?,
            Subject::CoNumber { n } => wave::term_at(*n, k, DecompositionKind::Star)?,
            Subject::Product { coproduct } => coproduct.value(k),
        })
    }
}

pub fn run(args: RenderArgs, ctx: &Ctx) -> Result<()> {
    let subject = match (
        &args.wave,
        &args.conumber,
        &args.conumber_product,
        args.eq16,
    ) {
        (Some(n), None, None, false) => Subject::Wave { n: *n },
        (None, Some(n), None, false) => Subject::CoNumber { n: *n },
        (None, None, Some(raw), false) => Subject::Product {
            coproduct: CoProduct::new(&parse_prime_list(raw)?)?,
        },
        (None, None, None, true) => Subject::Product {
            coproduct: CoProduct::new(&[2, 3])?,
        },
        _ => unreachable!("clap group admits exactly one subject"),
    };
    let terms = match (args.eq16, args.terms) {
        (true, _) => 36,
        (false, Some(t)) => t,
        (false, None) => subject.period()?,
    };
    if terms > MATERIALIZE_CAP {
        return Err(Capacity(format!(
            "{terms} terms exceed the materialization cap {MATERIALIZE_CAP}"
        ))
        .into());
    }
    let unreduced = args.unreduced || args.eq16;
    let values: Vec<String> = (1..=terms)
        .map(|k| {
            let term = subject.term(k)?;
            Ok(if unreduced {
                term.unreduced_string()
            } else {
                term.canonical_string()
            })
        })
        .collect::<Result<_>>()?;

    let body = match ctx.format {
        Format::Text => {
            let mut line = values.join(" ");
            line.push('\n');
            line
        }
        Format::Csv => {
            let rows: Vec<Vec<String>> = values
                .iter()
                .enumerate()
                .map(|(i, v)| vec![(i + 1).to_string(), v.clone()])
                .collect();
            csv_table(&["k", "value"], &rows)?
        }
        Format::Json => {
            let period = match &subject {
                Subject::Wave { n } | Subject::CoNumber { n } => serde_json::json!(n),
                Subject::Product { coproduct } => match coproduct.period().to_u64() {
                    Some(p) => serde_json::json!(p),
                    None => serde_json::json!(coproduct.period().to_string()),
                },
            };
            let config = serde_json::json!({
                "subject": subject.kind(),
                "wavelength": match &subject {
                    Subject::Wave { n } | Subject::CoNumber { n } => Some(*n),
                    Subject::Product { .. } => None,
                },
                "primes": match &subject {
                    Subject::Product { coproduct } => Some(coproduct.primes()),
                    _ => None,
                },
                "terms": terms,
                "unreduced": unreduced,
                "format": ctx.format.name(),
                "jobs": ctx.jobs,
            });
            let data = serde_json::json!({
                "period": period,
                "terms": values,
            });
            json_envelope("render", config, data)
        }
    };
    emit(ctx.out.as_deref(), &body)?;
    if args.eq16 {
        eprintln!(
            "note: every nonzero term carries frequency k/6 at its own phase k \
             (25/6 at k=25, 29/6 at k=29, 31/6 at k=31, 35/6 at k=35); displays \
             listing 31/6, 37/6, 43/6 at phases 29, 31, 35 do not follow the \
             definition and are not reproduced"
        );
    }
    Ok(())
}
