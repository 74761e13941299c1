use anyhow::Result;
use clap::Args;
use num_traits::ToPrimitive;
use wavenum_core::modular::{self, ResidueRow};

use super::{parse_prime_list, Ctx};
use crate::errors::Mismatch;
use crate::output::{emit, json_envelope, Format};

/// Emit the starred-residue table over a prime set, one labelled row per
/// prime plus the product row, one column per phase of the period.
#[derive(Debug, Args)]
pub struct Table1Args {
    /// Ascending primes for the table (default: 2,3,5).
    #[arg(long, value_name = "PRIMES", conflicts_with = "check")]
    primes: Option<String>,

    /// Recompute the 2,3,5 table and compare it byte-for-byte against the
    /// embedded fixture; exit 0 on a match, 2 otherwise.
    #[arg(long)]
    check: bool,
}

pub fn run(args: Table1Args, ctx: &Ctx) -> Result<()> {
    if args.check {
        let computed = modular::table_to_csv(&[2, 3, 5], &modular::table1());
        let expected = modular::table1_fixture_csv();
        if computed == expected {
            return emit(
                ctx.out.as_deref(),
                "check passed: 30 phases match the embedded fixture\n",
            );
        }
        return Err(Mismatch(first_divergence(&computed, expected)).into());
    }

    let primes = match &args.primes {
        Some(raw) => parse_prime_list(raw)?,
        None => vec![2, 3, 5],
    };
    let rows = modular::residue_table(&primes)?;
    let body = match ctx.format {
        Format::Text => text_table(&primes, &rows),
        Format::Csv => modular::table_to_csv(&primes, &rows),
        Format::Json => {
            let period = modular::ModularCoProduct::new(&primes)?
                .period()
                .to_u64()
                .expect("period passed the materialization cap");
            let config = serde_json::json!({
                "primes": primes,
                "format": ctx.format.name(),
                "jobs": ctx.jobs,
            });
            let data = serde_json::json!({
                "primes": primes,
                "period": period,
                "rows": rows
                    .iter()
                    .map(|row| {
                        serde_json::json!({
                            "k": row.k,
                            "residues": row
                                .residues
                                .iter()
                                .map(|r| r.to_string())
                                .collect::<Vec<_>>(),
                            "product": row.product.to_string(),
                        })
                    })
                    .collect::<Vec<_>>(),
            });
            json_envelope("table1", config, data)
        }
    };
    emit(ctx.out.as_deref(), &body)
}

/// Row-per-function text layout: phases run left to right, each column
/// padded to its widest cell (widths count characters, the blank mark is
/// multi-byte).
fn text_table(primes: &[u64], rows: &[ResidueRow]) -> String {
    let mut labels = vec!["k".to_string()];
    labels.extend(primes.iter().map(|p| format!("r{p}")));
    labels.push("product".to_string());

    let mut grid: Vec<Vec<String>> = vec![Vec::with_capacity(rows.len()); labels.len()];
    for row in rows {
        grid[0].push(row.k.to_string());
        for (i, cell) in row.residues.iter().enumerate() {
            grid[i + 1].push(cell.to_string());
        }
        grid[primes.len() + 1].push(row.product.to_string());
    }

    let label_width = labels.iter().map(|l| l.len()).max().unwrap_or(0);
    let widths: Vec<usize> = (0..rows.len())
        .map(|c| grid.iter().map(|r| r[c].chars().count()).max().unwrap_or(0))
        .collect();

    let mut out = String::new();
    for (label, cells) in labels.iter().zip(&grid) {
        out.push_str(&format!("{label:<label_width$}"));
        for (cell, width) in cells.iter().zip(&widths) {
            out.push(' ');
            for _ in 0..width - cell.chars().count() {
                out.push(' ');
            }
            out.push_str(cell);
        }
        out.push('\n');
    }
    out
}

fn first_divergence(computed: &str, expected: &str) -> String {
    for (i, (c, e)) in computed.lines().zip(expected.lines()).enumerate() {
        if c != e {
            return format!(
                "fixture mismatch at line {}: computed {c:?}, expected {e:?}",
                i + 1
            );
        }
    }
    format!(
        "fixture mismatch: computed {} lines, expected {}",
        computed.lines().count(),
        expected.lines().count()
    )
}
