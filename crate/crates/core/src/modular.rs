//! Modular image of the wave algebra: phases map to residue fractions
//! (k mod n)/n, with the blank mark standing in for zeros of starred
//! functions. The product of starred functions over distinct primes maps to
//! a weighted residue sum over the primorial period - a Chinese-remainder
//! reconstruction that permutes the unit residues unless every weight
//! P/p_i is congruent to 1 mod p_i. Whether the reconstructed residue
//! equals the phase itself is therefore adjudicated per prime set, never
//! assumed.

use std::fmt;

use num_bigint::BigUint;
use num_rational::Ratio;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::oracle;
use crate::wave::MATERIALIZE_CAP;

/// Value of a modular phase function: a residue over a fixed period, or the
/// blank mark for a zero of a starred function.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum ModularFrequency {
    Blank,
    Residue { value: BigUint, period: BigUint },
}

impl ModularFrequency {
    fn residue(value: BigUint, period: BigUint) -> Self {
        debug_assert!(value < period);
        ModularFrequency::Residue { value, period }
    }

    pub fn is_blank(&self) -> bool {
        matches!(self, ModularFrequency::Blank)
    }
}

impl fmt::Display for ModularFrequency {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModularFrequency::Blank => f.write_str("\u{25a1}"),
            ModularFrequency::Residue { value, period } => write!(f, "{value}/{period}"),
        }
    }
}

/// Modular phase function of the wavelength-n wave at phase k. The plain
/// form is always the residue fraction; the starred form blanks multiples
/// of n.
pub fn modular_phase_value(n: u64, k: u64, starred: bool) -> Result<ModularFrequency> {
    if n == 0 {
        return Err(Error::ZeroWavelength);
    }
    let r = k % n;
    if starred && r == 0 {
        return Ok(ModularFrequency::Blank);
    }
    Ok(ModularFrequency::residue(
        BigUint::from(r),
        BigUint::from(n),
    ))
}

/// Modular circular product over distinct primes: the weighted residue sum
/// (sum of (P/p_i) * (k mod p_i)) mod P on surviving phases, blank
/// elsewhere.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModularCoProduct {
    primes: Vec<u64>,
    period: BigUint,
    weights: Vec<BigUint>,
}

impl ModularCoProduct {
    /// Build from distinct primes in any order. Non-coprime wavelengths are
    /// rejected here: the weighted sum does not track the plain product even
    /// on zero structure when factors repeat.
    pub fn new(primes: &[u64]) -> Result<Self> {
        if primes.is_empty() {
            return Err(Error::EmptyCoProduct);
        }
        let mut sorted = primes.to_vec();
        sorted.sort_unstable();
        for pair in sorted.windows(2) {
            if pair[0] == pair[1] {
                return Err(Error::DuplicatePrime { prime: pair[0] });
            }
        }
        for &p in &sorted {
            if !oracle::trial_division_is_prime(p) {
                return Err(Error::NotPrime { candidate: p });
            }
        }
        let period = sorted
            .iter()
            .fold(BigUint::one(), |acc, &p| acc * BigUint::from(p));
        let weights = sorted.iter().map(|&p| &period / BigUint::from(p)).collect();
        Ok(Self {
            primes: sorted,
            period,
            weights,
        })
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    pub fn period(&self) -> &BigUint {
        &self.period
    }

    pub fn weights(&self) -> &[BigUint] {
        &self.weights
    }

    /// Product value at phase k; k = 0 is a multiple of everything and maps
    /// to blank.
    pub fn value(&self, k: u64) -> ModularFrequency {
        if self.primes.iter().any(|&p| k.is_multiple_of(p)) {
            return ModularFrequency::Blank;
        }
        let sum = self
            .primes
            .iter()
            .zip(&self.weights)
            .fold(BigUint::zero(), |acc, (&p, w)| {
                acc + w * BigUint::from(k % p)
            });
        ModularFrequency::residue(sum % &self.period, self.period.clone())
    }

    /// The residue fraction (k mod P)/P of the plain product.
    pub fn plain_residue(&self, k: u64) -> ModularFrequency {
        ModularFrequency::residue(BigUint::from(k) % &self.period, self.period.clone())
    }
}

/// True iff every weight P/p_i is congruent to 1 mod p_i: exactly the
/// condition under which the weighted sum reconstructs k itself mod P.
pub fn weights_idempotent_check(primes: &[u64]) -> Result<bool> {
    let mcp = ModularCoProduct::new(primes)?;
    Ok(mcp
        .primes
        .iter()
        .zip(&mcp.weights)
        .all(|(&p, w)| (w % BigUint::from(p)).is_one()))
}

/// The finite Euler product prod (p - 1)/p as an exact rational; equals the
/// density of non-blank phases in one period, and phi(P)/P.
pub fn zeta_proportion(primes: &[u64]) -> Result<Ratio<BigUint>> {
    let mcp = ModularCoProduct::new(primes)?;
    let num = mcp
        .primes
        .iter()
        .fold(BigUint::one(), |acc, &p| acc * BigUint::from(p - 1));
    Ok(Ratio::new(num, mcp.period.clone()))
}

/// One table column: the phase, the starred residue of each prime, and the
/// product value.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ResidueRow {
    pub k: u64,
    pub residues: Vec<ModularFrequency>,
    pub product: ModularFrequency,
}

/// Starred residues and product values over one full period (phases
/// 1..=P). Periods beyond the materialization cap are refused.
pub fn residue_table(primes: &[u64]) -> Result<Vec<ResidueRow>> {
    let mcp = ModularCoProduct::new(primes)?;
    let period = match mcp.period().to_u64() {
        Some(p) if p <= MATERIALIZE_CAP => p,
        _ => {
            return Err(Error::MaterializationCap {
                requested: mcp.period().to_string(),
                cap: MATERIALIZE_CAP,
            })
        }
    };
    (1..=period)
        .map(|k| {
            let residues = mcp
                .primes()
                .iter()
                .map(|&p| modular_phase_value(p, k, true))
                .collect::<Result<Vec<_>>>()?;
            Ok(ResidueRow {
                k,
                residues,
                product: mcp.value(k),
            })
        })
        .collect()
}

/// The thirty-column table over the primes {2, 3, 5}.
pub fn table1() -> Vec<ResidueRow> {
    residue_table(&[2, 3, 5]).expect("fixed small prime set")
}

/// Canonical CSV image of a residue table: header `k,r2,...,product`, one
/// row per phase, LF line endings. This is the frozen comparison format.
pub fn table_to_csv(primes: &[u64], rows: &[ResidueRow]) -> String {
    let mut out = String::from("k");
    for p in primes {
        out.push_str(&format!(",r{p}"));
    }
    out.push_str(",product\n");
    for row in rows {
        out.push_str(&row.k.to_string());
        for cell in &row.residues {
            out.push(',');
            out.push_str(&cell.to_string());
        }
        out.push(',');
        out.push_str(&row.product.to_string());
        out.push('\n');
    }
    out
}

/// Expected CSV for the {2, 3, 5} table, computed independently and frozen.
pub fn table1_fixture_csv() -> &'static str {
    include_str!("table1_fixture.csv")
}

/// Adjudication of the residue-reconstruction claim for the first N primes.
///
/// Two ranges are reported. The `within_period` fields intersect the prime
/// window [p_{N+1}, p_{N+1}^2) with one period [1, P_N), which truncates the
/// window when P_N is small (N <= 2 makes it empty, N = 3 cuts it at 30).
/// The `window` fields cover the full prime window. On each range,
/// `equality` phases are those whose weighted-sum residue equals the phase's
/// own residue (k mod P)/P, and `nonzero` phases are those with a non-blank
/// value; agreement means the two lists coincide, which happens exactly when
/// the weights are idempotent.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReconstructionReport {
    pub primes: Vec<u64>,
    pub next_prime: u64,
    pub period: BigUint,
    pub window_lo: u64,
    pub window_hi: u64,
    pub effective_hi: u64,
    pub weights_idempotent: bool,
    pub equality_phases_within_period: Vec<u64>,
    pub nonzero_phases_within_period: Vec<u64>,
    pub agreement_within_period: bool,
    pub window_equality_phases: Vec<u64>,
    pub window_nonzero_phases: Vec<u64>,
    pub window_agreement: bool,
    pub oracle_primes: Vec<u64>,
    pub nonzero_matches_oracle: bool,
    /// First window phase whose non-blank value differs from its own
    /// residue, with that value; absent when equality holds everywhere.
    pub witness: Option<(u64, ModularFrequency)>,
}

/// Evaluate the reconstruction filter for the first N primes and their
/// successor.
pub fn reconstruction_filter(primes: &[u64], next_prime: u64) -> Result<ReconstructionReport> {
    if primes.is_empty() || primes != oracle::first_primes(primes.len()) {
        return Err(Error::NotInitialSegment);
    }
    let last = *primes.last().expect("non-empty checked above");
    if next_prime != oracle::next_prime_after(last) {
        return Err(Error::NotInitialSegment);
    }
    let mcp = ModularCoProduct::new(primes)?;
    let window_lo = next_prime;
    let window_hi = next_prime * next_prime;
    let effective_hi = match mcp.period().to_u64() {
        Some(p) => window_hi.min(p),
        None => window_hi,
    };

    let mut window_equality = Vec::new();
    let mut window_nonzero = Vec::new();
    let mut witness = None;
    for k in window_lo..window_hi {
        let value = mcp.value(k);
        if value.is_blank() {
            continue;
        }
        window_nonzero.push(k);
        if value == mcp.plain_residue(k) {
            window_equality.push(k);
        } else if witness.is_none() {
            witness = Some((k, value));
        }
    }
    let in_period = |phases: &[u64]| -> Vec<u64> {
        phases
            .iter()
            .filter(|&&k| k < effective_hi)
            .copied()
            .collect()
    };
    let equality_within = in_period(&window_equality);
    let nonzero_within = in_period(&window_nonzero);

    let table = oracle::sieve(window_hi - 1)?;
    let oracle_primes = table.primes_in(window_lo, window_hi).to_vec();

    Ok(ReconstructionReport {
        primes: primes.to_vec(),
        next_prime,
        period: mcp.period().clone(),
        window_lo,
        window_hi,
        effective_hi,
        weights_idempotent: weights_idempotent_check(primes)?,
        agreement_within_period: equality_within == nonzero_within,
        equality_phases_within_period: equality_within,
        nonzero_phases_within_period: nonzero_within,
        window_agreement: window_equality == window_nonzero,
        nonzero_matches_oracle: window_nonzero == oracle_primes,
        window_equality_phases: window_equality,
        window_nonzero_phases: window_nonzero,
        oracle_primes,
        witness,
    })
}
