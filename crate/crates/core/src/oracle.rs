//! Independent ground truth: a textbook sieve of Eratosthenes plus trial
//! division. Every prime claim the wave-number machinery makes is checked
//! against this module, so it deliberately shares no code or representation
//! with the rest of the crate. Nothing here is optimized beyond what a
//! baseline comparison needs.

use crate::error::{Error, Result};

/// One byte per candidate; sieves past this allocation are refused.
pub const DEFAULT_SIEVE_BUDGET_BYTES: u64 = 1 << 31;

/// All primes up to a fixed limit, ascending.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimeTable {
    limit: u64,
    primes: Vec<u64>,
}

impl PrimeTable {
    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    pub fn len(&self) -> usize {
        self.primes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.primes.is_empty()
    }

    /// Membership test; `n` must not exceed the sieved limit.
    pub fn contains(&self, n: u64) -> bool {
        assert!(
            n <= self.limit,
            "queried {n} beyond sieved limit {}",
            self.limit
        );
        self.primes.binary_search(&n).is_ok()
    }

    /// Primes in the half-open range [lo, hi); `hi - 1` must be within limit.
    pub fn primes_in(&self, lo: u64, hi: u64) -> &[u64] {
        assert!(
            hi == 0 || hi - 1 <= self.limit,
            "queried range end {hi} beyond sieved limit {}",
            self.limit
        );
        let start = self.primes.partition_point(|&p| p < lo);
        let end = self.primes.partition_point(|&p| p < hi);
        &self.primes[start..end]
    }

    /// pi(n): count of primes <= n. `n` must not exceed the sieved limit.
    pub fn count_leq(&self, n: u64) -> u64 {
        assert!(
            n <= self.limit,
            "queried {n} beyond sieved limit {}",
            self.limit
        );
        self.primes.partition_point(|&p| p <= n) as u64
    }

    pub fn largest(&self) -> Option<u64> {
        self.primes.last().copied()
    }
}

/// Classical sieve of Eratosthenes up to `limit` inclusive. A limit below 2
/// yields an empty table rather than an error.
pub fn sieve(limit: u64) -> Result<PrimeTable> {
    sieve_with_budget(limit, DEFAULT_SIEVE_BUDGET_BYTES)
}

/// Sieve with an explicit allocation budget of one byte per candidate.
pub fn sieve_with_budget(limit: u64, budget_bytes: u64) -> Result<PrimeTable> {
    if limit < 2 {
        return Ok(PrimeTable {
            limit,
            primes: Vec::new(),
        });
    }
    let required_bytes = limit + 1;
    if required_bytes > budget_bytes {
        return Err(Error::SieveMemory {
            limit,
            required_bytes,
            budget_bytes,
        });
    }
    let n = limit as usize;
    let mut composite = vec![false; n + 1];
    let mut i = 2usize;
    while i * i <= n {
        if !composite[i] {
            let mut j = i * i;
            while j <= n {
                composite[j] = true;
                j += i;
            }
        }
        i += 1;
    }
    let primes = (2..=n)
        .filter(|&k| !composite[k])
        .map(|k| k as u64)
        .collect();
    Ok(PrimeTable { limit, primes })
}

/// Deterministic trial division with the 6k+-1 wheel; exact for all u64.
pub fn trial_division_is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n.is_multiple_of(2) || n.is_multiple_of(3) {
        return false;
    }
    let mut d = 5u64;
    while d * d <= n {
        if n.is_multiple_of(d) || n.is_multiple_of(d + 2) {
            return false;
        }
        d += 6;
    }
    true
}

/// Greatest prime strictly below `n`. The strict reading is deliberate: every
/// caller applies this to a square, which is never itself prime.
pub fn largest_prime_below(n: u64) -> Result<u64> {
    if n <= 2 {
        return Err(Error::NoPrimeBelow { n });
    }
    let mut m = n - 1;
    loop {
        if trial_division_is_prime(m) {
            return Ok(m);
        }
        m -= 1;
    }
}

/// Least prime strictly above `n`.
pub fn next_prime_after(n: u64) -> u64 {
    let mut m = n + 1;
    loop {
        if trial_division_is_prime(m) {
            return m;
        }
        m += 1;
    }
}

/// Exact pi(limit) by sieving.
pub fn prime_count(limit: u64) -> Result<u64> {
    Ok(sieve(limit)?.len() as u64)
}

/// The Gauss/Legendre approximation limit / ln(limit), for report columns
/// only; never used as ground truth.
pub fn gauss_estimate(limit: u64) -> f64 {
    assert!(limit >= 2, "estimate needs limit >= 2");
    let x = limit as f64;
    x / x.ln()
}

/// The first `n` primes, ascending.
pub fn first_primes(n: usize) -> Vec<u64> {
    let mut out = Vec::with_capacity(n);
    let mut candidate = 2u64;
    while out.len() < n {
        if trial_division_is_prime(candidate) {
            out.push(candidate);
        }
        candidate += 1;
    }
    out
}
