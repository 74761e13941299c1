//! Cumulative co-number products and the recursive prime engine. The product
//! of the co-numbers of the primes p_1..p_N vanishes exactly at phases
//! divisible by one of them, so inside the window [p_{N+1}, p_{N+1}^2) its
//! nonzero phases are exactly the primes there. Scanning successive windows
//! therefore recovers primes from nothing but the seed 2; every window is
//! checked against the classical sieve before its output seeds the next
//! step.
//!
//! Windows are scanned pointwise by trial division against the known primes,
//! never by materializing the primorial period. Scans run over disjoint
//! phase chunks; with the `parallel` feature the chunks fan out to a rayon
//! pool and the results concatenate in chunk order, so the output is
//! identical either way.

use std::time::{Duration, Instant};

use num_bigint::BigUint;
use num_rational::Ratio;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::oracle;
use crate::wave::{Frequency, Term};

/// Default cap on phases scanned by one schedule run.
pub const DEFAULT_PHASE_BUDGET: u64 = 100_000_000;

/// Smallest budget a run may configure.
pub const MIN_PHASE_BUDGET: u64 = 10_000;

/// Phases per scan chunk; chunks are the unit of parallel work.
#[cfg(feature = "parallel")]
const SCAN_CHUNK: u64 = 1 << 16;

/// Circular product of the co-numbers of distinct primes, held as the prime
/// list plus the exact primorial period.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoProduct {
    primes: Vec<u64>,
    period: BigUint,
}

impl CoProduct {
    /// Build from distinct primes in any order; each entry is re-checked by
    /// trial division rather than trusted.
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
        Ok(Self {
            primes: sorted,
            period,
        })
    }

    /// The product over the first n primes.
    pub fn first_n(n: usize) -> Result<Self> {
        Self::new(&oracle::first_primes(n))
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    pub fn period(&self) -> &BigUint {
        &self.period
    }

    /// How many primes the product holds; never zero by construction.
    pub fn len(&self) -> usize {
        self.primes.len()
    }

    /// Always false: constructors reject an empty prime list.
    pub fn is_empty(&self) -> bool {
        false
    }

    /// Same product extended by one larger prime.
    pub fn extended(&self, p: u64) -> Result<Self> {
        if p <= *self.primes.last().expect("coproduct is never empty") {
            return Err(Error::NonAscendingPrime { prime: p });
        }
        if !oracle::trial_division_is_prime(p) {
            return Err(Error::NotPrime { candidate: p });
        }
        let mut primes = self.primes.clone();
        primes.push(p);
        Ok(Self {
            period: &self.period * BigUint::from(p),
            primes,
        })
    }

    /// True when no listed prime divides k. Phase 0 is a multiple of
    /// everything and never survives.
    pub fn survives(&self, k: u64) -> bool {
        self.primes.iter().all(|&p| !k.is_multiple_of(p))
    }

    /// Term at phase k: zero when some listed prime divides k, otherwise the
    /// root with frequency k/period. Decided purely by divisibility.
    pub fn value(&self, k: u64) -> Term {
        if self.survives(k) {
            Term::Root(
                Frequency::new(k, self.period.clone()).expect("primorial period is positive"),
            )
        } else {
            Term::Zero
        }
    }

    /// Exact surviving-phase density over one period: prod (p - 1)/p.
    pub fn density(&self) -> Ratio<BigUint> {
        let num = self
            .primes
            .iter()
            .fold(BigUint::one(), |acc, &p| acc * BigUint::from(p - 1));
        Ratio::new(num, self.period.clone())
    }
}

/// Phases in [lo, hi) with no divisor among `primes`, ascending. Sequential
/// reference implementation; always compiled.
pub fn surviving_in_range_seq(primes: &[u64], lo: u64, hi: u64) -> Vec<u64> {
    (lo..hi)
        .filter(|&k| primes.iter().all(|&p| k % p != 0))
        .collect()
}

/// Phases in [lo, hi) with no divisor among `primes`, ascending. Fans scan
/// chunks out to the rayon pool when the `parallel` feature is on; the
/// result is identical to the sequential scan.
#[cfg(feature = "parallel")]
pub fn surviving_in_range(primes: &[u64], lo: u64, hi: u64) -> Vec<u64> {
    use rayon::prelude::*;

    if hi <= lo {
        return Vec::new();
    }
    let chunks: Vec<(u64, u64)> = (lo..hi)
        .step_by(SCAN_CHUNK as usize)
        .map(|a| (a, hi.min(a + SCAN_CHUNK)))
        .collect();
    chunks
        .par_iter()
        .map(|&(a, b)| surviving_in_range_seq(primes, a, b))
        .reduce(Vec::new, |mut acc, mut part| {
            acc.append(&mut part);
            acc
        })
}

#[cfg(not(feature = "parallel"))]
pub fn surviving_in_range(primes: &[u64], lo: u64, hi: u64) -> Vec<u64> {
    surviving_in_range_seq(primes, lo, hi)
}

/// Runs `f` on a rayon pool of exactly `jobs` threads (0 = library default).
/// Without the `parallel` feature this is a plain call.
pub fn with_parallelism<T: Send>(jobs: usize, f: impl FnOnce() -> T + Send) -> T {
    #[cfg(feature = "parallel")]
    {
        if jobs == 0 {
            f()
        } else {
            rayon::ThreadPoolBuilder::new()
                .num_threads(jobs)
                .build()
                .expect("rayon pool construction")
                .install(f)
        }
    }
    #[cfg(not(feature = "parallel"))]
    {
        let _ = jobs;
        f()
    }
}

/// State of the one-prime-per-step recursion: the co-number product over the
/// primes found so far, plus the two smallest known primes beyond them.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SieveState {
    coproduct: CoProduct,
    next_prime: u64,
    bound_prime: u64,
}

impl SieveState {
    /// Seed: the co-number of 2 alone, with 3 and 5 known.
    pub fn initial() -> Self {
        Self {
            coproduct: CoProduct::new(&[2]).expect("2 is prime"),
            next_prime: 3,
            bound_prime: 5,
        }
    }

    pub fn new(coproduct: CoProduct, next_prime: u64, bound_prime: u64) -> Result<Self> {
        for p in [next_prime, bound_prime] {
            if !oracle::trial_division_is_prime(p) {
                return Err(Error::NotPrime { candidate: p });
            }
        }
        let largest = *coproduct.primes().last().expect("coproduct is never empty");
        if next_prime <= largest || bound_prime <= next_prime {
            return Err(Error::NonAscendingPrime {
                prime: next_prime.min(bound_prime),
            });
        }
        Ok(Self {
            coproduct,
            next_prime,
            bound_prime,
        })
    }

    pub fn coproduct(&self) -> &CoProduct {
        &self.coproduct
    }

    pub fn next_prime(&self) -> u64 {
        self.next_prime
    }

    pub fn bound_prime(&self) -> u64 {
        self.bound_prime
    }

    /// N: how many primes the coproduct holds.
    pub fn iteration(&self) -> u32 {
        self.coproduct.len() as u32
    }

    /// The half-open window [next_prime, next_prime^2) in which surviving
    /// phases are exactly the primes.
    pub fn window(&self) -> (u64, u64) {
        (self.next_prime, self.next_prime * self.next_prime)
    }
}

/// Comparison of one window's surviving phases against the oracle.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Verdict {
    Match,
    Mismatch {
        missing: Vec<u64>,
        unexpected: Vec<u64>,
    },
}

impl Verdict {
    pub fn is_match(&self) -> bool {
        matches!(self, Verdict::Match)
    }
}

/// One window's scan output. `elapsed` is measurement metadata: it is not
/// serialized and does not participate in equality, so reports with the
/// same mathematical content compare and serialize identically.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct WindowReport {
    pub iteration: u32,
    pub window_lo: u64,
    pub window_hi: u64,
    pub surviving_phases: Vec<u64>,
    pub oracle_primes: Vec<u64>,
    pub verdict: Verdict,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl PartialEq for WindowReport {
    fn eq(&self, other: &Self) -> bool {
        self.iteration == other.iteration
            && self.window_lo == other.window_lo
            && self.window_hi == other.window_hi
            && self.surviving_phases == other.surviving_phases
            && self.oracle_primes == other.oracle_primes
            && self.verdict == other.verdict
    }
}

impl Eq for WindowReport {}

/// Scan the state's window and compare against the oracle. The report
/// carries the verdict; callers that advance the recursion must refuse a
/// mismatch.
pub fn window_primes(state: &SieveState) -> Result<WindowReport> {
    let (lo, hi) = state.window();
    let started = Instant::now();
    let surviving = surviving_in_range(state.coproduct().primes(), lo, hi);
    let table = oracle::sieve(hi - 1)?;
    let oracle_primes = table.primes_in(lo, hi).to_vec();
    let verdict = compare_sets(&surviving, &oracle_primes);
    Ok(WindowReport {
        iteration: state.iteration(),
        window_lo: lo,
        window_hi: hi,
        surviving_phases: surviving,
        oracle_primes,
        verdict,
        elapsed: started.elapsed(),
    })
}

fn compare_sets(surviving: &[u64], oracle_primes: &[u64]) -> Verdict {
    let missing: Vec<u64> = oracle_primes
        .iter()
        .filter(|p| surviving.binary_search(p).is_err())
        .copied()
        .collect();
    let unexpected: Vec<u64> = surviving
        .iter()
        .filter(|k| oracle_primes.binary_search(k).is_err())
        .copied()
        .collect();
    if missing.is_empty() && unexpected.is_empty() {
        Verdict::Match
    } else {
        Verdict::Mismatch {
            missing,
            unexpected,
        }
    }
}

/// One step of the recursion: verify the current window, absorb next_prime
/// into the coproduct, and pull the two smallest just-found primes above it
/// as the new next/bound pair. A verification mismatch is an error, never a
/// silent continue.
pub fn recursion_step(state: &SieveState) -> Result<(WindowReport, SieveState)> {
    let report = window_primes(state)?;
    if let Verdict::Mismatch {
        missing,
        unexpected,
    } = &report.verdict
    {
        return Err(Error::WindowMismatch {
            iteration: report.iteration,
            missing: missing.clone(),
            unexpected: unexpected.clone(),
        });
    }
    let old_next = state.next_prime();
    let mut beyond = report
        .surviving_phases
        .iter()
        .filter(|&&k| k > old_next)
        .copied();
    let (new_next, new_bound) = match (beyond.next(), beyond.next()) {
        (Some(a), Some(b)) => (a, b),
        _ => return Err(Error::WindowTooSparse { after: old_next }),
    };
    let next_state = SieveState::new(state.coproduct().extended(old_next)?, new_next, new_bound)?;
    Ok((report, next_state))
}

/// Schedule flavor: `Conservative` adds one prime per step; `Maximal`
/// consumes every known prime each step, squaring the reach.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ScheduleMode {
    Conservative,
    Maximal,
}

impl std::fmt::Display for ScheduleMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            ScheduleMode::Conservative => "conservative",
            ScheduleMode::Maximal => "maximal",
        })
    }
}

/// One schedule iteration. `count_identified` is the oracle's pi(largest);
/// in maximal mode iterations past the first also carry the closed-form
/// count estimate 7^(2(N-1)) / (2(N-1) ln 7) and its relative error against
/// the exact count.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScheduleEntry {
    pub iteration: u32,
    pub window_lo: u64,
    pub window_hi: u64,
    pub phases_scanned: u64,
    pub largest_prime: u64,
    pub count_identified: u64,
    pub estimate: Option<f64>,
    pub relative_error: Option<f64>,
}

/// A full schedule run; `budget_exhausted` marks a graceful stop before the
/// requested iterations because the next window would blow the phase budget.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScheduleOutcome {
    pub mode: ScheduleMode,
    pub phase_budget: u64,
    pub phases_used: u64,
    pub budget_exhausted: bool,
    pub entries: Vec<ScheduleEntry>,
}

/// Closed-form estimate of the maximal-mode count at iteration n >= 2.
pub fn schedule_count_estimate(iteration: u32) -> Option<f64> {
    if iteration < 2 {
        return None;
    }
    let e = 2 * (iteration - 1);
    Some(7f64.powi(e as i32) / (f64::from(e) * 7f64.ln()))
}

/// Run `iterations` schedule steps in the given mode under a phase budget.
/// Every window is oracle-verified; a mismatch aborts with an error, while
/// exceeding the budget stops gracefully with partial results.
pub fn run_schedule(
    iterations: u32,
    mode: ScheduleMode,
    phase_budget: u64,
) -> Result<ScheduleOutcome> {
    match mode {
        ScheduleMode::Conservative => run_conservative(iterations, phase_budget),
        ScheduleMode::Maximal => run_maximal(iterations, phase_budget),
    }
}

fn run_conservative(iterations: u32, phase_budget: u64) -> Result<ScheduleOutcome> {
    let mut outcome = ScheduleOutcome {
        mode: ScheduleMode::Conservative,
        phase_budget,
        phases_used: 0,
        budget_exhausted: false,
        entries: Vec::new(),
    };
    let mut state = SieveState::initial();
    for i in 1..=iterations {
        let (lo, hi) = state.window();
        let size = hi - lo;
        if outcome.phases_used + size > phase_budget {
            outcome.budget_exhausted = true;
            break;
        }
        let (report, next_state) = recursion_step(&state)?;
        outcome.phases_used += size;
        let largest = *report
            .surviving_phases
            .last()
            .expect("verified window is non-empty");
        let count = oracle::sieve(hi - 1)?.count_leq(largest);
        outcome.entries.push(ScheduleEntry {
            iteration: i,
            window_lo: lo,
            window_hi: hi,
            phases_scanned: size,
            largest_prime: largest,
            count_identified: count,
            estimate: None,
            relative_error: None,
        });
        state = next_state;
    }
    Ok(outcome)
}

fn run_maximal(iterations: u32, phase_budget: u64) -> Result<ScheduleOutcome> {
    let mut outcome = ScheduleOutcome {
        mode: ScheduleMode::Maximal,
        phase_budget,
        phases_used: 0,
        budget_exhausted: false,
        entries: Vec::new(),
    };
    // iteration 1 is the seed window [3, 9) over the coproduct {2}
    let mut largest = 3u64;
    let mut known = vec![2u64];
    for i in 1..=iterations {
        let lo = largest;
        let hi = match largest.checked_mul(largest) {
            Some(sq) => sq,
            None => {
                outcome.budget_exhausted = true;
                break;
            }
        };
        let size = hi - lo;
        if outcome.phases_used + size > phase_budget {
            outcome.budget_exhausted = true;
            break;
        }
        let surviving = surviving_in_range(&known, lo, hi);
        let table = oracle::sieve(hi - 1)?;
        let oracle_primes = table.primes_in(lo, hi);
        if let Verdict::Mismatch {
            missing,
            unexpected,
        } = compare_sets(&surviving, oracle_primes)
        {
            return Err(Error::WindowMismatch {
                iteration: i,
                missing,
                unexpected,
            });
        }
        outcome.phases_used += size;
        let top = *surviving.last().expect("window holds at least one prime");
        let count = table.count_leq(top);
        let estimate = schedule_count_estimate(i);
        outcome.entries.push(ScheduleEntry {
            iteration: i,
            window_lo: lo,
            window_hi: hi,
            phases_scanned: size,
            largest_prime: top,
            count_identified: count,
            estimate,
            relative_error: estimate.map(|e| (count as f64 - e).abs() / count as f64),
        });
        // next step consumes everything identified so far: all primes < top
        known = table.primes_in(2, top).to_vec();
        largest = top;
    }
    Ok(outcome)
}

/// Primality via circle-function sums: with the first N primes listed, a
/// phase k strictly between p_N and p_{N+1}^2 is prime iff the sum of the
/// listed circle values at k (the count of listed primes dividing k) is 0.
pub fn circle_sum_test(primes: &[u64], k: u64) -> Result<bool> {
    if primes.is_empty() || primes != oracle::first_primes(primes.len()) {
        return Err(Error::NotInitialSegment);
    }
    let p_n = *primes.last().expect("non-empty checked above");
    let p_next = oracle::next_prime_after(p_n);
    let hi = p_next * p_next;
    if k <= p_n || k >= hi {
        return Err(Error::PhaseOutOfWindow {
            phase: k,
            lo: p_n,
            hi,
        });
    }
    Ok(primes.iter().all(|&p| !k.is_multiple_of(p)))
}

/// For every k <= bound: k has a divisor in 2..=n iff k has a prime divisor
/// <= n. Vacuously true when n < 2.
pub fn zeros_equivalence_check(n: u64, bound: u64) -> bool {
    let primes: Vec<u64> = (2..=n)
        .filter(|&p| oracle::trial_division_is_prime(p))
        .collect();
    (1..=bound).all(|k| {
        let by_natural = (2..=n).any(|d| k % d == 0);
        let by_prime = primes.iter().any(|&p| k % p == 0);
        by_natural == by_prime
    })
}

/// Count of phases in [1, limit] with no divisor among `primes`.
pub fn candidate_count(primes: &[u64], limit: u64) -> u64 {
    surviving_in_range(primes, 1, limit + 1).len() as u64
}

/// Wheel-style prime recovery up to `limit`: keep the wheel primes
/// themselves, then confirm every surviving candidate above 1 by trial
/// division. Returns the primes found and the number of candidates examined.
pub fn wheel_primes_up_to(wheel: &[u64], limit: u64) -> (Vec<u64>, u64) {
    let candidates = surviving_in_range(wheel, 1, limit + 1);
    let examined = candidates.len() as u64;
    let mut primes: Vec<u64> = wheel.iter().copied().filter(|&p| p <= limit).collect();
    #[cfg(feature = "parallel")]
    let confirmed: Vec<u64> = {
        use rayon::prelude::*;
        candidates
            .par_iter()
            .filter(|&&k| k > 1 && oracle::trial_division_is_prime(k))
            .copied()
            .collect()
    };
    #[cfg(not(feature = "parallel"))]
    let confirmed: Vec<u64> = candidates
        .iter()
        .filter(|&&k| k > 1 && oracle::trial_division_is_prime(k))
        .copied()
        .collect();
    primes.extend(confirmed);
    (primes, examined)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;

    #[test]
    fn coproduct_validates_inputs() {
        assert_eq!(CoProduct::new(&[]).unwrap_err(), Error::EmptyCoProduct);
        assert_eq!(
            CoProduct::new(&[2, 3, 3]).unwrap_err(),
            Error::DuplicatePrime { prime: 3 }
        );
        assert_eq!(
            CoProduct::new(&[2, 9]).unwrap_err(),
            Error::NotPrime { candidate: 9 }
        );
        let cp = CoProduct::new(&[5, 2, 3]).unwrap();
        assert_eq!(cp.primes(), &[2, 3, 5]);
        assert_eq!(cp.period(), &BigUint::from(30u64));
    }

    #[test]
    fn coproduct_value_by_divisibility() {
        let cp23 = CoProduct::new(&[2, 3]).unwrap();
        assert_eq!(cp23.value(25).canonical_string(), "1/6");
        assert_eq!(cp23.value(25).unreduced_string(), "25/6");
        assert!(cp23.value(4).is_zero());
        assert!(cp23.value(0).is_zero());

        let cp235 = CoProduct::new(&[2, 3, 5]).unwrap();
        assert_eq!(cp235.value(49).unreduced_string(), "49/30");
        assert!(!cp235.value(49).is_zero());
    }

    #[test]
    fn coproduct_extension_guards_order() {
        let cp = CoProduct::new(&[2, 3]).unwrap();
        assert_eq!(
            cp.extended(3).unwrap_err(),
            Error::NonAscendingPrime { prime: 3 }
        );
        assert_eq!(
            cp.extended(6).unwrap_err(),
            Error::NotPrime { candidate: 6 }
        );
        assert_eq!(cp.extended(5).unwrap().period(), &BigUint::from(30u64));
    }

    #[test]
    fn density_is_exact_euler_product() {
        let cp = CoProduct::new(&[2, 3, 5]).unwrap();
        let d = cp.density();
        assert_eq!(d.numer().to_u64(), Some(4));
        assert_eq!(d.denom().to_u64(), Some(15));
    }

    #[test]
    fn scan_matches_sequential_reference() {
        let primes = [2u64, 3, 5, 7];
        assert_eq!(
            surviving_in_range(&primes, 11, 121),
            surviving_in_range_seq(&primes, 11, 121)
        );
        assert_eq!(
            surviving_in_range(&primes, 1, 200_000),
            surviving_in_range_seq(&primes, 1, 200_000)
        );
        assert!(surviving_in_range(&primes, 50, 50).is_empty());
        assert!(surviving_in_range(&primes, 50, 40).is_empty());
    }

    #[test]
    fn with_parallelism_is_transparent() {
        let primes = [2u64, 3, 5];
        let direct = surviving_in_range(&primes, 1, 10_000);
        for jobs in [1usize, 2, 4] {
            let pooled = with_parallelism(jobs, || surviving_in_range(&primes, 1, 10_000));
            assert_eq!(pooled, direct);
        }
    }

    #[test]
    fn initial_window_finds_three_five_seven() {
        let report = window_primes(&SieveState::initial()).unwrap();
        assert_eq!(report.window_lo, 3);
        assert_eq!(report.window_hi, 9);
        assert_eq!(report.surviving_phases, vec![3, 5, 7]);
        assert!(report.verdict.is_match());
    }

    #[test]
    fn recursion_steps_follow_the_known_chain() {
        let s0 = SieveState::initial();
        let (_, s1) = recursion_step(&s0).unwrap();
        assert_eq!(s1.coproduct().primes(), &[2, 3]);
        assert_eq!((s1.next_prime(), s1.bound_prime()), (5, 7));

        let (r1, s2) = recursion_step(&s1).unwrap();
        assert_eq!(r1.surviving_phases, vec![5, 7, 11, 13, 17, 19, 23]);
        assert_eq!(s2.coproduct().primes(), &[2, 3, 5]);
        assert_eq!((s2.next_prime(), s2.bound_prime()), (7, 11));

        let (r2, s3) = recursion_step(&s2).unwrap();
        assert_eq!(
            r2.surviving_phases,
            vec![7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47]
        );
        assert_eq!(s3.coproduct().primes(), &[2, 3, 5, 7]);
        assert_eq!((s3.next_prime(), s3.bound_prime()), (11, 13));
    }

    #[test]
    fn state_construction_is_validated() {
        let cp = CoProduct::new(&[2, 3]).unwrap();
        assert!(SieveState::new(cp.clone(), 5, 7).is_ok());
        assert_eq!(
            SieveState::new(cp.clone(), 4, 7).unwrap_err(),
            Error::NotPrime { candidate: 4 }
        );
        assert_eq!(
            SieveState::new(cp.clone(), 3, 5).unwrap_err(),
            Error::NonAscendingPrime { prime: 3 }
        );
        assert_eq!(
            SieveState::new(cp, 7, 5).unwrap_err(),
            Error::NonAscendingPrime { prime: 5 }
        );
    }

    #[test]
    fn maximal_schedule_squares_its_reach() {
        let out = run_schedule(3, ScheduleMode::Maximal, DEFAULT_PHASE_BUDGET).unwrap();
        assert!(!out.budget_exhausted);
        let largest: Vec<u64> = out.entries.iter().map(|e| e.largest_prime).collect();
        assert_eq!(largest, vec![7, 47, 2207]);
        let counts: Vec<u64> = out.entries.iter().map(|e| e.count_identified).collect();
        assert_eq!(counts, vec![4, 15, 329]);
        assert_eq!(out.entries[0].estimate, None);
        let est = out.entries[1].estimate.unwrap();
        assert!((est - 12.590_509_388_058_893).abs() < 1e-9);
        let rel = out.entries[1].relative_error.unwrap();
        assert!((rel - 0.160_632_707_462_740_5).abs() < 1e-9);
    }

    #[test]
    fn conservative_schedule_tracks_recursion() {
        let out = run_schedule(3, ScheduleMode::Conservative, DEFAULT_PHASE_BUDGET).unwrap();
        let largest: Vec<u64> = out.entries.iter().map(|e| e.largest_prime).collect();
        assert_eq!(largest, vec![7, 23, 47]);
        let windows: Vec<(u64, u64)> = out
            .entries
            .iter()
            .map(|e| (e.window_lo, e.window_hi))
            .collect();
        assert_eq!(windows, vec![(3, 9), (5, 25), (7, 49)]);
        assert_eq!(
            out.phases_used,
            out.entries.iter().map(|e| e.phases_scanned).sum::<u64>()
        );
    }

    #[test]
    fn schedule_respects_phase_budget() {
        let out = run_schedule(4, ScheduleMode::Maximal, MIN_PHASE_BUDGET).unwrap();
        assert!(out.budget_exhausted);
        // [3,9) + [7,49) + [47,2209) fit in 10^4 phases; [2207, 2207^2) does not
        assert_eq!(out.entries.len(), 3);
        assert!(out.phases_used <= MIN_PHASE_BUDGET);
    }

    #[test]
    fn circle_sum_examples() {
        assert!(circle_sum_test(&[2, 3, 5], 37).unwrap());
        assert!(!circle_sum_test(&[2, 3, 5], 35).unwrap());
        assert_eq!(
            circle_sum_test(&[2, 3, 5, 7], 121).unwrap_err(),
            Error::PhaseOutOfWindow {
                phase: 121,
                lo: 7,
                hi: 121
            }
        );
        assert_eq!(
            circle_sum_test(&[2, 5], 7).unwrap_err(),
            Error::NotInitialSegment
        );
        assert_eq!(
            circle_sum_test(&[2, 3, 5], 5).unwrap_err(),
            Error::PhaseOutOfWindow {
                phase: 5,
                lo: 5,
                hi: 49
            }
        );
    }

    #[test]
    fn zeros_equivalence_small_bounds() {
        assert!(zeros_equivalence_check(6, 1_000));
        assert!(zeros_equivalence_check(2, 100));
        assert!(zeros_equivalence_check(10, 10_000));
        assert!(zeros_equivalence_check(1, 50));
    }

    #[test]
    fn wheel_recovery_matches_oracle() {
        let (primes, examined) = wheel_primes_up_to(&[2, 3, 5], 10_000);
        let table = oracle::sieve(10_000).unwrap();
        assert_eq!(primes, table.primes());
        // 333 full periods of 8 survivors, then 9991 and 9997 in the tail
        assert_eq!(examined, 2_666);
    }

    #[test]
    fn candidate_count_over_one_period_is_phi() {
        assert_eq!(candidate_count(&[2, 3, 5], 30), 8);
        assert_eq!(candidate_count(&[2, 3, 5, 7, 11, 13], 30_030), 5_760);
    }
}
