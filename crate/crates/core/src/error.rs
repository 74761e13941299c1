use thiserror::Error;

/// Failure modes shared by the wave, co-number, modular, and oracle modules.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("wavelength must be a natural number, got 0")]
    ZeroWavelength,
    #[error("repetition count must be at least 1")]
    ZeroRepetition,
    #[error("0 has no wave-number image")]
    ZeroNatural,
    #[error("root index must be at least 1")]
    ZeroRootIndex,
    #[error("circular product of an empty list has no materialized identity; pass the wavelength-1 wave explicitly")]
    EmptyProduct,
    #[error("materializing {requested} terms exceeds the cap of {cap}")]
    MaterializationCap { requested: String, cap: u64 },
    #[error("{candidate} fails the primality check")]
    NotPrime { candidate: u64 },
    #[error("duplicate prime {prime} in co-number product")]
    DuplicatePrime { prime: u64 },
    #[error("co-number product needs at least one prime")]
    EmptyCoProduct,
    #[error("prime {prime} must exceed every prime already in the product")]
    NonAscendingPrime { prime: u64 },
    #[error("prime list must be the first N primes in ascending order")]
    NotInitialSegment,
    #[error("arithmetic sum of terms is defined only when at most one summand is nonzero")]
    NonDisjointSum,
    #[error("phase {phase} lies outside the admissible range ({lo}, {hi})")]
    PhaseOutOfWindow { phase: u64, lo: u64, hi: u64 },
    #[error(
        "window verification mismatch at iteration {iteration}: \
         missing {missing:?}, unexpected {unexpected:?}"
    )]
    WindowMismatch {
        iteration: u32,
        missing: Vec<u64>,
        unexpected: Vec<u64>,
    },
    #[error("window after {after} has fewer than two surviving phases")]
    WindowTooSparse { after: u64 },
    #[error("sieve to {limit} needs {required_bytes} bytes, over the budget of {budget_bytes}")]
    SieveMemory {
        limit: u64,
        required_bytes: u64,
        budget_bytes: u64,
    },
    #[error("no prime lies strictly below {n}")]
    NoPrimeBelow { n: u64 },
}

pub type Result<T> = std::result::Result<T, Error>;
