use std::fmt;

/// A verification comparison came out unequal (exit 2).
#[derive(Debug)]
pub struct Mismatch(pub String);

impl fmt::Display for Mismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Mismatch {}

/// A phase budget or materialization cap stopped the run (exit 3).
#[derive(Debug)]
pub struct Capacity(pub String);

impl fmt::Display for Capacity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Capacity {}

/// A flag or environment value is unusable (exit 1).
#[derive(Debug)]
pub struct Usage(pub String);

impl fmt::Display for Usage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

/// Exit-code contract: 0 success, 1 usage error, 2 verification mismatch,
/// 3 budget/capacity stop. Core errors split the same way: a window that
/// disagrees with the oracle is a mismatch, cap and memory refusals are
/// capacity stops, and everything else is a misuse of the surface.
pub fn exit_code(err: &anyhow::Error) -> u8 {
    if err.downcast_ref::<Mismatch>().is_some() {
        return 2;
    }
    if err.downcast_ref::<Capacity>().is_some() {
        return 3;
    }
    if err.downcast_ref::<Usage>().is_some() {
        return 1;
    }
    if let Some(core) = err.downcast_ref::<wavenum_core::Error>() {
        return match core {
            wavenum_core::Error::WindowMismatch { .. } => 2,
            wavenum_core::Error::MaterializationCap { .. }
            | wavenum_core::Error::SieveMemory { .. } => 3,
            _ => 1,
        };
    }
    1
}
