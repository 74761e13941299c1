//! Exact arithmetic for natural wave numbers: periodic sequences of roots of
//! unity, the circular product over them, co-number products that act as
//! primorial wheels, a recursive prime-identification engine, and a modular
//! residue image of the same structure. A classical sieve rides along as an
//! independent oracle so every prime claim is verified, never assumed.
//!
//! All arithmetic is exact (big integers and rationals); zero/nonzero
//! structure is what the theory lives on, and floats would corrupt it.

pub mod conumber;
pub mod error;
pub mod modular;
pub mod oracle;
pub mod wave;

pub use error::{Error, Result};
