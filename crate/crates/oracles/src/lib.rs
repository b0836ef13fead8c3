//! Brute-force reference implementations for checking `randext`.
//!
//! Everything here works on plain `0/1` byte vectors and is written without
//! transforms, packed words or shortcuts, so that agreement with the fast
//! paths is meaningful. Enumerations are capped at `2^26` states.

use std::fmt;

pub mod distance;
pub mod linear;
pub mod trevisan;

pub use distance::{collision_probability, statistical_distance_strong, Source};
pub use linear::{naive_convolve, naive_extract, naive_von_neumann, LinearKind};
pub use trevisan::NaiveTrevisan;

/// Largest `log2` of an enumerated state space.
pub const ENUMERATION_LIMIT_BITS: usize = 26;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OracleError {
    LengthMismatch { what: &'static str, expected: usize, actual: usize },
    Shape(String),
    EnumerationTooLarge { bits: usize },
    IdenticalInputs,
}

impl fmt::Display for OracleError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OracleError::LengthMismatch { what, expected, actual } => {
                write!(f, "{what} has length {actual}, expected {expected}")
            }
            OracleError::Shape(msg) => write!(f, "{msg}"),
            OracleError::EnumerationTooLarge { bits } => write!(
                f,
                "enumerating 2^{bits} states exceeds the 2^{ENUMERATION_LIMIT_BITS} limit"
            ),
            OracleError::IdenticalInputs => write!(f, "collision probability needs distinct inputs"),
        }
    }
}

impl std::error::Error for OracleError {}

pub type OracleResult<T> = Result<T, OracleError>;
