use thiserror::Error;

use crate::params::{ExtractorKind, SecurityModel};

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed {format} data: unexpected byte {byte:#04x} at offset {offset}")]
    MalformedData {
        format: &'static str,
        offset: usize,
        byte: u8,
    },

    #[error("insufficient data: {needed} bits requested but only {available} available")]
    InsufficientData { needed: usize, available: usize },

    #[error("length mismatch for {what}: expected {expected}, got {actual}")]
    LengthMismatch {
        what: &'static str,
        expected: usize,
        actual: usize,
    },

    #[error("length {0} is not a prime with 2 as a primitive root")]
    InadmissibleLength(u64),

    #[error("output length {m} out of range 1..={max}")]
    OutputLengthOutOfRange { m: usize, max: usize },

    #[error("input is all-zeros or all-ones")]
    DegenerateInput,

    #[error("transform size {size} unsupported by the {modulus} modulus")]
    UnsupportedSize { size: u64, modulus: &'static str },

    #[error("target length {target} is shorter than the current length {current}")]
    TargetTooShort { target: usize, current: usize },

    #[error("cannot remove {remove} bits from a {len}-bit string")]
    RemoveTooMany { remove: usize, len: usize },

    #[error("no admissible prime at or below {0}")]
    NoAdmissiblePrime(u64),

    #[error("{model} is not supported for the {kind} extractor")]
    UnsupportedModel {
        kind: ExtractorKind,
        model: SecurityModel,
    },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}
