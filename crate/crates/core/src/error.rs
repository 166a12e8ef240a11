use thiserror::Error;

/// Errors raised by the permutation, construction and session layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid permutation width {0}: must be 25 * 2^l with 0 <= l <= 6")]
    InvalidWidth(usize),
    #[error("invalid round count {rounds} for width {width} (allowed 1..={max})")]
    InvalidRounds { width: usize, rounds: usize, max: usize },
    #[error("round index {0} out of range (0..24)")]
    RoundIndexOutOfRange(usize),
    #[error("state width {0} is not byte-aligned")]
    NotByteAligned(usize),
    #[error("expected {expected} bytes, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },
    #[error("value {0} does not fit in one byte")]
    ByteOutOfRange(usize),
    #[error("invalid rate {rate} for width {width}: {reason}")]
    InvalidRate { rate: usize, width: usize, reason: &'static str },
    #[error("key of {key} bits exceeds the capacity of {capacity} bits")]
    KeyTooLong { key: usize, capacity: usize },
    #[error("input of {len} bits exceeds the limit of {max} bits")]
    InputTooLong { len: usize, max: usize },
    #[error("requested {requested} output bits but at most {max} are available per call")]
    OutputTooLong { requested: usize, max: usize },
    #[error("read past the end of a byte stream")]
    StreamExhausted,
    #[error("seek to {pos} beyond stream length {len}")]
    SeekOutOfBounds { pos: usize, len: usize },
    #[error("state offset {offset} exceeds the squeeze rate {rate}")]
    OffsetOutOfRange { offset: usize, rate: usize },
    #[error("{operation} is not allowed in phase {phase}")]
    WrongPhase { operation: &'static str, phase: &'static str },
    #[error("infeasible parameters: {0}")]
    InfeasibleParameters(&'static str),
    #[error("invalid key pack: {0}")]
    InvalidKeyPack(&'static str),
    #[error("key of {bits} bits outside the accepted range {min}..={max}")]
    KeySize { bits: usize, min: usize, max: usize },
    #[error("tag must be {expected} bytes, got {actual}")]
    TagLength { expected: usize, actual: usize },
    #[error("unknown instance {0:?}")]
    UnknownInstance(String),
    #[error("authentication failed")]
    AuthenticationFailed,
}

pub type Result<T> = std::result::Result<T, Error>;
