use thiserror::Error;

/// Errors produced by the engines, oracles and estimators.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum LcsError {
    #[error("invalid symbol {found:?} at position {position}: expected '0' or '1'")]
    InvalidSymbol { position: usize, found: char },

    #[error("row has {found} entries but the sequence needs {expected}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("packed buffer holds {available} bits, {requested} requested")]
    PackedTooShort { available: usize, requested: usize },

    #[error("fsm state {0} out of range 0..=3")]
    StateOutOfRange(u8),

    #[error("fsm input pair {0} out of range 0..=3")]
    InputOutOfRange(u8),

    #[error("fsm configuration did not survive calibration: {0}")]
    UncalibratedConfig(String),

    #[error("enumeration budget exceeded: m + n = {requested} > {limit}")]
    BudgetExceeded { requested: usize, limit: usize },

    #[error("unknown engine {0:?}: expected one of dp, rows, fsm, poset")]
    UnknownEngine(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("malformed data file: {0}")]
    Malformed(String),
}

pub type Result<T, E = LcsError> = std::result::Result<T, E>;
