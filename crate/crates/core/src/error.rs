use thiserror::Error;

use crate::monomial::MultiExponent;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("ring must have at least one variable")]
    EmptyRing,
    #[error("duplicate variable {0}")]
    DuplicateVariable(String),
    #[error("empty generating set")]
    EmptyGeneratingSet,
    #[error("ideal family must contain at least one ideal")]
    EmptyFamily,
    #[error("objects live in different rings")]
    RingMismatch,
    #[error("exponent vector has length {found}, expected {expected}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("exponent overflow")]
    ExponentOverflow,

    #[error("grid_max must be at least {min}, got {found}")]
    GridTooSmall { min: u32, found: u32 },
    #[error("region starting at {origin} is empty or has fewer than two points along some axis")]
    EmptyRegion { origin: MultiExponent },
    #[error("table value at {at} is -inf; only finite values can be fitted")]
    NonFiniteValue { at: MultiExponent },
    #[error("envelope fit failed at {witness}: table value {table}, envelope {envelope}")]
    FitFailed {
        witness: MultiExponent,
        table: i64,
        envelope: String,
    },
    #[error("pd(I^a) is not constant on any upper box of side >= 2 within [0,{grid_max}]^m")]
    NotStabilized { grid_max: u32 },

    #[error("series terms disagree on the number of axes ({expected} vs {found})")]
    AxisMismatch { expected: usize, found: usize },
    #[error("factor axis {axis} is outside 1..={m}")]
    FactorAxis { axis: usize, m: usize },
    #[error("factor x-degree must be positive")]
    FactorDegree,
    #[error("exponent {value} on axis {axis} exceeds the expansion cap {cap}")]
    ExpansionTooLarge { axis: usize, value: i64, cap: i64 },

    #[error("{0}")]
    Parse(#[from] ParseError),
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

/// A syntax error with a 1-based source position.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl ParseError {
    pub fn new(line: usize, column: usize, message: impl Into<String>) -> Self {
        Self {
            line,
            column,
            message: message.into(),
        }
    }
}
