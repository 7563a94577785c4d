use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// The rows handed to a constructor do not form a triangle (or square).
    #[error("malformed shape: {0}")]
    Shape(String),

    /// An ASM cell holds something other than -1, 0 or 1.
    #[error("entry {value} at ({row},{col}) is not in {{-1,0,1}}")]
    AsmEntry { row: usize, col: usize, value: i64 },

    #[error("index out of range: {0}")]
    OutOfRange(String),

    #[error("parse error: {0}")]
    Parse(String),

    /// The input does not belong to the family an operation requires.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// A bijection step produced a state violating its invariants.
    /// Never expected for valid input.
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
}

pub type Result<T> = std::result::Result<T, Error>;
