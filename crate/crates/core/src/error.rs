use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(i64),

    #[error("length mismatch: expected {expected} registers, found {found}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("modulus mismatch between operands")]
    ModulusMismatch,

    #[error("index {index} out of range (size {len})")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("scale factor {factor} is not invertible mod {modulus}")]
    NotInvertible { factor: i64, modulus: i64 },

    #[error("too many rows: {rows} rows on {n} registers")]
    TooManyRows { rows: usize, n: usize },

    #[error("entry {value} out of range for modulus {modulus}")]
    EntryOutOfRange { value: i64, modulus: i64 },

    #[error("integer overflow in exact arithmetic")]
    Overflow,

    #[error("invalid stabilizer code: {0}")]
    InvalidCode(String),

    #[error("code is not CSS: {0}")]
    NotCss(String),

    #[error("not applicable: {0}")]
    NotApplicable(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("dense dimension {dimension} exceeds cap {cap}")]
    CapExceeded { dimension: u128, cap: u128 },

    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
