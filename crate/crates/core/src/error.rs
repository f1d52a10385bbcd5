use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("modulus mismatch: r = {left} vs r = {right}")]
    ModulusMismatch { left: u32, right: u32 },

    #[error("exponent {exponent} out of range for r = {modulus}")]
    ExponentOutOfRange { exponent: u32, modulus: u32 },

    #[error("modulus r must be positive")]
    ZeroModulus,

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("matrix is {rows}x{cols}, expected a square matrix")]
    NotSquare { rows: usize, cols: usize },

    #[error("{what} of size {size} exceeds the limit of {limit}")]
    SizeGuard {
        what: &'static str,
        size: usize,
        limit: usize,
    },

    #[error("column subset has {got} elements, expected {expected}")]
    SubsetSize { expected: usize, got: usize },

    #[error("need at least J+1 = {} columns, matrix has {cols}", rows + 1)]
    TooFewColumns { rows: usize, cols: usize },

    #[error("index {index} out of range (length {len})")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("entry ({row}, {col}) has weight {weight}, but at most {max} is supported here")]
    TypeTooHigh {
        row: usize,
        col: usize,
        weight: usize,
        max: usize,
    },

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("invalid cover split at entry ({row}, {col}): {message}")]
    InvalidSplit {
        row: usize,
        col: usize,
        message: String,
    },

    #[error("integer overflow while computing {0}")]
    Overflow(&'static str),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

impl Error {
    /// True for errors caused by a computational limit rather than bad input.
    pub fn is_guard(&self) -> bool {
        matches!(self, Error::SizeGuard { .. } | Error::Overflow(_))
    }
}
