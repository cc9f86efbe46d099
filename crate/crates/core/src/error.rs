use thiserror::Error;

/// Errors raised by the computation modules.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("matrix must have at least one row and one column")]
    EmptyMatrix,

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("malformed presentation: {0}")]
    MalformedPresentation(String),

    #[error("invalid Dynkin type: {0}")]
    InvalidDynkin(String),

    #[error("invalid field: {0}")]
    InvalidField(String),

    #[error("field mismatch between operands")]
    FieldMismatch,

    #[error("precision mismatch: {0} vs {1}")]
    PrecisionMismatch(usize, usize),

    #[error("invalid precision {0}: must be at least 2")]
    InvalidPrecision(usize),

    #[error("coefficient of T^{exponent} violates the {support} support constraint")]
    SupportViolation { exponent: usize, support: String },

    #[error("not a unit: {0}")]
    NotAUnit(String),

    #[error("not invertible: {0}")]
    NotInvertible(String),

    #[error("element is not in 1 + m: {0}")]
    NotInOnePlusMaximal(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("size bound exceeded: {0}")]
    SizeBound(String),

    #[error("line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },

    /// A closed-form identity that must hold failed to verify. Signals a bug.
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
