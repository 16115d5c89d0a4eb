use thiserror::Error;

/// Errors produced by the numerical pipeline.
#[derive(Debug, Error)]
pub enum Error {
    /// Double-exponential quadrature did not settle before the level cap.
    #[error("quadrature did not converge by level {level}: last estimates {previous} and {last}")]
    Quadrature {
        level: u32,
        previous: String,
        last: String,
    },

    /// A quantity that must be positive (a norm, a pivot) came out non-positive,
    /// meaning cancellation consumed the working precision.
    #[error("precision exhausted at index {index}: {what}; retry with at least {suggested_guard} guard digits")]
    PrecisionExhausted {
        index: usize,
        what: &'static str,
        suggested_guard: u32,
    },

    #[error("index {index} outside the valid range {min}..={max} for {what}")]
    IndexOutOfRange {
        what: &'static str,
        index: usize,
        min: usize,
        max: usize,
    },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
