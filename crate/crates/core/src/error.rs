use thiserror::Error;

/// Errors raised by the STT analysis routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum SttError {
    #[error("dimension n = {n} is too small (need n >= 2)")]
    DimensionTooSmall { n: usize },

    #[error("index {index} out of range 1..={n}")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("non-finite matrix parameter: {0}")]
    NonFinite(&'static str),

    #[error("dense realization of size {n} exceeds the configured cap of {cap}")]
    DenseCapExceeded { n: usize, cap: usize },

    #[error("sigma = 0 is not supported by the structured distance theory")]
    ZeroOffDiagonal,

    #[error("matrix is not definite (eigenvalue {lambda} has the wrong sign or is zero)")]
    NotDefinite { lambda: f64 },

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("dimension must be even, got n = {n}")]
    OddDimension { n: usize },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("csv output failed: {0}")]
    Csv(String),
}

pub type SttResult<T> = Result<T, SttError>;

impl From<csv::Error> for SttError {
    fn from(e: csv::Error) -> Self {
        SttError::Csv(e.to_string())
    }
}

impl From<std::io::Error> for SttError {
    fn from(e: std::io::Error) -> Self {
        SttError::Csv(e.to_string())
    }
}
