use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Crate-wide error type.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("backend mismatch: operands use different scalar backends")]
    BackendMismatch,

    #[error("word level {level} exceeds the configured cap {cap}")]
    LevelCapExceeded { level: u32, cap: u32 },

    #[error("matrix size mismatch: {left} vs {right}")]
    SizeMismatch { left: usize, right: usize },

    #[error("tuple length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("matrix size {0} is not a power of two")]
    NotPowerOfTwo(usize),

    #[error("representation index {index} exceeds the configured cap {cap}")]
    IndexCapExceeded { index: u64, cap: u64 },

    #[error("smallness condition violated: certified value {value_hi} >= 1")]
    ConditionViolated { value_hi: f64 },

    #[error("invalid parameter: {0}")]
    BadParameter(String),

    #[error("parse error: {0}")]
    Parse(String),
}
