use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("generator count mismatch: {left} vs {right}")]
    GeneratorMismatch { left: usize, right: usize },

    #[error("operation is only implemented for d = 2, got d = {0}")]
    UnsupportedGeneratorCount(usize),

    #[error("invalid generator count {0}, need d >= 2")]
    InvalidGeneratorCount(usize),

    #[error("generator index {index} out of range for d = {d}")]
    GeneratorOutOfRange { index: usize, d: usize },

    #[error("level {level} too small, need at least {required}")]
    LevelTooSmall { level: usize, required: usize },

    #[error("element is not gauge-invariant (has a monomial of degree {degree})")]
    NotGaugeInvariant { degree: i64 },

    #[error("scalar {0} does not have modulus 1")]
    NotUnitModulus(String),

    #[error("division by zero")]
    DivisionByZero,

    #[error("resource bound exceeded: {what} = {value} exceeds limit {limit}")]
    ResourceBound {
        what: &'static str,
        value: usize,
        limit: usize,
    },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("serialization error: {0}")]
    Serialization(String),
}

impl Error {
    pub fn is_resource_bound(&self) -> bool {
        matches!(self, Error::ResourceBound { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
