use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    /// Malformed input. `location` names the offending token, line/column or
    /// generator index.
    #[error("parse error at {location}: {message}")]
    Parse { location: String, message: String },

    #[error("orbit has more than {cap} elements (raise the orbit cap or choose another strategy)")]
    OrbitCap { cap: usize },

    #[error("group has {order} elements, above the enumeration cap of {cap}")]
    EnumerationCap { order: String, cap: usize },

    #[error("dimension {n} exceeds the binary cube cap of {cap}")]
    BinaryCap { n: usize, cap: usize },

    #[error("the stabilizer of the chosen vector is non-trivial (order {order})")]
    NontrivialStabilizer { order: String },

    #[error("gamma strategy exhausted after {rounds} round(s); remaining stabilizer has order {order}")]
    StrategyExhausted { rounds: usize, order: String },

    #[error("invalid gamma strategy: {0}")]
    InvalidStrategy(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn parse(location: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Parse {
            location: location.into(),
            message: message.into(),
        }
    }

    /// Process exit code used by the command-line front end. Each failure
    /// class maps to its own code.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Io(_) => 1,
            Error::Parse { .. } | Error::InvalidPermutation(_) => 3,
            Error::OrbitCap { .. } | Error::EnumerationCap { .. } | Error::BinaryCap { .. } => 4,
            Error::StrategyExhausted { .. } | Error::InvalidStrategy(_) => 5,
            Error::NontrivialStabilizer { .. } => 6,
            Error::DegreeMismatch { .. } | Error::DimensionMismatch { .. } => 9,
            Error::InvalidArgument(_) => 10,
        }
    }
}
