use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid group descriptor `{descriptor}`: {reason}")]
    Descriptor { descriptor: String, reason: String },

    #[error("malformed Cayley table: {0}")]
    MalformedTable(String),

    #[error("{what} of size {size} exceeds cap {cap}")]
    CapExceeded {
        what: &'static str,
        size: usize,
        cap: usize,
    },

    #[error("group order mismatch: expected {expected}, found {found}")]
    OrderMismatch { expected: usize, found: usize },

    #[error("element index {index} out of range for group of order {order}")]
    OutOfRange { index: usize, order: usize },

    #[error("eigensolver did not converge within {0} sweeps")]
    NoConvergence(usize),

    #[error("no prime modulus suitable for the character table below {0}")]
    NoModulus(u64),

    #[error("character table computation failed: {0}")]
    CharacterTable(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("invalid constraint system: {0}")]
    InvalidSystem(String),

    #[error("internal consistency check failed: {0}")]
    Internal(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Stable machine-readable code, used by the command-line front end.
    pub fn code(&self) -> &'static str {
        match self {
            Error::Descriptor { .. } => "E_DESCRIPTOR",
            Error::MalformedTable(_) => "E_TABLE",
            Error::CapExceeded { .. } => "E_CAP",
            Error::OrderMismatch { .. } => "E_ORDER",
            Error::OutOfRange { .. } => "E_RANGE",
            Error::NoConvergence(_) => "E_CONVERGENCE",
            Error::NoModulus(_) => "E_MODULUS",
            Error::CharacterTable(_) => "E_CHARTAB",
            Error::InvalidArgument(_) => "E_ARGUMENT",
            Error::InvalidSystem(_) => "E_SYSTEM",
            Error::Internal(_) => "E_INTERNAL",
            Error::Io(_) => "E_IO",
            Error::Json(_) => "E_JSON",
        }
    }

    pub(crate) fn descriptor(descriptor: &str, reason: impl Into<String>) -> Self {
        Error::Descriptor {
            descriptor: descriptor.to_string(),
            reason: reason.into(),
        }
    }
}
