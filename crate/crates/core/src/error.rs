use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("unknown operation symbol `{0}`")]
    UnknownSymbol(String),

    #[error("operation `{symbol}` expects {expected} arguments, got {found}")]
    ArityMismatch {
        symbol: String,
        expected: usize,
        found: usize,
    },

    #[error("variable {0} is not assigned")]
    UnassignedVariable(usize),

    #[error("duplicate operation symbol `{0}`")]
    DuplicateSymbol(String),

    #[error("invalid table for `{op}`: {reason}")]
    InvalidTable { op: String, reason: String },

    #[error("signature mismatch")]
    SignatureMismatch,

    #[error("element {element} is outside the carrier of size {size}")]
    ElementOutOfRange { element: usize, size: usize },

    #[error("subset is not closed under the operations")]
    NotClosed,

    #[error("partition is not compatible with the operations")]
    NotACongruence,

    #[error("map is not a homomorphism")]
    NotAHomomorphism,

    #[error("{what}: size {size} exceeds bound {bound}")]
    SizeBound {
        what: &'static str,
        size: usize,
        bound: usize,
    },

    #[error("search budget exhausted during {0}")]
    BudgetExhausted(&'static str),

    #[error("{what} is not in the prevariety: elements {witness:?} cannot be separated")]
    NotInPrevariety {
        what: String,
        witness: (usize, usize),
    },

    #[error("operation requires a nontrivial algebra")]
    TrivialAlgebra,

    #[error("hypothesis violated at index {index}: {reason}")]
    Hypothesis { index: usize, reason: String },

    #[error("not a group: {0}")]
    NotAGroup(String),

    #[error("verification failed: {0}")]
    VerificationFailed(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn parse(msg: impl Into<String>) -> Self {
        Error::Parse(msg.into())
    }

    /// True when the error reports an exhausted budget or size bound rather
    /// than a refutation.
    pub fn is_budget(&self) -> bool {
        matches!(self, Error::BudgetExhausted(_) | Error::SizeBound { .. })
    }
}
