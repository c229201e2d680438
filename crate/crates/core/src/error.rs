use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("no repeated (P,Q) state within {max_terms} terms; raise the term budget")]
    PeriodNotFound { max_terms: usize },

    #[error("map is not hyperbolic (trace {trace}, determinant {det}); no irrational fixed point")]
    NotHyperbolic { trace: String, det: String },

    #[error("only {available} terms available, {required} required")]
    InsufficientTerms { available: usize, required: usize },

    #[error("convergent error bound reached only 10^-{achieved_digits} after {terms} terms")]
    PrecisionNotReached { terms: usize, achieved_digits: usize },

    #[error("bit stream constant over the first {max_bits} bits without a certificate")]
    Undecided { max_bits: usize },

    #[error("input is a noble number (or maps to one); the identity does not apply")]
    NobleInput,

    #[error("tree depth {depth} exceeds the limit {max}")]
    DepthTooLarge { depth: usize, max: usize },

    #[error("vertex lies on the horocycle of 0 or infinity")]
    ExcludedVertex,

    #[error("bracket does not isolate a simple root: {0}")]
    DegenerateRoot(String),

    #[error("precision of the embedded constant exhausted after {terms} terms")]
    PrecisionExhausted { terms: usize },
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub(crate) fn parse(msg: impl Into<String>) -> Self {
        Error::Parse(msg.into())
    }
}
