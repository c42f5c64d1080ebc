use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Operands were built over different variable tables.
    #[error("variable tables do not match: [{left}] vs [{right}]")]
    Alignment { left: String, right: String },

    #[error("unknown variable `{0}`")]
    UnknownVariable(String),

    #[error("syntax error at line {line}: {message}")]
    Syntax { line: usize, message: String },

    #[error("invalid model: {invariant}: {detail}")]
    Validation { invariant: &'static str, detail: String },

    #[error("unsupported model `{model}`: {reason}")]
    UnsupportedModel { model: String, reason: String },

    #[error("{what} out of range: {detail}")]
    OutOfRange { what: &'static str, detail: String },

    #[error("operation not applicable: {0}")]
    Inapplicable(String),

    #[error("origin is not an isolated zero (no stabilization up to degree {cap})")]
    NonIsolatedZero { cap: usize },

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

impl Error {
    pub(crate) fn validation(invariant: &'static str, detail: impl Into<String>) -> Self {
        Error::Validation {
            invariant,
            detail: detail.into(),
        }
    }

    pub(crate) fn out_of_range(what: &'static str, detail: impl Into<String>) -> Self {
        Error::OutOfRange {
            what,
            detail: detail.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
