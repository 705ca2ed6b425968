use thiserror::Error;

/// Errors raised by the algebra kernel and the session runner.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("polynomials live in different contexts")]
    ContextMismatch,

    #[error("leading term of the zero polynomial")]
    ZeroPolynomial,

    #[error("invalid context: {0}")]
    InvalidContext(String),

    #[error("invalid monomial order: {0}")]
    InvalidOrder(String),

    #[error("division by zero")]
    DivisionByZero,

    /// The Gröbner budget was exhausted before an answer was found. The
    /// question is undecided, never answered wrongly.
    #[error("inconclusive: {0}")]
    Inconclusive(String),

    #[error("parse error at {line}:{column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("morphism is not well defined: {0}")]
    NotWellDefined(String),

    #[error("morphism is not continuous: {0}")]
    NotContinuous(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    /// Two independent computations that must agree did not. This is a bug
    /// in the engine, not a property of the input.
    #[error("engine inconsistency: {0}")]
    EngineInconsistency(String),
}

impl Error {
    pub fn is_inconclusive(&self) -> bool {
        matches!(self, Error::Inconclusive(_))
    }

    pub(crate) fn parse(line: usize, column: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            column,
            message: message.into(),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
