use thiserror::Error;

/// Errors raised by evaluation, group actions and verification.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("division by zero in {0}")]
    DivisionByZero(&'static str),

    #[error("shape error: {0}")]
    Shape(String),

    #[error("pole: {0}")]
    Pole(String),

    #[error("series did not converge within {max_index} terms (last term magnitude {last_term:e}) in {what}")]
    Truncation {
        what: &'static str,
        max_index: usize,
        last_term: f64,
    },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("singular action of {generator}: {polynomial} vanishes")]
    SingularAction {
        generator: &'static str,
        polynomial: String,
    },

    #[error("word step {step}: {source}")]
    WordStep { step: usize, source: Box<Error> },

    #[error("degenerate solution: {0} vanishes")]
    Degenerate(String),

    #[error("index out of the validated domain: {0}")]
    IndexDomain(String),

    #[error("propagation stalled at {0}")]
    PropagationStall(String),

    #[error("unknown suite `{0}`")]
    UnknownSuite(String),

    #[error("config error: {0}")]
    Config(String),

    #[error("report parse error: {0}")]
    Parse(String),
}

impl Error {
    /// Innermost error, looking through word-step wrappers.
    pub fn root(&self) -> &Error {
        match self {
            Error::WordStep { source, .. } => source.root(),
            e => e,
        }
    }

    pub fn is_truncation(&self) -> bool {
        matches!(self.root(), Error::Truncation { .. })
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
