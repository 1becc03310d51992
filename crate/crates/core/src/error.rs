use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// Shapes, variable lists or indices that do not fit together.
    #[error("structural error: {0}")]
    Structural(String),

    /// Input outside the mathematical domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),

    #[error("solver failed: {message} (worst residual {worst_residual:e})")]
    Solver { message: String, worst_residual: f64 },

    #[error("pole at t = {0}")]
    Pole(String),

    #[error("representation is degenerate: {0}")]
    RepresentationDegenerate(String),

    /// Jacobian or simple-zero checks failed; the character is not regular for the slope.
    #[error("non-regular character: {0}")]
    NonRegular(String),

    #[error("non-generic input: {0}")]
    NonGeneric(String),

    #[error("unsupported dimension {0}; only n = 1, 2 are handled")]
    UnsupportedDimension(usize),

    #[error("unsupported precision of {0} bits; supported tiers are 53 and 106 bits")]
    UnsupportedPrecision(u32),

    #[error("parse error at offset {offset}: {message}")]
    Parse { offset: usize, message: String },

    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    pub(crate) fn parse(offset: usize, message: impl Into<String>) -> Self {
        Error::Parse { offset, message: message.into() }
    }

    /// Prefix the message with the pipeline stage that produced it.
    pub fn in_stage(self, stage: &str) -> Self {
        match self {
            Error::Structural(m) => Error::Structural(format!("[{stage}] {m}")),
            Error::Domain(m) => Error::Domain(format!("[{stage}] {m}")),
            Error::Solver { message, worst_residual } => {
                Error::Solver { message: format!("[{stage}] {message}"), worst_residual }
            }
            Error::RepresentationDegenerate(m) => {
                Error::RepresentationDegenerate(format!("[{stage}] {m}"))
            }
            Error::NonRegular(m) => Error::NonRegular(format!("[{stage}] {m}")),
            Error::NonGeneric(m) => Error::NonGeneric(format!("[{stage}] {m}")),
            other => other,
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
