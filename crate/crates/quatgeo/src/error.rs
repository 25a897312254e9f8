use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("parameter mismatch: {0}")]
    Mismatch(String),
    #[error("search exhausted: {0}")]
    Exhausted(String),
    #[error("validation failed: {0}")]
    Validation(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("construction failed: {0}")]
    Construction(String),
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// Stable machine-readable code, used in CLI error documents.
    pub fn code(&self) -> &'static str {
        match self {
            Error::Domain(_) => "domain",
            Error::Mismatch(_) => "mismatch",
            Error::Exhausted(_) => "exhausted",
            Error::Validation(_) => "validation",
            Error::Precondition(_) => "precondition",
            Error::Unsupported(_) => "unsupported",
            Error::Construction(_) => "construction",
            Error::Parse(_) => "parse",
        }
    }

    pub fn message(&self) -> &str {
        match self {
            Error::Domain(m)
            | Error::Mismatch(m)
            | Error::Exhausted(m)
            | Error::Validation(m)
            | Error::Precondition(m)
            | Error::Unsupported(m)
            | Error::Construction(m)
            | Error::Parse(m) => m,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

macro_rules! bail {
    ($kind:ident, $($arg:tt)*) => {
        return Err($crate::error::Error::$kind(format!($($arg)*)))
    };
}
pub(crate) use bail;
