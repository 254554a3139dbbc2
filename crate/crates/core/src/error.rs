use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// Malformed input text: constants, certificates, scripts, packings.
    #[error("parse error: {0}")]
    Parse(String),
    /// An operation outside its mathematical domain.
    #[error("domain error: {0}")]
    Domain(String),
    /// Well-formed input that is structurally inconsistent.
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// True for errors caused by unreadable input rather than by the
    /// mathematics.
    pub fn is_parse(&self) -> bool {
        matches!(self, Error::Parse(_) | Error::Json(_) | Error::Io(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
