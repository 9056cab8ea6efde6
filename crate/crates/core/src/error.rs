use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("threshold δ={delta} is unreachable: ambient minimum degree is {min_degree}")]
    UnreachableThreshold { delta: u32, min_degree: usize },

    #[error("{what}: size {actual} exceeds the cap of {limit}{hint}")]
    SizeCap {
        what: &'static str,
        limit: usize,
        actual: usize,
        hint: &'static str,
    },
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }

    pub(crate) fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }

    pub(crate) fn size_cap(what: &'static str, limit: usize, actual: usize) -> Self {
        Error::SizeCap {
            what,
            limit,
            actual,
            hint: "",
        }
    }

    /// True for errors that describe a domain precondition (as opposed to a
    /// malformed request).
    pub fn is_domain(&self) -> bool {
        matches!(
            self,
            Error::Precondition(_) | Error::UnreachableThreshold { .. }
        )
    }
}
