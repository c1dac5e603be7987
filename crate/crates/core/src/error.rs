use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub(crate) fn limit(msg: impl Into<String>) -> Self {
        Error::ResourceLimit(msg.into())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
