use crate::star::parse::ParseError;

/// Errors surfaced by the exponent calculus.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// An argument left the mathematical domain of the requested map.
    #[error("domain error: {0}")]
    Domain(String),
    /// A star expression failed to parse.
    #[error(transparent)]
    Parse(#[from] ParseError),
    /// An atom has no defined dimension for the given system.
    #[error("atom undefined for this system: {0}")]
    AtomUndefined(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
