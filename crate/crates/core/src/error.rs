use thiserror::Error;

/// Errors raised by the numerical and symbolic engines.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("empty input: {0}")]
    Empty(&'static str),

    #[error("pole of the Moebius map at z = -1")]
    MoebiusPole,

    #[error("translate by {lambda} vanishes at every grid node (exponent range exceeded)")]
    ZeroColumn { lambda: f64 },

    #[error("coefficient iteration overflow: |q| = {magnitude:e}")]
    CoefficientOverflow { magnitude: f64 },

    #[error("polynomial term cap exceeded: {terms} > {cap} monomials")]
    TermCap { terms: usize, cap: usize },

    #[error("inconsistent reduction state: {0}")]
    InconsistentState(String),

    #[error("precondition violated: {0}")]
    Precondition(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InvalidArgument(msg.into()))
}
