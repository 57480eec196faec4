use thiserror::Error;

/// Failure modes shared by every evaluator in the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Input outside the stated domain of the function or identity.
    #[error("domain error: {0}")]
    Domain(String),
    /// Input within the pole-proximity threshold of a singularity.
    #[error("pole: {0}")]
    Pole(String),
    /// Series, product or quadrature did not reach the requested tolerance.
    #[error("convergence failure: {0}")]
    Convergence(String),
    /// A finite result could not be represented in double precision.
    #[error("overflow: {0}")]
    Overflow(String),
}

impl Error {
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub fn pole(msg: impl Into<String>) -> Self {
        Error::Pole(msg.into())
    }

    pub fn convergence(msg: impl Into<String>) -> Self {
        Error::Convergence(msg.into())
    }

    /// Domain and pole errors are both "bad input" from a caller's view.
    pub fn is_domain(&self) -> bool {
        matches!(self, Error::Domain(_) | Error::Pole(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
