use thiserror::Error;

/// Failures raised by the numerical kernels.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("singularity: {0}")]
    Singularity(String),

    #[error("unsupported model: {0}")]
    UnsupportedModel(String),

    #[error("quadrature did not converge: error estimate {error:.3e} after {panels} panels")]
    Quadrature { error: f64, panels: usize },
}

impl Error {
    pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name,
            reason: reason.into(),
        }
    }

    pub(crate) fn singular(what: impl Into<String>) -> Self {
        Error::Singularity(what.into())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
