use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("degenerate dynamics: {0}")]
    DegenerateDynamics(String),

    #[error("unsupported mode: {0}")]
    Unsupported(String),

    #[error("quadrature did not converge on [{lo}, {hi}]: estimate {value:e}, error {error:e}")]
    Quadrature {
        lo: f64,
        hi: f64,
        value: f64,
        error: f64,
    },

    #[error("integration failed near t = {t}: {reason}")]
    Integration { t: f64, reason: String },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidParameter(msg.into())
}
