use thiserror::Error;

/// Errors surfaced by the numerical and simulation routines.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// An input lies outside the domain of the requested operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// The interference integral diverges; the analytic coverage is zero.
    ///
    /// Raised when the last path loss exponent is at most 2, so the
    /// aggregate interference is almost surely infinite.
    #[error("alpha_last = {alpha_last} <= 2 with sigma2 = {noise}: interference diverges, coverage is 0")]
    DivergentInterference { alpha_last: f64, noise: f64 },

    /// Adaptive quadrature ran out of its subdivision budget.
    #[error("quadrature did not converge: estimate {estimate}, error {error:e} after {intervals} intervals")]
    Convergence {
        estimate: f64,
        error: f64,
        intervals: usize,
    },

    /// A least-squares fit could not be formed.
    #[error("fit error: {0}")]
    Fit(String),

    #[error("config error: {0}")]
    Config(String),

    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(err: std::io::Error) -> Self {
        Error::Io(err.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
