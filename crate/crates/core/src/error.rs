use thiserror::Error;

/// Errors shared across the whole crate.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// An input violated its documented domain (e.g. information outside [0,1]).
    #[error("domain error: {0}")]
    Domain(String),

    /// An objective or map produced NaN or infinity where a finite value was required.
    #[error("evaluation error: non-finite value at {at}")]
    NonFinite { at: f64 },

    /// Bisection was called with endpoints of equal sign.
    #[error("bracketing error: g({lo}) and g({hi}) do not bracket a root")]
    Bracket { lo: f64, hi: f64 },

    /// A fixed-point iterate escaped the configured box.
    #[error("divergence: iterate {x} left the box [{lo}, {hi}]")]
    Divergence { x: f64, lo: f64, hi: f64 },

    /// A solver hit its iteration cap without meeting the tolerance.
    #[error("solver did not converge within {max_iter} iterations (residual {residual:e})")]
    NoConvergence { max_iter: usize, residual: f64 },

    /// Scenario-file parse or validation failure; message carries the line number.
    #[error("scenario error: {0}")]
    Scenario(String),

    /// A chart was requested for zero data points.
    #[error("empty series")]
    EmptySeries,
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    /// Process exit code this error maps to (1 usage/parse, 2 solver).
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::NoConvergence { .. } | Error::Divergence { .. } => 2,
            _ => 1,
        }
    }
}
