use thiserror::Error;

/// Errors raised by the special functions, the expansion and the I/O layer.
#[derive(Debug, Error)]
pub enum Error {
    #[error("{function}: argument out of domain ({detail})")]
    Domain { function: &'static str, detail: String },

    #[error("invalid model parameters: {0}")]
    InvalidParams(String),

    #[error("root finder failed for J_{nu} near x = {near}: {reason}")]
    RootFinder { nu: f64, near: f64, reason: String },

    #[error("zero table for order {nu} holds {available} zeros, {requested} requested")]
    MissingZeros {
        nu: f64,
        requested: usize,
        available: usize,
    },

    #[error("truncation is empty: {0}")]
    EmptyTruncation(String),

    #[error("grid point {index} lies outside the closed unit ball (norm {norm})")]
    OutsideBall { index: usize, norm: f64 },

    #[error("point has dimension {found}, model dimension is {expected}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("degenerate regression: {0}")]
    DegenerateRegression(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn domain(function: &'static str, detail: impl Into<String>) -> Self {
        Error::Domain {
            function,
            detail: detail.into(),
        }
    }

    /// True for failures of the numerical machinery itself (as opposed to bad input).
    pub fn is_numeric_failure(&self) -> bool {
        matches!(
            self,
            Error::RootFinder { .. } | Error::MissingZeros { .. } | Error::DegenerateRegression(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
