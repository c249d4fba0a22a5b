use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("degenerate triangle {index}: area {area:e} below threshold {threshold:e}")]
    DegenerateTriangle { index: usize, area: f64, threshold: f64 },

    #[error("no convergence after {sweeps} sweeps (best residuals {residuals:?})")]
    NoConvergence { sweeps: usize, residuals: Vec<f64> },

    #[error("requested {requested} modes but only {available} are available after deflation")]
    TooManyModes { requested: usize, available: usize },

    #[error("vector is constant: nothing left after removing the mean")]
    ZeroAfterDeflation,

    #[error("extrapolation input is not monotone; estimate {estimate} is unreliable")]
    NonMonotone { estimate: f64, error_gauge: f64 },

    #[error("extrapolation needs at least 3 consecutive levels, got {0}")]
    TooFewLevels(usize),

    #[error("{what} must be positive, got {value}")]
    NonPositive { what: &'static str, value: f64 },

    #[error("input must be sorted ascending: {0}")]
    Unsorted(String),

    #[error("depth profile is negative at r = {r} (h = {h})")]
    NonPositiveProfile { r: f64, h: f64 },

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// Stable machine-readable code for diagnostics.
    pub fn code(&self) -> &'static str {
        match self {
            Error::InvalidParameter(_) => "invalid-parameter",
            Error::DegenerateTriangle { .. } => "degenerate-triangle",
            Error::NoConvergence { .. } => "no-convergence",
            Error::TooManyModes { .. } => "too-many-modes",
            Error::ZeroAfterDeflation => "zero-after-deflation",
            Error::NonMonotone { .. } => "non-monotone",
            Error::TooFewLevels(_) => "too-few-levels",
            Error::NonPositive { .. } => "nonpositive-input",
            Error::Unsorted(_) => "unsorted-input",
            Error::NonPositiveProfile { .. } => "nonpositive-profile",
            Error::Parse(_) => "parse-error",
        }
    }

    /// True for failures of the numerics rather than of the input.
    pub fn is_numerical(&self) -> bool {
        matches!(self, Error::NoConvergence { .. })
    }
}
