use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("quadrature order {order} outside supported range 1..={max}")]
    QuadratureOrderRange { order: usize, max: usize },

    #[error("quadrature order {order} too low: at least {required} needed")]
    InsufficientQuadrature { order: usize, required: usize },

    #[error("gamma function pole at {0}")]
    GammaPole(f64),

    #[error("spectral parameter E = {energy} outside domain: {reason}")]
    Domain { energy: f64, reason: &'static str },

    #[error("spectral parameter E = {energy} within guard band of pole {pole}")]
    Pole { energy: f64, pole: f64 },

    #[error("bracket ({a}, {b}) contains pole {pole}")]
    PoleInBracket { a: f64, b: f64, pole: f64 },

    #[error("determinant shows no sign change on ({a}, {b})")]
    NoSignChange { a: f64, b: f64 },

    #[error("reduced resolvent is not invertible at lambda = {lambda}")]
    NotInvertible { lambda: f64 },

    #[error("coupling lambda = {lambda} not below threshold {threshold}")]
    ThresholdExceeded { lambda: f64, threshold: f64 },

    #[error("{what} did not converge after {iterations} iterations")]
    NoConvergence { what: &'static str, iterations: usize },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Stable machine-readable name used in CLI diagnostics.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::QuadratureOrderRange { .. } => "quadrature_order_range",
            Error::InsufficientQuadrature { .. } => "insufficient_quadrature",
            Error::GammaPole(_) => "gamma_pole",
            Error::Domain { .. } => "domain",
            Error::Pole { .. } => "pole",
            Error::PoleInBracket { .. } => "pole_in_bracket",
            Error::NoSignChange { .. } => "no_sign_change",
            Error::NotInvertible { .. } => "not_invertible",
            Error::ThresholdExceeded { .. } => "threshold_exceeded",
            Error::NoConvergence { .. } => "no_convergence",
            Error::DimensionMismatch { .. } => "dimension_mismatch",
            Error::InvalidArgument(_) => "invalid_argument",
            Error::Io(_) => "io",
            Error::Json(_) => "json",
        }
    }
}
