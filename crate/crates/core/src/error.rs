use thiserror::Error;

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("density must be positive, got {0}")]
    NonPositiveDensity(f64),

    #[error("pressure coefficient must be a finite value >= 0, got {0}")]
    InvalidPressureCoefficient(f64),

    #[error("{name} must be finite, got {value}")]
    NonFinite { name: &'static str, value: f64 },

    #[error("time must be positive, got {0}")]
    NonPositiveTime(f64),

    #[error("time must be nonnegative, got {0}")]
    NegativeTime(f64),

    #[error("the 1-contact curve is undefined in the transport limit A = 0")]
    TransportLimit,

    #[error("not applicable: {0}")]
    NotApplicable(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("internal inconsistency: {0}")]
    Inconsistency(String),

    #[error("trajectory integration failed at t = {t}: {reason}")]
    IntegrationFailure { t: f64, reason: String },
}
