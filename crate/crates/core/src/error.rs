use thiserror::Error;

/// Errors raised by the bracket, composition and dynamics engines.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// A parameter violates an invariant of its algebra or system.
    #[error("invalid `{field}`: {reason}")]
    InvalidParameter { field: String, reason: String },

    #[error("dimension mismatch: expected {expected} particles, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("particles use different algebras ({first} vs {other}); mixed systems are not composed")]
    MixedAlgebras { first: String, other: String },

    /// The center-of-mass brackets only reproduce the particle algebra when the
    /// deformation parameters scale inversely with mass.
    #[error("scaling required: {0}")]
    ScalingRequired(String),

    #[error("operation requires the {expected} algebra, got {found}")]
    UnsupportedAlgebra { expected: String, found: String },

    #[error("composite-body dynamics for this system neglect relative motion; set `neglect_relative_motion` to accept the approximation")]
    ApproximationNotAcknowledged,

    #[error("potential singular at distance {distance:e} from the source (minimum {r_min:e})")]
    Singularity { distance: f64, r_min: f64 },

    #[error("non-finite state at step {step} (t = {t})")]
    NonFinite { step: usize, t: f64 },

    /// Integration failed at a given step; wraps the underlying cause.
    #[error("integration failed at step {step} (t = {t}): {source}")]
    Integration {
        step: usize,
        t: f64,
        #[source]
        source: Box<Error>,
    },

    #[error("gradient evaluation failed: {0}")]
    Gradient(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(field: impl Into<String>, reason: impl Into<String>) -> Error {
    Error::InvalidParameter {
        field: field.into(),
        reason: reason.into(),
    }
}
