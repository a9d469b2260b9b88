use thiserror::Error;

/// Library error type. Payload scalars are reported as `f64` regardless of the
/// working scalar.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Series truncation criterion not met within the term cap, or the
    /// cancellation guard tripped; the caller should fall back to a
    /// quadrature representation.
    #[error("series did not converge after {terms} terms (ill-conditioned cancellation)")]
    NonConvergence { terms: usize },

    /// Requested tolerance could not be met; the best estimate is carried in
    /// the payload.
    #[error("tolerance not met: value ~ {value:e}, abs error estimate {abs_error_estimate:e}")]
    ToleranceNotMet { value: f64, abs_error_estimate: f64 },

    /// An integrand evaluated to a non-finite value inside the quadrature.
    #[error("integrand is non-finite at r = {at:e}")]
    NonFiniteIntegrand { at: f64 },

    /// A contour sample overflowed during Laplace inversion.
    #[error("non-finite result in contour summation")]
    NonFiniteResult,

    /// Green's functions are defined for t > 0 only.
    #[error("invalid time t = {t:e}: Green's function requires t > 0")]
    InvalidTime { t: f64 },

    /// Position vector length does not match the spec dimension.
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    /// One-sided directional-derivative semantics requested at n.r = 0 where
    /// |n.r| is not differentiable.
    #[error("kink point: n.r = 0 with one-sided semantics requested")]
    KinkPoint,

    /// Laplace variable must be positive real.
    #[error("invalid Laplace variable s = {s:e}: require s > 0")]
    InvalidLaplaceVariable { s: f64 },

    /// Orthant integration requires strictly positive direction components.
    #[error("invalid direction: component {index} is not strictly positive")]
    InvalidDirection { index: usize },

    /// Fractional order outside the operator's admissible range.
    #[error("order out of range: {what}")]
    OrderOutOfRange { what: &'static str },

    /// Domain-type invariant violated at construction.
    #[error("invalid parameter: {what}")]
    InvalidParameter { what: &'static str },
}

pub type Result<T> = std::result::Result<T, Error>;
