use thiserror::Error;

use crate::measures::MeasureKind;

/// Error type shared by every module of the crate.
#[derive(Debug, Error)]
pub enum Error {
    /// A constructor or configuration value was rejected.
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    /// An evaluation was requested outside the mathematical domain of the
    /// operation (non-finite argument, hazard where the survival function
    /// vanishes, and so on).
    #[error("domain error: {0}")]
    Domain(String),

    /// The two probability functions of a pairwise operation are of
    /// different kinds (density vs. survival vs. cumulative).
    #[error("measure kind mismatch: {left} vs {right}")]
    KindMismatch { left: MeasureKind, right: MeasureKind },

    /// The requested integral does not converge, e.g. a cumulative measure
    /// on an unbounded support.
    #[error("divergent measure: {0}")]
    DivergentMeasure(String),

    /// The inputs carry no usable information for the requested quantity:
    /// disjoint supports, constant samples, all-black images.
    #[error("degenerate input: {0}")]
    DegenerateInput(String),

    /// Numerical failure: the quadrature did not converge within its
    /// budget, or a computed quantity violates an analytic bound by more
    /// than rounding noise.
    #[error("numerical failure: {0}")]
    Numerical(String),

    #[error("sample too small: need at least {min} values, got {got}")]
    SampleTooSmall { min: usize, got: usize },

    /// Two anchor images have indistinguishable reference similarities, so
    /// classification would be ambiguous.
    #[error("ambiguous anchors: {0}")]
    AnchorCollision(String),

    #[error("image format error: {0}")]
    ImageFormat(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name,
            reason: reason.into(),
        }
    }
}
