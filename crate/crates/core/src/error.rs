use thiserror::Error;

/// Errors produced by the numerical routines of this crate.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("order {l} exceeds the configured maximum {l_max}")]
    OrderTooLarge { l: usize, l_max: usize },

    #[error("argument magnitude {0:e} outside the supported range")]
    ArgumentOutOfRange(f64),

    #[error("non-finite value while evaluating {0}")]
    Overflow(&'static str),

    #[error("integration step size collapsed; smallest radius reached {reached}")]
    StepSizeFailure { reached: f64 },

    #[error("singular 2x2 system at the anchor radius")]
    SingularSystem,

    #[error("radius {r} outside solution span [{lo}, {hi}]")]
    OutOfSpan { r: f64, lo: f64, hi: f64 },

    #[error("function vanishes on the contour near {0}")]
    ContourZero(num_complex::Complex64),

    #[error("winding number {0} is not close to an integer")]
    QuadratureFailure(f64),

    #[error("root refinement failed in bracket [{lo}, {hi}]")]
    RootNotConverged { lo: f64, hi: f64 },

    #[error("boundary radius is not positive ({0}) in direction")]
    NonPositiveRadius(f64),

    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
