use thiserror::Error;

/// Errors raised by curve evaluation, isoptic construction and LCG analysis.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("parameter {value} lies outside the admissible domain ({lower:?}, {upper:?})")]
    OutOfDomain {
        value: f64,
        lower: Option<f64>,
        upper: Option<f64>,
    },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("quadrature did not reach tolerance after {subdivisions} subdivisions (value {value:?}, error estimate {error_estimate:e})")]
    ToleranceNotReached {
        value: (f64, f64),
        error_estimate: f64,
        subdivisions: usize,
    },

    #[error("integrand is not finite at {at}")]
    NonFiniteIntegrand { at: f64 },

    #[error("finite-difference extrapolation diverged (best error estimate {error:e})")]
    UnstableEstimate { error: f64 },

    #[error("angle {0} must lie strictly inside (0, pi)")]
    DegenerateAngle(f64),

    #[error("chord vector vanishes")]
    ZeroChord,

    #[error("isoptic parameter domain is empty")]
    EmptyDomain,

    #[error("a circle has constant curvature and no logarithmic curvature graph")]
    NoLcg,

    #[error("curve speed vanishes at {0}")]
    ZeroSpeed(f64),

    #[error("radius of curvature is stationary at {0}")]
    StationaryCurvature(f64),

    #[error("curvature vanishes at {0}")]
    Inflection(f64),

    #[error("secant through LCG points is vertical (dx = {0:e})")]
    DegenerateSecant(f64),

    #[error("target slope is singular for this shape parameter")]
    SingularTarget,

    #[error("invalid polyline: {0}")]
    InvalidPolyline(String),

    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
