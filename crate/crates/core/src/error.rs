use thiserror::Error;

/// Errors raised by cloud, transform and invariant operations.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("non-finite coordinate ({x}, {y})")]
    NonFinitePoint { x: f64, y: f64 },

    #[error("a cloud needs at least 2 points, got {0}")]
    TooFewPoints(usize),

    /// All x-coordinates are effectively equal, so the least-squares line is vertical.
    #[error("degenerate cloud: D = {d:e} is zero within tolerance")]
    DegenerateCloud { d: f64 },

    #[error("matrix has non-finite entries")]
    NonFiniteMatrix,

    #[error("matrix is not invertible (det = {det:e})")]
    SingularMatrix { det: f64 },

    /// The image cloud has all x equal; the induced slope is undefined.
    #[error("degenerate image: transformed D vanishes (denominator {denominator:e})")]
    DegenerateImage { denominator: f64 },

    #[error("kernel is singular or undefined at (M, H) = ({m}, {h})")]
    KernelSingular { m: f64, h: f64 },

    /// beta', gamma' and delta are all zero: every function is invariant.
    #[error(
        "degenerate generator: all derivative coefficients vanish, every function is invariant"
    )]
    DegenerateGenerator,

    #[error("family has no parameter value mapping to the identity")]
    NoIdentityParameter,

    #[error("target matrix equals the identity; every function is invariant")]
    DegenerateTarget,

    #[error("invalid generator spec: {0}")]
    InvalidSpec(String),

    #[error("non-finite value: {0}")]
    NonFinite(&'static str),

    #[error("finite-difference step must be positive and finite, got {0}")]
    InvalidStep(f64),

    #[error("parse error{}: {message}", line.map(|l| format!(" on line {l}")).unwrap_or_default())]
    Parse {
        line: Option<usize>,
        message: String,
    },
}

impl Error {
    pub(crate) fn parse(message: impl Into<String>) -> Self {
        Error::Parse {
            line: None,
            message: message.into(),
        }
    }

    pub(crate) fn parse_at(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line: Some(line),
            message: message.into(),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
