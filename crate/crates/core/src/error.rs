use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("non-finite value in {0}")]
    NonFinite(&'static str),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error(
        "quadrature did not converge on [{lower}, {upper}]: estimated error {estimate:e} > requested {requested:e} after {intervals} subintervals"
    )]
    Quadrature {
        lower: f64,
        upper: f64,
        estimate: f64,
        requested: f64,
        intervals: usize,
    },

    #[error("grid of {samples} samples aliases the received phase; at least {required} samples are needed")]
    Undersampled { samples: usize, required: usize },

    #[error("quadrature grid violates the Nyquist guard; oversampling must grow by a factor of {required_factor:.3}")]
    NyquistViolation { required_factor: f64 },

    #[error("no stationary point inside the window for k = {k}")]
    NoStationaryPoint { k: f64 },

    #[error("k = {k} lies on the evanescent side of the cutoff {cutoff}; no real stationary point")]
    Evanescent { k: f64, cutoff: f64 },

    #[error("k = {k} sits on the caustic; use the Airy engine")]
    Caustic { k: f64 },

    #[error("proper jolt is zero; the acceleration factors D_a, A_a apply instead")]
    UseAccelFactors,

    #[error("a0 = 0 with j0 > 0 leaves eta undefined")]
    DegenerateEta,

    #[error("proper acceleration is zero; use the jolt model with a0 = j0 = 0")]
    ZeroAcceleration,

    #[error("torsion undefined at ctau = {ctau}: curvature vanishes")]
    UndefinedTorsion { ctau: f64 },

    #[error("path is not future-directed at ctau = {ctau}")]
    NotFutureDirected { ctau: f64 },

    #[error("config field `{field}`: {message}")]
    Config { field: String, message: String },

    #[error("i/o: {0}")]
    Io(String),
}

impl Error {
    pub(crate) fn config(field: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Config {
            field: field.into(),
            message: message.into(),
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Io(e.to_string())
    }
}
