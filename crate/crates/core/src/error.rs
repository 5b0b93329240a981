use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("line {line}: {msg}")]
    Parse { line: u64, msg: String },

    #[error("line {line}: duplicate timestamp {t}")]
    DuplicateTimestamp { line: u64, t: f64 },

    #[error("no data rows")]
    Empty,

    #[error("invalid series: {0}")]
    InvalidSeries(String),

    #[error("need at least {need} points, got {got}")]
    TooShort { need: usize, got: usize },

    #[error("t = {t} outside [{lo}, {hi}]")]
    OutOfRange { t: f64, lo: f64, hi: f64 },

    #[error("domain error: {0}")]
    Domain(String),

    /// The model is evaluated outside the regime where it is defined
    /// (log arguments at or below one, vanishing process variables).
    #[error("model domain error: {0}")]
    ModelDomain(String),

    #[error("singular local fit")]
    SingularFit,

    #[error("design matrix is rank deficient")]
    RankDeficient,

    #[error("degenerate equilibrium: sigma equals delta")]
    DegenerateEquilibrium,

    #[error("insufficient data: need {need} samples, got {got}")]
    InsufficientData { need: usize, got: usize },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}

pub(crate) fn model_domain(msg: impl Into<String>) -> Error {
    Error::ModelDomain(msg.into())
}

/// Tags a model domain error with the grid point where it occurred.
pub(crate) fn at_point(t: f64, e: Error) -> Error {
    match e {
        Error::ModelDomain(msg) => Error::ModelDomain(format!("t = {t}: {msg}")),
        other => other,
    }
}
