use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid path: {0}")]
    InvalidPath(String),

    #[error("path time spacing is not uniform (edge {edge})")]
    NonUniformPath { edge: usize },

    #[error("bad index range [{start}, {end}] for a path with {len} vertices")]
    BadRange { start: usize, end: usize, len: usize },

    #[error("time {0} is not a vertex time of the path")]
    NotAVertex(f64),

    #[error("invalid dissection: {0}")]
    InvalidDissection(String),

    #[error("p-variation exponent must be >= 1, got {0}")]
    BadExponent(f64),

    #[error("point ({x}, {y}) lies on the curve")]
    PointOnCurve { x: f64, y: f64 },

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("empty or out-of-range tail window [{lo}, {hi}] (table has N <= {n_max})")]
    BadWindow { lo: usize, hi: usize, n_max: usize },

    #[error("need at least {needed} samples, got {got}")]
    TooFewSamples { needed: usize, got: usize },

    #[error("bad Poisson rate {0}")]
    BadRate(f64),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}: {message}")]
    Parse { path: PathBuf, message: String },

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io { path: path.into(), source }
    }
}
