use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// Career figures that cannot come from the per-ball model.
    #[error("invalid statistics: {0}")]
    InvalidStats(String),

    #[error("invalid innings format: {0}")]
    InvalidSpec(String),

    /// A (wickets, balls) pair that is not a terminal innings state.
    #[error("invalid terminal state: {wickets} wickets after {balls} balls")]
    InvalidState { wickets: u32, balls: u32 },

    #[error("numerical instability: variance {variance} is below tolerance -{tolerance}")]
    NumericalInstability { variance: f64, tolerance: f64 },

    /// Reward-to-risk is undefined for a player whose innings total has zero spread.
    #[error("degenerate risk: standard deviation is zero (mean {mean})")]
    DegenerateRisk { mean: f64 },

    #[error("invalid pmf: {0}")]
    InvalidPmf(String),

    #[error("missing header: expected `{expected}`")]
    MissingHeader { expected: &'static str },

    #[error("file contains a header but no player rows")]
    EmptyFile,

    #[error("no players to rank")]
    NoPlayers,

    #[error("{path}: {message}")]
    Io { path: PathBuf, message: String },

    #[error("{0}")]
    Usage(String),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, err: impl std::fmt::Display) -> Self {
        Error::Io {
            path: path.into(),
            message: err.to_string(),
        }
    }
}
