use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("non-finite value {0} cannot be binned")]
    NonFinite(f64),

    #[error("invalid binning interval [{lower}, {upper}] with {n_interior} interior bins")]
    InvalidBinning { lower: f64, upper: f64, n_interior: usize },

    #[error("empty sample set")]
    EmptySamples,

    #[error("dimension mismatch for {what}: expected {expected}, got {got}")]
    DimensionMismatch {
        what: &'static str,
        expected: usize,
        got: usize,
    },

    #[error("bin ({r}, {c}) is not occupied")]
    UnoccupiedBin { r: usize, c: usize },

    #[error("zero-norm vector in cosine similarity")]
    ZeroNorm,

    #[error("empty accuracy table")]
    EmptyTable,

    #[error("data source exhausted after {0} samples")]
    Exhausted(usize),

    #[error("IDX parse error in {path}: {reason}")]
    Idx { path: PathBuf, reason: String },

    #[error("invalid configuration: {}", .0.join("; "))]
    InvalidConfig(Vec<String>),

    #[error("config parse error: {0}")]
    ConfigParse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
