use std::io;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid range: {0}")]
    InvalidRange(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("invalid length: {0}")]
    InvalidLength(String),

    #[error("kernel evaluation produced a non-finite entry at ({row}, {col})")]
    NonFiniteEntry { row: usize, col: usize },

    #[error("non-finite output: {0}")]
    NonFiniteOutput(String),

    #[error("matrix is not positive definite even with jitter {max_jitter:e}")]
    NotPositiveDefinite { max_jitter: f64 },

    #[error("sample {sample_index} failed after {attempts} attempts: {last}")]
    GenerationExhausted {
        sample_index: u64,
        attempts: usize,
        last: String,
    },

    #[error("band {band} is narrower than the length difference {diff}")]
    BandTooNarrow { band: usize, diff: usize },

    #[error("invalid cluster count {k} for {n} series")]
    InvalidK { k: usize, n: usize },

    #[error("size mismatch: {0}")]
    SizeMismatch(String),

    #[error("bad magic bytes in {0}")]
    BadMagic(String),

    #[error("unsupported array: {0}")]
    UnsupportedDtype(String),

    #[error("malformed header: {0}")]
    MalformedHeader(String),

    #[error("i/o error: {0}")]
    Io(#[from] io::Error),

    #[error("config error: {0}")]
    Config(String),
}
