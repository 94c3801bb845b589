use std::path::PathBuf;

use thiserror::Error;

/// Errors raised by code construction, encoding and decoding.
#[derive(Error, Debug, Clone, PartialEq)]
pub enum PolarError {
    #[error("length {0} is not a power of two >= 2")]
    NotPowerOfTwo(usize),

    #[error("information length {k} out of range for code length {n}")]
    InfoLengthOutOfRange { k: usize, n: usize },

    #[error("frozen index {index} out of range for code length {n}")]
    FrozenIndexOutOfRange { index: usize, n: usize },

    #[error("frozen set has {got} entries, expected N - k = {expected}")]
    FrozenCountMismatch { got: usize, expected: usize },

    #[error("duplicate frozen index {0}")]
    DuplicateFrozenIndex(usize),

    #[error("CRC length {crc} must be smaller than information length {k}")]
    CrcTooLong { crc: usize, k: usize },

    #[error("length mismatch: got {got}, expected {expected}")]
    LengthMismatch { got: usize, expected: usize },

    #[error("flip index {index} invalid for node of width {width}")]
    InvalidFlip { index: usize, width: usize },

    #[error("node {0} is not an information leaf of the decoder tree")]
    InvalidFlipNode(usize),

    #[error("invalid CRC specification: {0}")]
    InvalidCrc(String),

    #[error("{path}:{line}: {msg}")]
    Parse { path: PathBuf, line: usize, msg: String },

    #[error("I/O error on {path}: {msg}")]
    Io { path: PathBuf, msg: String },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("target FER {target:e} outside the range of curve {curve}")]
    FerOutOfRange { target: f64, curve: String },
}

pub type Result<T> = std::result::Result<T, PolarError>;

impl PolarError {
    pub(crate) fn io(path: impl Into<PathBuf>, err: std::io::Error) -> Self {
        PolarError::Io { path: path.into(), msg: err.to_string() }
    }
}
