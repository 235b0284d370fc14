//! Error types shared across the crate.

use thiserror::Error;

/// Errors produced while parsing `.npy` files.
#[derive(Debug, Error)]
pub enum NpyError {
    #[error("bad magic string, not an npy file")]
    BadMagic,
    #[error("unsupported npy version {0}.{1}, only 1.0 is handled")]
    UnsupportedVersion(u8, u8),
    #[error("unsupported dtype {0:?}, expected uint8/float32/float64 little-endian")]
    UnsupportedDtype(String),
    #[error("fortran-order arrays are not supported")]
    FortranOrder,
    #[error("truncated payload: expected {expected} bytes, got {got}")]
    Truncated { expected: usize, got: usize },
    #[error("malformed header: {0}")]
    Header(String),
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("coordinate {coord} at factor {factor} out of range (size {size})")]
    InvalidPosition {
        factor: usize,
        coord: usize,
        size: usize,
    },
    #[error("position has {got} coordinates, space has {expected} factors")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("factor index {factor} out of range for {count}-factor space")]
    FactorOutOfRange { factor: usize, count: usize },
    #[error("index {idx} out of range (total {total})")]
    IndexOutOfRange { idx: usize, total: usize },
    #[error("observation shapes differ: {a} vs {b}")]
    ShapeMismatch { a: String, b: String },
    #[error("stats have {stats} channels, observation has {obs}")]
    ChannelMismatch { stats: usize, obs: usize },
    #[error("invalid dataset parameters: {0}")]
    InvalidParams(String),
    #[error("channel {0} has zero standard deviation")]
    ZeroStd(usize),
    #[error("empty dataset")]
    EmptyDataset,
    #[error("no factor with at least two values")]
    NoEligibleFactor,
    #[error("non-finite value in {0}")]
    NonFinite(&'static str),
    #[error("training diverged at step {step}: {what}")]
    Diverged { step: usize, what: String },
    #[error("metric input invalid: {0}")]
    MetricInput(String),
    #[error("checkpoint: {0}")]
    Checkpoint(String),
    #[error("npy: {0}")]
    Npy(#[from] NpyError),
    #[error("manifest: {0}")]
    Manifest(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
