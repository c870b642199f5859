//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("data length {len} does not match {rows}x{cols}")]
    DataLength { rows: usize, cols: usize, len: usize },

    #[error("matrix entries must be finite")]
    NonFinite,

    #[error("matrix dimensions must be positive (got {rows}x{cols})")]
    EmptyMatrix { rows: usize, cols: usize },

    #[error("expected a square matrix, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix is not Hermitian: max |M - M\u{2020}| entry = {deviation:.3e}")]
    NotHermitian { deviation: f64 },

    #[error("trace must equal 1 within tolerance (got {trace})")]
    TraceNotOne { trace: f64 },

    #[error("matrix is not positive semidefinite: eigenvalue {eigenvalue} below floor")]
    NotPositiveSemidefinite { eigenvalue: f64 },

    #[error("subsystem dims {dims:?} do not multiply to the matrix dimension {dim}")]
    BadSubsystems { dims: Vec<usize>, dim: usize },

    #[error("subsystem index {index} out of range for {count} subsystems")]
    SubsystemIndex { index: usize, count: usize },

    #[error("keep set must be a nonempty proper subset of subsystems, strictly increasing")]
    BadKeepSet,

    #[error("state vector norm must equal 1 within tolerance (got {norm})")]
    NotNormalized { norm: f64 },

    #[error("not a pure state: Tr \u{3c1}\u{b2} = {purity}")]
    NotPure { purity: f64 },

    #[error("Bloch vector must have unit norm within tolerance (got {norm})")]
    NotUnitVector { norm: f64 },

    #[error("Kraus operators must share one shape")]
    KrausShape,

    #[error("Kraus set is not complete: max |\u{3a3}K\u{2020}K - I| entry = {deviation:.3e}")]
    KrausIncomplete { deviation: f64 },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimMismatch { expected: usize, got: usize },

    #[error("expected subsystem dims {expected:?}, got {got:?}")]
    WrongSubsystems { expected: Vec<usize>, got: Vec<usize> },

    #[error("total dimension {dim} exceeds the cap {cap}")]
    DimensionOverflow { dim: usize, cap: usize },

    #[error("conversion spec requires d >= 2 and n >= 2 (got d={d}, n={n})")]
    BadConversionSpec { d: usize, n: usize },

    #[error("projector indices must be distinct and below d={d} (got {indices:?})")]
    BadProjector { indices: [usize; 4], d: usize },

    #[error("need at least {needed} subsystems, got {got}")]
    TooFewParties { needed: usize, got: usize },

    #[error("correlation entry {value} exceeds 1 in magnitude")]
    CorrelationOutOfRange { value: f64 },

    #[error("invalid grid spec: {0}")]
    InvalidGrid(String),

    #[error("search resolution must be at least 2 (got {0})")]
    BadResolution(usize),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
