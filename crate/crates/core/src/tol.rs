//! Numerical tolerances shared across the crate.
//!
//! Double precision at dimensions below a few dozen leaves a wide margin, so
//! the validation thresholds are tight while certificate decisions stay at a
//! looser 1e-9.

/// Max entrywise deviation allowed in `|M - M\u{2020}|` for Hermitian inputs.
pub const HERMITICITY: f64 = 1e-10;

/// Allowed deviation of a density-matrix trace from 1.
pub const TRACE: f64 = 1e-10;

/// Eigenvalue floor for the positive-semidefinite check.
pub const PSD_FLOOR: f64 = -1e-9;

/// Allowed deviation of state-vector and Bloch-vector norms from 1.
pub const UNIT_NORM: f64 = 1e-10;

/// Max entrywise deviation in `\u{3a3} K\u{2020}K - I` for a complete Kraus set.
pub const KRAUS_COMPLETENESS: f64 = 1e-9;

/// Magnitude below which a matrix entry counts as zero for incoherence tests.
pub const ENTRY_NONZERO: f64 = 1e-10;

/// Coherence below this value counts as incoherent.
pub const INCOHERENT: f64 = 1e-10;

/// Strict slack for "violated" verdicts: value must exceed bound + CERT.
pub const CERT: f64 = 1e-9;

/// Projection weights at or below this are reported as undetectable.
pub const PROJECTION_WEIGHT: f64 = 1e-12;

/// Eigenvalues of sigma at or below this count as outside its support.
pub const SUPPORT: f64 = 1e-10;
