//! Quantum-information numerics for small systems: coherence measures,
//! incoherent channels, and nonlocality / genuine-entanglement certificates,
//! each backed by independent brute-force oracles.
//!
//! Everything works on dense complex matrices up to a few dozen dimensions.
//! All operations are pure functions on immutable values; nothing here holds
//! interior mutability, so every type is safe to share across threads.

#![forbid(unsafe_code)]
// index arithmetic over matrix and tensor slots reads clearest as plain loops
#![allow(clippy::needless_range_loop)]

pub mod campaigns;
pub mod channels;
pub mod coherence;
pub mod error;
pub mod linalg;
pub mod nonlocality;
pub mod sampling;
pub mod state;
pub mod tol;

pub use campaigns::CampaignResult;
pub use channels::{apply_channel, cnot, convert, convert_pure, fanout_unitary, ConversionSpec};
pub use coherence::{c_l1, c_rel_entropy, dephase, is_incoherent_kraus, CoherenceReport, KrausSet};
pub use error::{Error, Result};
pub use linalg::{
    eig_hermitian, eigh, pauli, singular_values, tensor, tensor_all, ComplexMatrix, C64,
};
pub use nonlocality::{CertificateReport, MeasurementSetting, SearchOptions};
pub use state::{partial_trace, relative_entropy, von_neumann_entropy, DensityMatrix, PureState};
