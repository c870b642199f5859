//! Constructors for the coherence-to-correlation conversion operations and
//! generic channel application.

use num_complex::Complex64 as C64;

use crate::coherence::KrausSet;
use crate::error::{Error, Result};
use crate::linalg::ComplexMatrix;
use crate::state::{DensityMatrix, PureState};

/// Parameters of the fan-out conversion: a `d`-dimensional source plus
/// `n - 1` ancillas initialized to `|0>`.
///
/// Construction caps the total dimension at `d^n <= 10^4` so the explicit
/// unitary stays buildable.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ConversionSpec {
    d: usize,
    n: usize,
}

const DIM_CAP: usize = 10_000;

impl ConversionSpec {
    pub fn new(d: usize, n: usize) -> Result<Self> {
        if d < 2 || n < 2 {
            return Err(Error::BadConversionSpec { d, n });
        }
        let mut total: usize = 1;
        for _ in 0..n {
            total = total
                .checked_mul(d)
                .filter(|&t| t <= DIM_CAP)
                .ok_or(Error::DimensionOverflow { dim: usize::MAX, cap: DIM_CAP })?;
        }
        Ok(Self { d, n })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn total_dim(&self) -> usize {
        self.d.pow(self.n as u32)
    }

    /// Flat index of `|i, i, ..., i>`.
    fn aligned_index(&self, i: usize) -> usize {
        let mut idx = 0;
        for _ in 0..self.n {
            idx = idx * self.d + i;
        }
        idx
    }
}

/// The two-qubit CNOT gate `|i>|j> -> |i>|i+j mod 2>` as a 4x4 permutation.
pub fn cnot() -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(4, 4);
    let one = C64::new(1.0, 0.0);
    for i in 0..2 {
        for j in 0..2 {
            let col = 2 * i + j;
            let row = 2 * i + ((i + j) % 2);
            m.set(row, col, one);
        }
    }
    m
}

/// Fan-out permutation `|i, j_2, ..., j_n> -> |i, i+j_2, ..., i+j_n>` (mod d).
/// Maps `|i, 0, ..., 0>` to `|i, i, ..., i>`; every column has exactly one
/// nonzero entry, so the unitary is incoherent.
pub fn fanout_unitary(spec: &ConversionSpec) -> ComplexMatrix {
    let (d, n, total) = (spec.d, spec.n, spec.total_dim());
    let mut m = ComplexMatrix::zeros(total, total);
    let one = C64::new(1.0, 0.0);
    for col in 0..total {
        let mut digits = Vec::with_capacity(n);
        let mut rest = col;
        for _ in 0..n {
            digits.push(rest % d);
            rest /= d;
        }
        digits.reverse();
        let lead = digits[0];
        let mut row = lead;
        for &digit in &digits[1..] {
            row = row * d + (lead + digit) % d;
        }
        m.set(row, col, one);
    }
    m
}

/// Fan-out conversion of a source state by the closed form
/// `\u{3a3}_ij \u{3c1}_ij |i...i><j...j|`.
///
/// Debug builds cross-check the result against the explicit conjugation
/// `U (\u{3c1} \u{2297} |0...0><0...0|) U\u{2020}` whenever the total dimension is small.
pub fn convert(rho_s: &DensityMatrix, spec: &ConversionSpec) -> Result<DensityMatrix> {
    if rho_s.dim() != spec.d {
        return Err(Error::DimMismatch { expected: spec.d, got: rho_s.dim() });
    }
    let total = spec.total_dim();
    let mut out = ComplexMatrix::zeros(total, total);
    for i in 0..spec.d {
        for j in 0..spec.d {
            out.set(spec.aligned_index(i), spec.aligned_index(j), rho_s.entry(i, j));
        }
    }
    let result = DensityMatrix::new(out, vec![spec.d; spec.n])?;
    #[cfg(debug_assertions)]
    if total <= 256 {
        let explicit = convert_via_unitary(rho_s, spec)?;
        debug_assert!(
            result.matrix().max_abs_diff(explicit.matrix()) <= 1e-12,
            "closed form disagrees with explicit conjugation"
        );
    }
    Ok(result)
}

/// Same conversion computed the expensive way: build the fan-out unitary and
/// conjugate `\u{3c1} \u{2297} |0...0><0...0|` explicitly. Kept as the independent
/// second route for tests and debug assertions.
pub fn convert_via_unitary(rho_s: &DensityMatrix, spec: &ConversionSpec) -> Result<DensityMatrix> {
    if rho_s.dim() != spec.d {
        return Err(Error::DimMismatch { expected: spec.d, got: rho_s.dim() });
    }
    let total = spec.total_dim();
    let ancilla_dim = total / spec.d;
    let mut joint = ComplexMatrix::zeros(total, total);
    for i in 0..spec.d {
        for j in 0..spec.d {
            joint.set(i * ancilla_dim, j * ancilla_dim, rho_s.entry(i, j));
        }
    }
    let u = fanout_unitary(spec);
    let conjugated = u.matmul(&joint).matmul(&u.adjoint());
    DensityMatrix::new(conjugated, vec![spec.d; spec.n])
}

/// Fan-out conversion of a pure source state: `\u{3a3}_i c_i |i...i>`.
pub fn convert_pure(psi_s: &PureState, spec: &ConversionSpec) -> Result<PureState> {
    if psi_s.dim() != spec.d {
        return Err(Error::DimMismatch { expected: spec.d, got: psi_s.dim() });
    }
    let total = spec.total_dim();
    let mut amps = vec![C64::new(0.0, 0.0); total];
    for (i, &c) in psi_s.amplitudes().iter().enumerate() {
        amps[spec.aligned_index(i)] = c;
    }
    PureState::new(amps, vec![spec.d; spec.n])
}

/// Apply a channel: `\u{3a3}_j K_j \u{3c1} K_j\u{2020}`.
pub fn apply_channel(k: &KrausSet, rho: &DensityMatrix) -> Result<DensityMatrix> {
    if k.input_dim() != rho.dim() {
        return Err(Error::DimMismatch { expected: k.input_dim(), got: rho.dim() });
    }
    let out_dim = k.output_dim();
    let mut out = ComplexMatrix::zeros(out_dim, out_dim);
    for op in k.operators() {
        out = out.add(&op.matmul(rho.matrix()).matmul(&op.adjoint()));
    }
    let dims = if out_dim == rho.dim() { rho.subsystem_dims().to_vec() } else { vec![out_dim] };
    DensityMatrix::new(out, dims)
}
