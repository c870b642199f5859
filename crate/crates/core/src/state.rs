//! Density matrices, pure states, partial trace and entropies.

use num_complex::Complex64 as C64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::linalg::{eig_hermitian, eigh, ComplexMatrix};
use crate::tol;

/// Hermitian, positive-semidefinite, unit-trace matrix together with the
/// subsystem dimensions it lives on. Validation happens once at construction,
/// so a value of this type is always a usable quantum state.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    matrix: ComplexMatrix,
    dims: Vec<usize>,
}

impl DensityMatrix {
    pub fn new(matrix: ComplexMatrix, dims: Vec<usize>) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::NotSquare { rows: matrix.rows(), cols: matrix.cols() });
        }
        let dim = matrix.rows();
        if dims.is_empty() || dims.contains(&0) || dims.iter().product::<usize>() != dim {
            return Err(Error::BadSubsystems { dims, dim });
        }
        let dev = matrix.hermiticity_deviation();
        if dev > tol::HERMITICITY {
            return Err(Error::NotHermitian { deviation: dev });
        }
        let trace = matrix.trace();
        if (trace.re - 1.0).abs() > tol::TRACE || trace.im.abs() > tol::TRACE {
            return Err(Error::TraceNotOne { trace: trace.re });
        }
        let eigenvalues = eig_hermitian(&matrix)?;
        if let Some(&min) = eigenvalues.last() {
            if min < tol::PSD_FLOOR {
                return Err(Error::NotPositiveSemidefinite { eigenvalue: min });
            }
        }
        Ok(Self { matrix, dims })
    }

    /// Single-system state: `dims = [dim]`.
    pub fn single(matrix: ComplexMatrix) -> Result<Self> {
        let d = matrix.rows();
        Self::new(matrix, vec![d])
    }

    /// Diagonal state from a probability vector.
    pub fn from_probabilities(probs: &[f64]) -> Result<Self> {
        Self::single(ComplexMatrix::diagonal(probs))
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn subsystem_dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    #[inline]
    pub fn entry(&self, i: usize, j: usize) -> C64 {
        self.matrix.get(i, j)
    }

    /// Eigenvalues in descending order.
    pub fn eigenvalues(&self) -> Vec<f64> {
        eig_hermitian(&self.matrix).expect("stored matrix is Hermitian")
    }

    /// `Tr \u{3c1}\u{b2}`, which is 1 exactly for pure states.
    pub fn purity(&self) -> f64 {
        self.matrix.data().iter().map(|z| z.norm_sqr()).sum()
    }

    /// Reinterpret the same matrix over different subsystem dimensions.
    pub fn with_dims(&self, dims: Vec<usize>) -> Result<Self> {
        if dims.iter().product::<usize>() != self.dim() {
            return Err(Error::BadSubsystems { dims, dim: self.dim() });
        }
        Ok(Self { matrix: self.matrix.clone(), dims })
    }

    /// Expectation value `Tr(\u{3c1} O)` of a Hermitian observable.
    pub fn expectation(&self, observable: &ComplexMatrix) -> f64 {
        debug_assert_eq!(observable.rows(), self.dim());
        let mut acc = C64::new(0.0, 0.0);
        for i in 0..self.dim() {
            for j in 0..self.dim() {
                acc += self.matrix.get(i, j) * observable.get(j, i);
            }
        }
        acc.re
    }
}

/// Normalized state vector with subsystem bookkeeping.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    amplitudes: Vec<C64>,
    dims: Vec<usize>,
}

impl PureState {
    pub fn new(amplitudes: Vec<C64>, dims: Vec<usize>) -> Result<Self> {
        let dim = amplitudes.len();
        if dims.is_empty() || dims.iter().product::<usize>() != dim {
            return Err(Error::BadSubsystems { dims, dim });
        }
        if amplitudes.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite);
        }
        let norm = amplitudes.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if (norm - 1.0).abs() > tol::UNIT_NORM {
            return Err(Error::NotNormalized { norm });
        }
        Ok(Self { amplitudes, dims })
    }

    /// Computational basis state `|index>` of one `dim`-dimensional system.
    pub fn basis(dim: usize, index: usize) -> Self {
        assert!(index < dim, "basis index out of range");
        let mut amplitudes = vec![C64::new(0.0, 0.0); dim];
        amplitudes[index] = C64::new(1.0, 0.0);
        Self { amplitudes, dims: vec![dim] }
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn subsystem_dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amplitudes
    }

    /// Outer product `|psi><psi|` as a density matrix.
    pub fn density(&self) -> DensityMatrix {
        let n = self.dim();
        let m = ComplexMatrix::from_fn(n, n, |i, j| self.amplitudes[i] * self.amplitudes[j].conj());
        DensityMatrix::new(m, self.dims.clone()).expect("outer product of a unit vector")
    }

    /// Recover the state vector of a pure density matrix. Rejects mixed
    /// input; the global phase is fixed by making the largest amplitude
    /// real and nonnegative.
    pub fn try_from_density(rho: &DensityMatrix) -> Result<Self> {
        let purity = rho.purity();
        if (purity - 1.0).abs() > 1e-9 {
            return Err(Error::NotPure { purity });
        }
        let (_, vectors) = eigh(rho.matrix())?;
        let n = rho.dim();
        let mut amplitudes: Vec<C64> = (0..n).map(|i| vectors.get(i, 0)).collect();
        let (kmax, _) = amplitudes
            .iter()
            .enumerate()
            .max_by(|(_, a), (_, b)| a.norm_sqr().partial_cmp(&b.norm_sqr()).unwrap())
            .expect("nonempty");
        let lead = amplitudes[kmax];
        if lead.norm() > 0.0 {
            let phase = lead.conj() / lead.norm();
            for a in &mut amplitudes {
                *a *= phase;
            }
        }
        let norm = amplitudes.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        for a in &mut amplitudes {
            *a /= norm;
        }
        Self::new(amplitudes, rho.subsystem_dims().to_vec())
    }
}

fn decode(mut index: usize, dims: &[usize]) -> Vec<usize> {
    let mut digits = vec![0; dims.len()];
    for k in (0..dims.len()).rev() {
        digits[k] = index % dims[k];
        index /= dims[k];
    }
    digits
}

/// Trace out every subsystem not listed in `keep`. The kept indices must be
/// strictly increasing and form a nonempty proper subset.
pub fn partial_trace(rho: &DensityMatrix, keep: &[usize]) -> Result<DensityMatrix> {
    let dims = rho.subsystem_dims();
    let n = dims.len();
    for &k in keep {
        if k >= n {
            return Err(Error::SubsystemIndex { index: k, count: n });
        }
    }
    if keep.is_empty() || keep.len() >= n || keep.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::BadKeepSet);
    }

    let traced: Vec<usize> = (0..n).filter(|i| !keep.contains(i)).collect();
    let kept_dims: Vec<usize> = keep.iter().map(|&i| dims[i]).collect();
    let traced_dims: Vec<usize> = traced.iter().map(|&i| dims[i]).collect();
    let dk: usize = kept_dims.iter().product();
    let dt: usize = traced_dims.iter().product();

    let mut strides = vec![1usize; n];
    for i in (0..n.saturating_sub(1)).rev() {
        strides[i] = strides[i + 1] * dims[i + 1];
    }

    let mut out = ComplexMatrix::zeros(dk, dk);
    for rk in 0..dk {
        let rdig = decode(rk, &kept_dims);
        for ck in 0..dk {
            let cdig = decode(ck, &kept_dims);
            let mut acc = C64::new(0.0, 0.0);
            for t in 0..dt {
                let tdig = decode(t, &traced_dims);
                let mut row = 0;
                let mut col = 0;
                for (pos, &sub) in keep.iter().enumerate() {
                    row += rdig[pos] * strides[sub];
                    col += cdig[pos] * strides[sub];
                }
                for (pos, &sub) in traced.iter().enumerate() {
                    row += tdig[pos] * strides[sub];
                    col += tdig[pos] * strides[sub];
                }
                acc += rho.entry(row, col);
            }
            out.set(rk, ck, acc);
        }
    }
    DensityMatrix::new(out, kept_dims)
}

/// Von Neumann entropy in bits: `-\u{3a3} \u{3bb} log2 \u{3bb}` with `0 log 0 = 0`.
pub fn von_neumann_entropy(rho: &DensityMatrix) -> f64 {
    rho.eigenvalues().iter().filter(|&&l| l > 0.0).map(|&l| -l * l.log2()).sum()
}

/// Relative entropy `S(\u{3c1} || \u{3c3}) = Tr \u{3c1}(log2 \u{3c1} - log2 \u{3c3})`.
///
/// Returns `+inf` when the support of `rho` leaks outside the support of
/// `sigma`; that is a flagged result, not an error.
pub fn relative_entropy(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<f64> {
    if rho.dim() != sigma.dim() {
        return Err(Error::DimMismatch { expected: rho.dim(), got: sigma.dim() });
    }
    let (mu, v) = eigh(sigma.matrix())?;
    let n = rho.dim();

    // Diagonal of rho in sigma's eigenbasis.
    let mut tr_rho_log_sigma = 0.0;
    let mut null_weight = 0.0;
    for k in 0..n {
        let mut p = 0.0;
        for i in 0..n {
            for j in 0..n {
                p += (v.get(i, k).conj() * rho.entry(i, j) * v.get(j, k)).re;
            }
        }
        let p = p.max(0.0);
        if mu[k] > tol::SUPPORT {
            tr_rho_log_sigma += p * mu[k].log2();
        } else {
            null_weight += p;
        }
    }
    if null_weight > 1e-10 {
        return Ok(f64::INFINITY);
    }
    let tr_rho_log_rho: f64 =
        rho.eigenvalues().iter().filter(|&&l| l > 0.0).map(|&l| l * l.log2()).sum();
    Ok(tr_rho_log_rho - tr_rho_log_sigma)
}

#[derive(Serialize, Deserialize)]
struct DensityJson {
    rows: usize,
    cols: usize,
    data: Vec<[f64; 2]>,
    dims: Vec<usize>,
}

impl Serialize for DensityMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        DensityJson {
            rows: self.matrix.rows(),
            cols: self.matrix.cols(),
            data: self.matrix.data().iter().map(|z| [z.re, z.im]).collect(),
            dims: self.dims.clone(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for DensityMatrix {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw = DensityJson::deserialize(deserializer)?;
        let data = raw.data.iter().map(|&[re, im]| C64::new(re, im)).collect();
        let matrix =
            ComplexMatrix::new(raw.rows, raw.cols, data).map_err(serde::de::Error::custom)?;
        DensityMatrix::new(matrix, raw.dims).map_err(serde::de::Error::custom)
    }
}
