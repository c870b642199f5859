//! Pauli correlation arrays of two- and three-qubit states.

use crate::error::{Error, Result};
use crate::linalg::{pauli, tensor, tensor_all, ComplexMatrix};
use crate::state::DensityMatrix;

fn check_dims(rho: &DensityMatrix, expected: &[usize]) -> Result<()> {
    if rho.subsystem_dims() != expected {
        return Err(Error::WrongSubsystems {
            expected: expected.to_vec(),
            got: rho.subsystem_dims().to_vec(),
        });
    }
    Ok(())
}

fn check_entry(value: f64) -> Result<f64> {
    if value.abs() > 1.0 + 1e-9 {
        return Err(Error::CorrelationOutOfRange { value });
    }
    Ok(value)
}

/// The 3x3 matrix `t_nm = Tr(rho sigma_n x sigma_m)` of a two-qubit state.
#[derive(Debug, Clone, PartialEq)]
pub struct CorrelationMatrix {
    entries: [[f64; 3]; 3],
}

impl CorrelationMatrix {
    pub fn entries(&self) -> &[[f64; 3]; 3] {
        &self.entries
    }

    /// `T v` on real 3-vectors.
    pub fn apply(&self, v: [f64; 3]) -> [f64; 3] {
        let mut out = [0.0; 3];
        for (n, row) in self.entries.iter().enumerate() {
            out[n] = row[0] * v[0] + row[1] * v[1] + row[2] * v[2];
        }
        out
    }

    /// `T' v` (transpose application).
    pub fn apply_transpose(&self, v: [f64; 3]) -> [f64; 3] {
        let mut out = [0.0; 3];
        for m in 0..3 {
            out[m] =
                self.entries[0][m] * v[0] + self.entries[1][m] * v[1] + self.entries[2][m] * v[2];
        }
        out
    }

    /// `a . T b`.
    pub fn bilinear(&self, a: [f64; 3], b: [f64; 3]) -> f64 {
        let tb = self.apply(b);
        a[0] * tb[0] + a[1] * tb[1] + a[2] * tb[2]
    }

    /// The real symmetric Gram matrix `T' T` as a complex matrix for the
    /// eigensolver.
    pub fn gram(&self) -> ComplexMatrix {
        let t = &self.entries;
        let mut g = [[0.0; 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                g[i][j] = (0..3).map(|k| t[k][i] * t[k][j]).sum();
            }
        }
        let flat: Vec<f64> = g.iter().flatten().copied().collect();
        ComplexMatrix::from_real(3, 3, &flat).expect("3x3 real matrix")
    }
}

/// Correlation matrix of a two-qubit state.
pub fn correlation_matrix(rho: &DensityMatrix) -> Result<CorrelationMatrix> {
    check_dims(rho, &[2, 2])?;
    let mut entries = [[0.0; 3]; 3];
    for n in 0..3 {
        for m in 0..3 {
            let op = tensor(&pauli(n + 1), &pauli(m + 1));
            entries[n][m] = check_entry(rho.expectation(&op))?;
        }
    }
    Ok(CorrelationMatrix { entries })
}

/// The 3x3x3 array `m_ijk = Tr[rho sigma_i x sigma_j x sigma_k]` of a
/// three-qubit state, together with the two-body marginal arrays needed to
/// evaluate inequalities whose terms leave one party unmeasured.
#[derive(Debug, Clone, PartialEq)]
pub struct CorrelationTensor3 {
    entries: [[[f64; 3]; 3]; 3],
    pair_ab: [[f64; 3]; 3],
    pair_ac: [[f64; 3]; 3],
    pair_bc: [[f64; 3]; 3],
}

impl CorrelationTensor3 {
    pub fn entries(&self) -> &[[[f64; 3]; 3]; 3] {
        &self.entries
    }

    pub fn pair(&self, first: usize, second: usize) -> &[[f64; 3]; 3] {
        match (first, second) {
            (0, 1) => &self.pair_ab,
            (0, 2) => &self.pair_ac,
            (1, 2) => &self.pair_bc,
            _ => panic!("pair indices must be one of (0,1), (0,2), (1,2)"),
        }
    }

    /// Three-body contraction `sum m_ijk a_i b_j c_k`.
    pub fn contract3(&self, a: [f64; 3], b: [f64; 3], c: [f64; 3]) -> f64 {
        let mut acc = 0.0;
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    acc += self.entries[i][j][k] * a[i] * b[j] * c[k];
                }
            }
        }
        acc
    }

    /// The 3x9 unfolding `m_(j,(ik))`: rows indexed by the middle party,
    /// columns by the `(i, k)` pair.
    pub fn unfolding(&self) -> ComplexMatrix {
        let mut flat = vec![0.0; 27];
        for j in 0..3 {
            for i in 0..3 {
                for k in 0..3 {
                    flat[j * 9 + (i * 3 + k)] = self.entries[i][j][k];
                }
            }
        }
        ComplexMatrix::from_real(3, 9, &flat).expect("3x9 real matrix")
    }
}

/// Correlation tensor (plus two-body marginals) of a three-qubit state.
pub fn correlation_tensor3(rho: &DensityMatrix) -> Result<CorrelationTensor3> {
    check_dims(rho, &[2, 2, 2])?;
    let id = ComplexMatrix::identity(2);
    let mut entries = [[[0.0; 3]; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            for k in 0..3 {
                let op = tensor_all(&[&pauli(i + 1), &pauli(j + 1), &pauli(k + 1)]);
                entries[i][j][k] = check_entry(rho.expectation(&op))?;
            }
        }
    }
    let mut pair_ab = [[0.0; 3]; 3];
    let mut pair_ac = [[0.0; 3]; 3];
    let mut pair_bc = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            pair_ab[i][j] =
                check_entry(rho.expectation(&tensor_all(&[&pauli(i + 1), &pauli(j + 1), &id])))?;
            pair_ac[i][j] =
                check_entry(rho.expectation(&tensor_all(&[&pauli(i + 1), &id, &pauli(j + 1)])))?;
            pair_bc[i][j] =
                check_entry(rho.expectation(&tensor_all(&[&id, &pauli(i + 1), &pauli(j + 1)])))?;
        }
    }
    Ok(CorrelationTensor3 { entries, pair_ab, pair_ac, pair_bc })
}
