//! Seeded random states, unitaries and incoherent channels for property
//! tests and verification campaigns.
//!
//! Mixed states come from the Ginibre construction `GG\u{2020}/Tr(GG\u{2020})`, pure
//! states from normalized complex Gaussian vectors; both have full support
//! almost surely.

use num_complex::Complex64 as C64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::coherence::KrausSet;
use crate::linalg::ComplexMatrix;
use crate::state::{DensityMatrix, PureState};

/// The crate-wide deterministic generator. Every stochastic entry point
/// derives its stream from a caller-supplied seed through this constructor.
pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Standard normal deviate via Box-Muller.
pub fn standard_normal(rng: &mut impl Rng) -> f64 {
    let u1: f64 = rng.gen_range(f64::MIN_POSITIVE..1.0);
    let u2: f64 = rng.gen_range(0.0..1.0);
    (-2.0 * u1.ln()).sqrt() * (2.0 * std::f64::consts::PI * u2).cos()
}

fn complex_gaussian(rng: &mut impl Rng) -> C64 {
    C64::new(standard_normal(rng), standard_normal(rng))
        * C64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0)
}

/// Ginibre-distribution mixed state over the given subsystem dimensions.
pub fn ginibre_density(dims: &[usize], rng: &mut impl Rng) -> DensityMatrix {
    let d: usize = dims.iter().product();
    let g = ComplexMatrix::from_fn(d, d, |_, _| complex_gaussian(rng));
    let m = g.matmul(&g.adjoint());
    let trace = m.trace().re;
    let rho = m.scale(C64::new(1.0 / trace, 0.0));
    DensityMatrix::new(rho, dims.to_vec()).expect("Ginibre construction is a valid state")
}

/// Haar-like random pure state over the given subsystem dimensions.
pub fn haar_pure(dims: &[usize], rng: &mut impl Rng) -> PureState {
    let d: usize = dims.iter().product();
    let mut amps: Vec<C64> = (0..d).map(|_| complex_gaussian(rng)).collect();
    let norm = amps.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    for a in &mut amps {
        *a /= norm;
    }
    PureState::new(amps, dims.to_vec()).expect("normalized vector")
}

/// Random unitary from modified Gram-Schmidt on a Ginibre matrix.
pub fn random_unitary(dim: usize, rng: &mut impl Rng) -> ComplexMatrix {
    let mut cols: Vec<Vec<C64>> =
        (0..dim).map(|_| (0..dim).map(|_| complex_gaussian(rng)).collect()).collect();
    for j in 0..dim {
        for k in 0..j {
            let proj: C64 = (0..dim).map(|i| cols[k][i].conj() * cols[j][i]).sum();
            for i in 0..dim {
                let v = cols[k][i];
                cols[j][i] -= proj * v;
            }
        }
        let norm = cols[j].iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        for i in 0..dim {
            cols[j][i] /= norm;
        }
    }
    ComplexMatrix::from_fn(dim, dim, |i, j| cols[j][i])
}

/// Random incoherent channel with `n_ops` Kraus operators.
///
/// Each operator is a masked permutation: `K_j = \u{3a3}_i a_{j,i} |pi_j(i)><i|`
/// with the column amplitudes normalized across `j`. Injective targets make
/// the cross terms of `\u{3a3} K\u{2020}K` vanish identically, so the set is complete by
/// construction, and one nonzero per column makes every operator incoherent.
pub fn random_incoherent_kraus(dim: usize, n_ops: usize, rng: &mut impl Rng) -> KrausSet {
    assert!(dim >= 1 && n_ops >= 1);
    let perms: Vec<Vec<usize>> = (0..n_ops)
        .map(|_| {
            let mut p: Vec<usize> = (0..dim).collect();
            for i in (1..dim).rev() {
                let j = rng.gen_range(0..=i);
                p.swap(i, j);
            }
            p
        })
        .collect();

    let mut amps = vec![vec![C64::new(0.0, 0.0); dim]; n_ops];
    for col in 0..dim {
        for row in amps.iter_mut() {
            if rng.gen_bool(0.7) {
                row[col] = complex_gaussian(rng);
            }
        }
        let norm_sq: f64 = amps.iter().map(|row| row[col].norm_sqr()).sum();
        if norm_sq < 1e-12 {
            amps[0][col] = C64::new(1.0, 0.0);
        } else {
            let norm = norm_sq.sqrt();
            for row in amps.iter_mut() {
                row[col] /= norm;
            }
        }
    }

    let ops: Vec<ComplexMatrix> = (0..n_ops)
        .map(|j| {
            let mut k = ComplexMatrix::zeros(dim, dim);
            for (col, &target) in perms[j].iter().enumerate() {
                k.set(target, col, amps[j][col]);
            }
            k
        })
        .collect();
    KrausSet::new(ops).expect("masked permutation sets are complete")
}
