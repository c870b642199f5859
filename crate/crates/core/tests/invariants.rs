//! Property tests for the structural invariants of the linear-algebra and
//! state layers.

use cohlab::{
    eig_hermitian, nonlocality, partial_trace, sampling, singular_values, tensor, ComplexMatrix,
    DensityMatrix, C64,
};
use proptest::prelude::*;

fn small_matrix(max_dim: usize) -> impl Strategy<Value = ComplexMatrix> {
    (1..=max_dim, 1..=max_dim).prop_flat_map(|(r, c)| {
        proptest::collection::vec((-1.0f64..1.0, -1.0f64..1.0), r * c).prop_map(move |entries| {
            ComplexMatrix::new(r, c, entries.into_iter().map(|(re, im)| C64::new(re, im)).collect())
                .expect("entries are finite")
        })
    })
}

fn square_matrix(max_dim: usize) -> impl Strategy<Value = ComplexMatrix> {
    (1..=max_dim).prop_flat_map(|n| {
        proptest::collection::vec((-1.0f64..1.0, -1.0f64..1.0), n * n).prop_map(move |entries| {
            ComplexMatrix::new(n, n, entries.into_iter().map(|(re, im)| C64::new(re, im)).collect())
                .expect("entries are finite")
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn tensor_is_associative(
        a in small_matrix(3),
        b in small_matrix(3),
        c in small_matrix(3),
    ) {
        let left = tensor(&tensor(&a, &b), &c);
        let right = tensor(&a, &tensor(&b, &c));
        prop_assert!(left.max_abs_diff(&right) <= 1e-12);
    }

    #[test]
    fn tensor_satisfies_the_mixed_product_rule(
        a in square_matrix(3),
        b in square_matrix(3),
        c in square_matrix(3),
        d in square_matrix(3),
    ) {
        // (A x B)(C x D) = AC x BD whenever the shapes line up
        prop_assume!(a.cols() == c.rows() && b.cols() == d.rows());
        let lhs = tensor(&a, &b).matmul(&tensor(&c, &d));
        let rhs = tensor(&a.matmul(&c), &b.matmul(&d));
        prop_assert!(lhs.max_abs_diff(&rhs) <= 1e-12);
    }

    #[test]
    fn singular_values_square_to_gram_eigenvalues(m in small_matrix(4)) {
        let sv = singular_values(&m);
        let gram = m.adjoint().matmul(&m);
        let eigs = eig_hermitian(&gram).unwrap();
        let k = m.rows().min(m.cols());
        prop_assert_eq!(sv.len(), k);
        for (s, e) in sv.iter().zip(eigs.iter().take(k)) {
            prop_assert!((s - e.max(0.0).sqrt()).abs() <= 1e-9, "{} vs {}", s, e);
        }
    }

    #[test]
    fn partial_trace_preserves_the_trace(seed in any::<u64>(), keep_first in any::<bool>()) {
        let mut rng = sampling::rng_from_seed(seed);
        let rho = sampling::ginibre_density(&[2, 3], &mut rng);
        let keep: &[usize] = if keep_first { &[0] } else { &[1] };
        let reduced = partial_trace(&rho, keep).unwrap();
        prop_assert!((reduced.matrix().trace().re - 1.0).abs() <= 1e-12);
        prop_assert!(reduced.matrix().hermiticity_deviation() <= 1e-12);
    }

    #[test]
    fn spectra_are_invariant_under_conjugation(seed in any::<u64>()) {
        let mut rng = sampling::rng_from_seed(seed);
        let rho = sampling::ginibre_density(&[3], &mut rng);
        let u = sampling::random_unitary(3, &mut rng);
        let conjugated = u.matmul(rho.matrix()).matmul(&u.adjoint());
        let before = eig_hermitian(rho.matrix()).unwrap();
        let after = eig_hermitian(&conjugated).unwrap();
        for (x, y) in before.iter().zip(&after) {
            prop_assert!((x - y).abs() <= 1e-9);
        }
    }

    #[test]
    fn correlation_gram_eigenvalues_stay_in_unit_range(seed in any::<u64>()) {
        // eigenvalues of T'T for a two-qubit state live in [0, 1]
        let mut rng = sampling::rng_from_seed(seed);
        let rho = sampling::ginibre_density(&[2, 2], &mut rng);
        let t = nonlocality::correlation_matrix(&rho).unwrap();
        let eigs = eig_hermitian(&t.gram()).unwrap();
        for l in eigs {
            prop_assert!((-1e-9..=1.0 + 1e-9).contains(&l), "eigenvalue {}", l);
        }
    }

    #[test]
    fn matrix_json_round_trips_exactly(m in small_matrix(4)) {
        let json = serde_json::to_string(&m).unwrap();
        let back: ComplexMatrix = serde_json::from_str(&json).unwrap();
        prop_assert_eq!(m, back);
    }

    #[test]
    fn density_json_round_trips_exactly(seed in any::<u64>()) {
        let mut rng = sampling::rng_from_seed(seed);
        let rho = sampling::ginibre_density(&[2, 2], &mut rng);
        let json = serde_json::to_string(&rho).unwrap();
        let back: DensityMatrix = serde_json::from_str(&json).unwrap();
        prop_assert_eq!(rho, back);
    }

    #[test]
    fn chsh_values_respect_the_horodecki_envelope(seed in any::<u64>()) {
        let mut rng = sampling::rng_from_seed(seed);
        let rho = sampling::ginibre_density(&[2, 2], &mut rng);
        let bound = nonlocality::chsh_max(&rho).unwrap();
        use rand::Rng;
        for _ in 0..10 {
            let s = |rng: &mut rand_chacha::ChaCha8Rng| {
                nonlocality::MeasurementSetting::from_angles(
                    rng.gen_range(0.0..std::f64::consts::PI),
                    rng.gen_range(0.0..2.0 * std::f64::consts::PI),
                )
            };
            let (a1, a2, b1, b2) = (s(&mut rng), s(&mut rng), s(&mut rng), s(&mut rng));
            let v = nonlocality::chsh_value(&rho, &a1, &a2, &b1, &b2).unwrap();
            prop_assert!(v.abs() <= bound + 1e-9);
        }
    }
}
