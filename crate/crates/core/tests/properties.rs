use num_complex::Complex64;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use wishart_appt::appt::{
    appt_exact_small_p, appt_necessary_all_ones, appt_p2_closed_form, appt_sufficient_norm_bound, build_theta,
    enumerate_ordering_pairs,
};
use wishart_appt::linalg::{hermitian_eigenvalues, HermitianMatrix, Spectrum};
use wishart_appt::perm::{derangement_count, Enumerator, Permutation};
use wishart_appt::random_states::{
    partial_trace, partial_transpose_matrix, sample_ginibre, sample_induced_state, DensityMatrix,
};

fn permutation(p: usize) -> impl Strategy<Value = Permutation> {
    Just((0..p).collect::<Vec<usize>>())
        .prop_shuffle()
        .prop_map(|v| Permutation::from_zero_based(v).unwrap())
}

/// Spectra `1/d + scale·(x_i − mean)`, clipped and renormalized, so that all
/// three tests fire for some draws.
fn spectrum(d: usize) -> impl Strategy<Value = Spectrum> {
    (prop::collection::vec(0.0f64..1.0, d), 0.0f64..3.0).prop_map(move |(xs, scale)| {
        let mean = xs.iter().sum::<f64>() / d as f64;
        let raw: Vec<f64> = xs
            .iter()
            .map(|x| (1.0 / d as f64 + scale / d as f64 * (x - mean)).max(0.0))
            .collect();
        let total: f64 = raw.iter().sum();
        Spectrum::new(raw.into_iter().map(|x| x / total).collect()).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn cycles_plus_length_is_size(a in (1usize..=8).prop_flat_map(permutation)) {
        prop_assert_eq!(a.cycle_count() + a.length(), a.size());
    }

    #[test]
    fn stripping_fixed_points_keeps_length_and_genus(a in (1usize..=8).prop_flat_map(permutation)) {
        let (stripped, support) = a.strip_fixed_points();
        prop_assert_eq!(stripped.size(), support.len());
        prop_assert_eq!(stripped.length(), a.length());
        if !stripped.is_empty() {
            prop_assert_eq!(stripped.genus().unwrap(), a.genus().unwrap());
        }
        prop_assert!(stripped.is_fixed_point_free());
    }

    #[test]
    fn genus_bounded_by_half_length(a in (1usize..=8).prop_flat_map(permutation)) {
        let g = a.genus().unwrap();
        prop_assert!(2 * g <= a.length());
    }

    #[test]
    fn lattice_p2(lam in spectrum(8)) {
        let exact = appt_exact_small_p(&lam, 2, 1e-12).unwrap();
        if appt_sufficient_norm_bound(&lam, 8, 2).unwrap().certified {
            prop_assert!(exact);
        }
        if appt_necessary_all_ones(&lam, 2).unwrap().is_fail() {
            prop_assert!(!exact);
        }
        prop_assert_eq!(exact, appt_p2_closed_form(&lam, 1e-12).unwrap());
    }

    #[test]
    fn lattice_p3(lam in spectrum(9)) {
        let exact = appt_exact_small_p(&lam, 3, 1e-12).unwrap();
        if appt_sufficient_norm_bound(&lam, 9, 3).unwrap().certified {
            prop_assert!(exact);
        }
        if appt_necessary_all_ones(&lam, 3).unwrap().is_fail() {
            prop_assert!(!exact);
        }
    }

    #[test]
    fn theta_off_diagonals_non_positive(lam in spectrum(9), k in 0usize..4320) {
        let pair = enumerate_ordering_pairs(3).unwrap().nth(k).unwrap();
        let theta = build_theta(&lam, &pair, 3).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                if i != j {
                    prop_assert!(theta.get(i, j).re <= 0.0);
                }
            }
            // diagonal entries are doubled members of the six smallest eigenvalues
            let half = theta.get(i, i).re / 2.0;
            prop_assert!(lam.values()[3..].contains(&half));
        }
    }

    #[test]
    fn sufficient_is_monotone(lam in spectrum(12), t in 0.0f64..1.0) {
        let d = 12.0;
        let shrunk = Spectrum::new(lam.values().iter().map(|x| (1.0 - t) * x + t / d).collect()).unwrap();
        let a = appt_sufficient_norm_bound(&lam, 12, 3).unwrap();
        let b = appt_sufficient_norm_bound(&shrunk, 12, 3).unwrap();
        prop_assert!(b.delta <= a.delta + 1e-15);
        if a.certified {
            prop_assert!(b.certified);
        }
    }

    #[test]
    fn exact_test_ignores_input_order(lam in spectrum(6), seed in any::<u64>()) {
        use rand::seq::SliceRandom;
        let mut shuffled = lam.values().to_vec();
        shuffled.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
        let again = Spectrum::new(shuffled).unwrap();
        prop_assert_eq!(
            appt_exact_small_p(&lam, 2, 1e-12).unwrap(),
            appt_exact_small_p(&again, 2, 1e-12).unwrap()
        );
    }

    #[test]
    fn partial_transpose_properties(d1 in 2usize..4, d2 in 2usize..4, s in 1usize..12, seed in any::<u64>()) {
        let rho = sample_induced_state(d1, d2, s, &mut ChaCha8Rng::seed_from_u64(seed)).unwrap();
        let t = partial_transpose_matrix(rho.matrix(), d1, d2).unwrap();
        prop_assert!((t.trace() - 1.0).abs() < 1e-13);
        prop_assert!(t.max_abs_diff(&HermitianMatrix::new(t.n(), t.as_slice().to_vec()).unwrap()) == 0.0);
        prop_assert!((hermitian_eigenvalues(&t).unwrap().sum() - 1.0).abs() < 1e-12);
        let back = partial_transpose_matrix(&t, d1, d2).unwrap();
        prop_assert!(back.max_abs_diff(rho.matrix()) < 1e-13);
    }

    #[test]
    fn partial_trace_keeps_trace(d in 1usize..5, s in 1usize..5, seed in any::<u64>()) {
        let rho = wishart_appt::random_states::sample_induced_density(d * s, 3, &mut ChaCha8Rng::seed_from_u64(seed)).unwrap();
        let reduced = partial_trace(rho.matrix(), d, s).unwrap();
        prop_assert!((reduced.trace() - 1.0).abs() < 1e-13);
    }
}

#[test]
fn moment_coefficients_cover_derangements() {
    let e = Enumerator::new(9).unwrap();
    for p in 1..=9 {
        let table = e.centered_moment_table(p).unwrap();
        assert_eq!(table.total_count(), derangement_count(p), "p = {p}");
        assert!(table.terms.iter().all(|t| t.count > 0));
    }
}

#[test]
fn mixed_theta_is_scaled_identity_for_all_pairs() {
    for (p, d) in [(2usize, 4usize), (2, 10), (3, 9)] {
        let lam = Spectrum::new(vec![1.0 / d as f64; d]).unwrap();
        let target = HermitianMatrix::identity(p).affine(2.0 / d as f64, 0.0);
        for pair in enumerate_ordering_pairs(p).unwrap() {
            assert_eq!(build_theta(&lam, &pair, p).unwrap().max_abs_diff(&target), 0.0);
        }
    }
}

/// Columns of a Ginibre matrix orthonormalized by modified Gram–Schmidt.
fn random_unitary(n: usize, rng: &mut ChaCha8Rng) -> Vec<Vec<Complex64>> {
    let g = sample_ginibre(n, n, rng).unwrap();
    let mut cols: Vec<Vec<Complex64>> = (0..n).map(|j| (0..n).map(|i| g.get(i, j)).collect()).collect();
    for j in 0..n {
        for k in 0..j {
            let dot: Complex64 = (0..n).map(|i| cols[k][i].conj() * cols[j][i]).sum();
            for i in 0..n {
                let u = cols[k][i];
                cols[j][i] -= dot * u;
            }
        }
        let norm = cols[j].iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        cols[j].iter_mut().for_each(|z| *z /= norm);
    }
    cols
}

#[test]
fn appt_spectra_give_ppt_states() {
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    let d = 8;
    let spectra = [
        vec![0.16, 0.14, 0.13, 0.125, 0.12, 0.115, 0.11, 0.1],
        vec![0.2, 0.12, 0.12, 0.12, 0.12, 0.11, 0.11, 0.1],
        // close to the boundary λ₁ = λ₇ + 2√(λ₆λ₈)
        vec![0.29, 0.1, 0.1, 0.1, 0.1, 0.1, 0.105, 0.105],
    ];
    for raw in spectra {
        let total: f64 = raw.iter().sum();
        let lam = Spectrum::new(raw.iter().map(|x| x / total).collect()).unwrap();
        assert!(appt_exact_small_p(&lam, 2, 0.0).unwrap());
        for _ in 0..20 {
            let u = random_unitary(d, &mut rng);
            let m = HermitianMatrix::from_fn(d, |i, j| {
                (0..d).map(|k| u[k][i] * lam.values()[k] * u[k][j].conj()).sum()
            })
            .unwrap();
            let rho = DensityMatrix::new(m, Some((2, 4))).unwrap();
            assert!(wishart_appt::random_states::is_ppt(&rho, 1e-12).unwrap());
        }
    }
}
