//! Seeded Monte Carlo checks against exact expectations. Each check uses a
//! fixed seed, so a pass or fail is reproducible.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use wishart_appt::asymptotics::{ks_distance, mp_edges, SpectralDensity};
use wishart_appt::experiments::{cmd_moments, mean_and_standard_error, MomentsConfig};
use wishart_appt::linalg::HermitianMatrix;
use wishart_appt::random_states::{
    sample_induced_state, sample_induced_state_by_purification, sample_wishart, RngStream,
};

fn trace_of_square(m: &HermitianMatrix) -> f64 {
    m.as_slice().iter().map(|z| z.norm_sqr()).sum()
}

fn within(label: &str, xs: &[f64], exact: f64, k: f64) {
    let (mean, se) = mean_and_standard_error(xs);
    let se = se.unwrap();
    assert!((mean - exact).abs() <= k * se, "{label}: mean {mean}, exact {exact}, se {se}");
}

#[test]
fn wishart_trace_moments() {
    let (d, s, n) = (5, 7, 4000);
    let mut first = Vec::with_capacity(n);
    let mut second = Vec::with_capacity(n);
    for t in 0..n as u64 {
        let w = sample_wishart(d, s, &mut RngStream::new(1, t).rng()).unwrap();
        first.push(w.trace());
        second.push(trace_of_square(&w));
    }
    let (d, s) = (d as f64, s as f64);
    within("E tr W", &first, d * s, 3.0);
    within("E tr W²", &second, d * s * s + d * d * s, 3.0);
}

#[test]
fn induced_state_laws_agree() {
    let (d1, d2, s, n) = (2, 3, 4, 1500);
    let d = d1 * d2;
    let mut direct = Vec::with_capacity(n);
    let mut purified = Vec::with_capacity(n);
    for t in 0..n as u64 {
        let rho = sample_induced_state(d1, d2, s, &mut RngStream::new(5, t).rng()).unwrap();
        direct.push(trace_of_square(rho.matrix()));
        let sigma = sample_induced_state_by_purification(d, s, &mut RngStream::new(6, t).rng()).unwrap();
        purified.push(trace_of_square(&sigma));
    }
    // E tr ρ² = (d + s)/(ds + 1)
    let purity = (d + s) as f64 / (d * s + 1) as f64;
    within("direct purity", &direct, purity, 3.0);
    within("purified purity", &purified, purity, 3.0);
    for k in [1, 2] {
        let a: Vec<f64> = direct.iter().map(|x| x.powi(k)).collect();
        let b: Vec<f64> = purified.iter().map(|x| x.powi(k)).collect();
        let (ma, sa) = mean_and_standard_error(&a);
        let (mb, sb) = mean_and_standard_error(&b);
        let se = (sa.unwrap().powi(2) + sb.unwrap().powi(2)).sqrt();
        assert!((ma - mb).abs() <= 3.0 * se, "moment {k}: {ma} vs {mb}");
    }
}

#[test]
fn centered_moments_match_formula() {
    let config = MomentsConfig::new(8, 20, vec![2, 3, 4, 5, 6], 3000, 42);
    let report = cmd_moments(&config).unwrap();
    for a in &report.aggregates {
        assert!(a.z_score.unwrap().abs() <= 3.0, "{a:?}");
    }
}

#[test]
fn wishart_spectrum_follows_marchenko_pastur() {
    let (d, s) = (400, 1600);
    let w = sample_wishart(d, s, &mut ChaCha8Rng::seed_from_u64(9)).unwrap();
    let scaled: Vec<f64> = w.eigenvalues().unwrap().values().iter().map(|x| x / d as f64).collect();
    let law = SpectralDensity::marchenko_pastur(s as f64 / d as f64).unwrap();
    let ks = ks_distance(&scaled, &law);
    assert!(ks < 0.05, "KS = {ks}");
}

#[test]
fn wishart_edges_approach_limits() {
    let d = 2 * 150;
    for c in [8usize, 20] {
        let w = sample_wishart(d, c * d, &mut ChaCha8Rng::seed_from_u64(c as u64)).unwrap();
        let ev = w.eigenvalues().unwrap();
        let (a, b) = mp_edges(c as f64).unwrap();
        let lo = ev.smallest() / d as f64;
        let hi = ev.largest() / d as f64;
        assert!((lo / a - 1.0).abs() < 0.05, "c = {c}: λ_min/d = {lo}, a_c = {a}");
        assert!((hi / b - 1.0).abs() < 0.05, "c = {c}: λ_max/d = {hi}, b_c = {b}");
    }
}
