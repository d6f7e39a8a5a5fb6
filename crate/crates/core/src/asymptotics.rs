//! Limiting spectral densities and the constants derived from them.
//!
//! The semicircle law `w(x) = √(4−x²)/(2π)` is the limit of the centered
//! Wishart spectrum when `d, s → ∞` with `d/s → 0`; the Marchenko–Pastur law
//! `π_c` (mean `c`) is the limit of `W/d` when `s/d → c`.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Target absolute error for the adaptive quadrature.
pub const QUADRATURE_TOL: f64 = 1e-12;

/// Absolute tolerance on the quantile bisection.
pub const QUANTILE_TOL: f64 = 1e-12;

const MAX_DEPTH: u32 = 48;

/// Adaptive Simpson quadrature of `f` on `[a, b]`.
pub fn adaptive_simpson<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64) -> f64 {
    if a == b {
        return 0.0;
    }
    let m = 0.5 * (a + b);
    let (fa, fm, fb) = (f(a), f(m), f(b));
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    simpson_step(&f, a, b, fa, fm, fb, whole, tol, MAX_DEPTH)
}

#[allow(clippy::too_many_arguments)]
fn simpson_step<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: u32,
) -> f64 {
    let m = 0.5 * (a + b);
    let (lm, rm) = (0.5 * (a + m), 0.5 * (m + b));
    let (flm, frm) = (f(lm), f(rm));
    let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    let delta = left + right - whole;
    if depth == 0 || delta.abs() <= 15.0 * tol {
        return left + right + delta / 15.0;
    }
    simpson_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)
        + simpson_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SpectralDensity {
    Semicircle,
    MarchenkoPastur { c: f64 },
}

impl SpectralDensity {
    pub fn semicircle() -> Self {
        Self::Semicircle
    }

    pub fn marchenko_pastur(c: f64) -> Result<Self> {
        check_ratio(c)?;
        Ok(Self::MarchenkoPastur { c })
    }

    /// Endpoints of the absolutely continuous part.
    pub fn support(&self) -> (f64, f64) {
        match *self {
            Self::Semicircle => (-2.0, 2.0),
            Self::MarchenkoPastur { c } => {
                let r = c.sqrt();
                ((r - 1.0).powi(2), (r + 1.0).powi(2))
            }
        }
    }

    /// Mass of the point mass at 0.
    pub fn atom(&self) -> f64 {
        match *self {
            Self::Semicircle => 0.0,
            Self::MarchenkoPastur { c } => (1.0 - c).max(0.0),
        }
    }

    /// Density of the continuous part.
    pub fn density(&self, x: f64) -> f64 {
        match *self {
            Self::Semicircle => semicircle_density(x),
            Self::MarchenkoPastur { c } => mp_density_unchecked(x, c),
        }
    }

    /// `∫_lo^hi g(x) ρ(x) dx` over the continuous part, via `x = m + r sin θ`
    /// so the integrand stays smooth at the square-root edges.
    pub fn integrate<G: Fn(f64) -> f64>(&self, g: G, lo: f64, hi: f64) -> f64 {
        let (a, b) = self.support();
        let (lo, hi) = (lo.max(a), hi.min(b));
        if lo >= hi {
            return 0.0;
        }
        let (m, r) = (0.5 * (a + b), 0.5 * (b - a));
        let theta = |x: f64| ((x - m) / r).clamp(-1.0, 1.0).asin();
        let kind = *self;
        let integrand = move |t: f64| {
            let x = m + r * t.sin();
            let cos2 = t.cos().powi(2);
            // ρ(x) dx with √((x−a)(b−x)) = r cos θ and dx = r cos θ dθ
            let weight = match kind {
                Self::Semicircle => r * r * cos2 / (2.0 * PI),
                // c = 1: x = r(1 + sin θ), so cos²θ/x = (1 − sin θ)/r
                Self::MarchenkoPastur { .. } if a == 0.0 => r * (1.0 - t.sin()) / (2.0 * PI),
                Self::MarchenkoPastur { .. } => r * r * cos2 / (2.0 * PI * x),
            };
            g(x) * weight
        };
        adaptive_simpson(integrand, theta(lo), theta(hi), QUADRATURE_TOL)
    }

    /// Total mass, continuous part plus atom, by quadrature.
    pub fn total_mass(&self) -> f64 {
        let (a, b) = self.support();
        self.atom() + self.integrate(|_| 1.0, a, b)
    }

    /// Distribution function, including the atom.
    pub fn cdf(&self, x: f64) -> f64 {
        let (a, _) = self.support();
        let atom = if x >= 0.0 { self.atom() } else { 0.0 };
        (atom + self.integrate(|_| 1.0, a, x)).min(1.0)
    }
}

fn check_ratio(c: f64) -> Result<()> {
    if !(c > 0.0) || !c.is_finite() {
        return Err(Error::InvalidArgument(format!("ratio c must be positive, got {c}")));
    }
    Ok(())
}

/// `w(x) = √(4 − x²)/(2π)` on `[−2, 2]`, zero outside.
pub fn semicircle_density(x: f64) -> f64 {
    if x.abs() >= 2.0 {
        0.0
    } else {
        ((2.0 - x) * (2.0 + x)).sqrt() / (2.0 * PI)
    }
}

/// Continuous part of the Marchenko–Pastur law `π_c`; see
/// [`SpectralDensity::atom`] for the mass at 0 when `c < 1`.
pub fn mp_density(x: f64, c: f64) -> Result<f64> {
    check_ratio(c)?;
    Ok(mp_density_unchecked(x, c))
}

fn mp_density_unchecked(x: f64, c: f64) -> f64 {
    let r = c.sqrt();
    let (a, b) = ((r - 1.0).powi(2), (r + 1.0).powi(2));
    if x <= a || x >= b || x <= 0.0 {
        return 0.0;
    }
    ((x - a) * (b - x)).sqrt() / (2.0 * PI * x)
}

/// Limits `(a_c, b_c)` of the smallest and largest eigenvalue of `W/d`.
/// `a_c` is 0 when `c ≤ 1`.
pub fn mp_edges(c: f64) -> Result<(f64, f64)> {
    check_ratio(c)?;
    let r = c.sqrt();
    let a = if c > 1.0 { (r - 1.0).powi(2) } else { 0.0 };
    Ok((a, (r + 1.0).powi(2)))
}

/// Semicircle mass of `[c, 2]`: `(φ − sin φ cos φ)/π` with `φ = acos(c/2)`.
pub fn semicircle_tail(c: f64) -> f64 {
    let phi = (c / 2.0).clamp(-1.0, 1.0).acos();
    (phi - 0.5 * (2.0 * phi).sin()) / PI
}

/// `∫_a^b x w(x) dx` from the antiderivative `−(4 − x²)^{3/2}/(6π)`.
pub fn semicircle_first_moment(a: f64, b: f64) -> f64 {
    let anti = |x: f64| {
        let x = x.clamp(-2.0, 2.0);
        -((2.0 - x) * (2.0 + x)).powf(1.5) / (6.0 * PI)
    };
    anti(b) - anti(a)
}

fn check_tau(tau: f64) -> Result<()> {
    if !(tau > 0.0 && tau <= 1.0) {
        return Err(Error::InvalidArgument(format!("τ must lie in (0, 1], got {tau}")));
    }
    Ok(())
}

/// The point `c_{τ/2} ∈ [0, 2]` with `∫_{c}^{2} w = τ/2`.
pub fn semicircle_quantile_c(tau: f64) -> Result<f64> {
    check_tau(tau)?;
    let target = 0.5 * tau;
    let (mut lo, mut hi) = (0.0_f64, 2.0_f64);
    while hi - lo > QUANTILE_TOL {
        let mid = 0.5 * (lo + hi);
        if semicircle_tail(mid) > target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// `C_τ = (∫_{c_{τ/2}}^2 x w(x) dx / τ)²`, closed form.
pub fn c_tau(tau: f64) -> Result<f64> {
    let c = semicircle_quantile_c(tau)?;
    Ok((semicircle_first_moment(c, 2.0) / tau).powi(2))
}

/// [`c_tau`] with the first moment computed by quadrature.
pub fn c_tau_quadrature(tau: f64) -> Result<f64> {
    let c = semicircle_quantile_c(tau)?;
    let m = SpectralDensity::Semicircle.integrate(|x| x, c, 2.0);
    Ok((m / tau).powi(2))
}

/// `(p + √(p² − 1))²`, the critical `s/d` ratio for a bounded factor of size `p`.
pub fn threshold_p_fixed(p: usize) -> Result<f64> {
    if p < 2 {
        return Err(Error::InvalidArgument(format!("p must be ≥ 2, got {p}")));
    }
    let p = p as f64;
    Ok((p + (p * p - 1.0).sqrt()).powi(2))
}

/// `Λ_c = (a_c + b_c) Id + (a_c − b_c) J` on `d₁` points, `J` the all-ones matrix.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LimitMatrix {
    pub c: f64,
    pub d1: usize,
    /// Row-major `d₁ × d₁` entries.
    pub matrix: Vec<f64>,
    /// `(a+b) + d₁(a−b)`, multiplicity one, along the all-ones vector.
    pub principal_eigenvalue: f64,
    /// `a + b`, multiplicity `d₁ − 1`.
    pub bulk_eigenvalue: f64,
}

impl LimitMatrix {
    pub fn smallest_eigenvalue(&self) -> f64 {
        self.principal_eigenvalue.min(self.bulk_eigenvalue)
    }

    pub fn is_psd(&self) -> bool {
        self.smallest_eigenvalue() >= 0.0
    }
}

pub fn lambda_c_limit_matrix(c: f64, d1: usize) -> Result<LimitMatrix> {
    check_ratio(c)?;
    if d1 < 2 {
        return Err(Error::InvalidArgument(format!("d₁ must be ≥ 2, got {d1}")));
    }
    // a_c uses the unclamped (√c − 1)² here; the limit argument has c > 1
    let r = c.sqrt();
    let (a, b) = ((r - 1.0).powi(2), (r + 1.0).powi(2));
    let matrix = (0..d1 * d1)
        .map(|k| if k / d1 == k % d1 { 2.0 * a } else { a - b })
        .collect();
    Ok(LimitMatrix {
        c,
        d1,
        matrix,
        // a + b = 2(c + 1) and a − b = −4√c, written without cancellation
        principal_eigenvalue: 2.0 * (c + 1.0) - 4.0 * d1 as f64 * r,
        bulk_eigenvalue: 2.0 * (c + 1.0),
    })
}

/// Scale `s₀ = p² d` of the APPT threshold, `p = min(d₁, d₂)`, `d = d₁ d₂`,
/// with the constants bracketing it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ThresholdScale {
    pub d1: usize,
    pub d2: usize,
    pub s0: f64,
    /// `p²/d`, at most 1.
    pub tau: f64,
    /// `4 C_τ`.
    pub lower_constant: f64,
    pub upper_constant: f64,
}

pub fn threshold_scale_s0(d1: usize, d2: usize) -> Result<ThresholdScale> {
    if d1 < 2 || d2 < 2 {
        return Err(Error::InvalidArgument(format!(
            "both factors must be ≥ 2, got ({d1}, {d2})"
        )));
    }
    let p = d1.min(d2) as f64;
    let d = (d1 * d2) as f64;
    let tau = (p * p / d).min(1.0);
    Ok(ThresholdScale {
        d1,
        d2,
        s0: p * p * d,
        tau,
        lower_constant: 4.0 * c_tau(tau)?,
        upper_constant: 4.0,
    })
}

/// Kolmogorov–Smirnov distance between a sample and a law.
pub fn ks_distance(sample: &[f64], law: &SpectralDensity) -> f64 {
    let mut xs: Vec<f64> = sample.to_vec();
    xs.sort_by(f64::total_cmp);
    let n = xs.len() as f64;
    xs.iter()
        .enumerate()
        .map(|(i, &x)| {
            let f = law.cdf(x);
            (f - i as f64 / n).abs().max((f - (i + 1) as f64 / n).abs())
        })
        .fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn semicircle_examples() {
        assert!((semicircle_density(0.0) - 1.0 / PI).abs() < 1e-16);
        assert_eq!(semicircle_density(2.0), 0.0);
        assert_eq!(semicircle_density(-2.0), 0.0);
        assert_eq!(semicircle_density(3.0), 0.0);
        assert!((SpectralDensity::Semicircle.total_mass() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn mp_examples() {
        let mp = SpectralDensity::marchenko_pastur(1.0).unwrap();
        assert_eq!(mp.support(), (0.0, 4.0));
        assert_eq!(mp.atom(), 0.0);
        assert_eq!(SpectralDensity::marchenko_pastur(0.5).unwrap().atom(), 0.5);
        for c in [0.5, 1.0, 4.0] {
            let m = SpectralDensity::marchenko_pastur(c).unwrap().total_mass();
            assert!((m - 1.0).abs() < 1e-8, "c = {c}: {m}");
        }
        assert!(mp_density(1.0, -1.0).is_err());
        assert_eq!(mp_density(10.0, 1.0).unwrap(), 0.0);
    }

    #[test]
    fn mp_mean_is_ratio() {
        for c in [0.5, 1.0, 4.0] {
            let mp = SpectralDensity::marchenko_pastur(c).unwrap();
            let (a, b) = mp.support();
            let m = mp.integrate(|x| x, a, b);
            assert!((m - c).abs() < 1e-9, "c = {c}: {m}");
        }
    }

    #[test]
    fn edges() {
        assert_eq!(mp_edges(1.0).unwrap(), (0.0, 4.0));
        assert_eq!(mp_edges(4.0).unwrap(), (1.0, 9.0));
        assert_eq!(mp_edges(0.25).unwrap(), (0.0, 2.25));
    }

    #[test]
    fn tail_matches_quadrature() {
        for c in [-1.5, 0.0, 0.7, 1.9] {
            let q = SpectralDensity::Semicircle.integrate(|_| 1.0, c, 2.0);
            assert!((q - semicircle_tail(c)).abs() < 1e-11);
        }
        assert!((semicircle_tail(0.0) - 0.5).abs() < 1e-16);
    }

    #[test]
    fn quantile_examples() {
        assert!(semicircle_quantile_c(1.0).unwrap() < 1e-11);
        assert!(semicircle_quantile_c(1e-12).unwrap() > 1.999);
        assert!(semicircle_quantile_c(0.0).is_err());
        assert!(semicircle_quantile_c(1.5).is_err());
        let mut prev = 2.0;
        for k in 1..=20 {
            let c = semicircle_quantile_c(k as f64 / 20.0).unwrap();
            assert!(c < prev);
            prev = c;
        }
    }

    #[test]
    fn c_tau_examples() {
        assert!((c_tau(1.0).unwrap() - 16.0 / (9.0 * PI * PI)).abs() < 1e-12);
        assert!((c_tau(1e-4).unwrap() - 1.0).abs() < 1e-2);
        // C₀ = 1 > C₁, so the map decreases
        assert!(c_tau(0.25).unwrap() > c_tau(0.5).unwrap());
        assert!(c_tau(0.5).unwrap() > c_tau(1.0).unwrap());
        for tau in [0.01, 0.3, 0.5, 1.0] {
            assert!((c_tau(tau).unwrap() - c_tau_quadrature(tau).unwrap()).abs() < 1e-10);
        }
    }

    #[test]
    fn threshold_examples() {
        assert!((threshold_p_fixed(2).unwrap() - (7.0 + 4.0 * 3f64.sqrt())).abs() < 1e-12);
        assert!((threshold_p_fixed(3).unwrap() - 33.970_562_748_477_14).abs() < 1e-9);
        let r = threshold_p_fixed(50).unwrap() / (4.0 * 2500.0);
        assert!((r - 1.0).abs() < 0.02);
        assert!(threshold_p_fixed(1).is_err());
    }

    #[test]
    fn limit_matrix_examples() {
        let m = lambda_c_limit_matrix(4.0, 2).unwrap();
        assert_eq!((m.principal_eigenvalue, m.bulk_eigenvalue), (-6.0, 10.0));
        assert!(!m.is_psd());
        assert_eq!(m.matrix, vec![2.0, -8.0, -8.0, 2.0]);
        let t = threshold_p_fixed(2).unwrap();
        assert!(lambda_c_limit_matrix(t, 2).unwrap().smallest_eigenvalue().abs() < 1e-9);
        assert!(lambda_c_limit_matrix(20.0, 2).unwrap().is_psd());
    }

    #[test]
    fn s0_examples() {
        assert_eq!(threshold_scale_s0(2, 2).unwrap().s0, 16.0);
        assert_eq!(threshold_scale_s0(3, 27).unwrap().s0, 729.0);
        let s = threshold_scale_s0(2, 10_000).unwrap();
        assert!((s.lower_constant - 4.0).abs() < 0.05);
        assert_eq!(s.upper_constant, 4.0);
        assert!(threshold_scale_s0(1, 5).is_err());
    }

    #[test]
    fn ks_against_own_quantiles() {
        let law = SpectralDensity::Semicircle;
        // midpoints of equal-mass cells
        let n = 200;
        let sample: Vec<f64> = (0..n)
            .map(|i| {
                let target = 1.0 - (i as f64 + 0.5) / n as f64;
                let (mut lo, mut hi) = (-2.0, 2.0);
                for _ in 0..60 {
                    let mid = 0.5 * (lo + hi);
                    if semicircle_tail(mid) > target {
                        lo = mid;
                    } else {
                        hi = mid;
                    }
                }
                lo
            })
            .collect();
        assert!(ks_distance(&sample, &law) <= 0.5 / n as f64 + 1e-9);
    }
}
