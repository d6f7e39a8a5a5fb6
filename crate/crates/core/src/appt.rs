//! Absolute PPT tests built on the Λ/Θ matrices of a sorted spectrum.
//!
//! For `p = min(d₁, d₂)`, an ordering pair `(σ₊, σ₋)` numbers the upper
//! triangle `S₊ = {(k,l): k ≤ l}` and the strict upper triangle
//! `S₋ = {(k,l): k < l}` of a `p × p` matrix. With `λ₁ ≥ … ≥ λ_d`,
//!
//! ```text
//! Λ_kl = λ_{d+1−σ₊(k,l)}   (k ≤ l)
//! Λ_kl = −λ_{σ₋(l,k)}      (k > l)
//! Θ    = Λ + Λᵀ
//! ```
//!
//! A state is APPT iff every Θ is positive semidefinite. Three tests are
//! provided: exhaustive over all pairs (`p ≤ 3`), a necessary all-ones
//! quadratic form, and a sufficient entrywise norm bound.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{hermitian_eigenvalues, HermitianMatrix, Spectrum};
use crate::perm::Permutation;

/// Spectrum entries down to `−SPECTRUM_TOL` are clipped to zero; the trace
/// must be within `SPECTRUM_TOL` of 1.
pub const SPECTRUM_TOL: f64 = 1e-10;

/// Largest `p` for which [`enumerate_ordering_pairs`] is allowed.
pub const EXHAUSTIVE_P_MAX: usize = 3;

fn p_plus(p: usize) -> usize {
    p * (p + 1) / 2
}

fn p_minus(p: usize) -> usize {
    p * p.saturating_sub(1) / 2
}

/// Position of `(k, l)`, `k ≤ l`, 0-based, in the row-major listing of `S₊`.
fn plus_slot(p: usize, k: usize, l: usize) -> usize {
    debug_assert!(k <= l && l < p);
    k * p - k * (k.saturating_sub(1)) / 2 + (l - k)
}

/// Position of `(k, l)`, `k < l`, 0-based, in the row-major listing of `S₋`.
fn minus_slot(p: usize, k: usize, l: usize) -> usize {
    debug_assert!(k < l && l < p);
    plus_slot(p, k, l) - (k + 1)
}

/// A pair of bijections `σ₊: S₊ → {1..p₊}`, `σ₋: S₋ → {1..p₋}`.
///
/// Stored as rank vectors indexed by the row-major listing of each set.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct OrderingPair {
    p: usize,
    sigma_plus: Vec<usize>,
    sigma_minus: Vec<usize>,
}

impl OrderingPair {
    /// `sigma_plus[m]` is the 1-based rank of the `m`-th element of `S₊` in
    /// row-major order `(1,1), (1,2), …, (1,p), (2,2), …`; likewise for
    /// `sigma_minus` over `S₋`.
    pub fn new(p: usize, sigma_plus: Vec<usize>, sigma_minus: Vec<usize>) -> Result<Self> {
        if p == 0 {
            return Err(Error::InvalidArgument("ordering pairs need p ≥ 1".into()));
        }
        check_ranks("σ₊", &sigma_plus, p_plus(p))?;
        check_ranks("σ₋", &sigma_minus, p_minus(p))?;
        Ok(Self {
            p,
            sigma_plus,
            sigma_minus,
        })
    }

    /// Both orderings equal to the row-major listing.
    pub fn row_major(p: usize) -> Self {
        Self {
            p,
            sigma_plus: (1..=p_plus(p)).collect(),
            sigma_minus: (1..=p_minus(p)).collect(),
        }
    }

    pub fn p(&self) -> usize {
        self.p
    }

    /// `σ₊(k, l)` for 1-based `k ≤ l`.
    pub fn plus(&self, k: usize, l: usize) -> usize {
        self.sigma_plus[plus_slot(self.p, k - 1, l - 1)]
    }

    /// `σ₋(k, l)` for 1-based `k < l`.
    pub fn minus(&self, k: usize, l: usize) -> usize {
        self.sigma_minus[minus_slot(self.p, k - 1, l - 1)]
    }

    pub fn sigma_plus(&self) -> &[usize] {
        &self.sigma_plus
    }

    pub fn sigma_minus(&self) -> &[usize] {
        &self.sigma_minus
    }
}

fn check_ranks(name: &str, ranks: &[usize], len: usize) -> Result<()> {
    if ranks.len() != len {
        return Err(Error::InvalidArgument(format!(
            "{name} has {} entries, expected {len}",
            ranks.len()
        )));
    }
    Permutation::from_one_based(ranks)
        .map(|_| ())
        .map_err(|e| Error::InvalidArgument(format!("{name} is not a bijection: {e}")))
}

/// A dense real `p × p` matrix, row-major.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RealMatrix {
    pub n: usize,
    pub data: Vec<f64>,
}

impl RealMatrix {
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    pub fn transpose(&self) -> Self {
        let n = self.n;
        Self {
            n,
            data: (0..n * n).map(|k| self.data[(k % n) * n + k / n]).collect(),
        }
    }

    /// `xᵀ A x`.
    pub fn quadratic_form(&self, x: &[f64]) -> f64 {
        let n = self.n;
        (0..n)
            .map(|i| x[i] * (0..n).map(|j| self.data[i * n + j] * x[j]).sum::<f64>())
            .sum()
    }
}

fn check_dims(spectrum: &Spectrum, pair: &OrderingPair, p: usize) -> Result<()> {
    if pair.p != p {
        return Err(Error::DimensionMismatch(format!(
            "ordering pair is for p = {}, requested p = {p}",
            pair.p
        )));
    }
    if spectrum.len() < p_plus(p) {
        return Err(Error::DimensionMismatch(format!(
            "Λ needs d ≥ p(p+1)/2 = {} eigenvalues, got {}",
            p_plus(p),
            spectrum.len()
        )));
    }
    Ok(())
}

/// `Λ(λ; σ₊, σ₋)`.
pub fn build_lambda(spectrum: &Spectrum, pair: &OrderingPair, p: usize) -> Result<RealMatrix> {
    check_dims(spectrum, pair, p)?;
    let lam = spectrum.values();
    let d = lam.len();
    let mut data = vec![0.0; p * p];
    for k in 0..p {
        for l in 0..p {
            data[k * p + l] = if k <= l {
                // λ_{d+1−σ₊}, 1-based
                lam[d - pair.sigma_plus[plus_slot(p, k, l)]]
            } else {
                -lam[pair.sigma_minus[minus_slot(p, l, k)] - 1]
            };
        }
    }
    Ok(RealMatrix { n: p, data })
}

/// `Θ = Λ + Λᵀ`, real symmetric with non-positive off-diagonal entries.
pub fn build_theta(spectrum: &Spectrum, pair: &OrderingPair, p: usize) -> Result<HermitianMatrix> {
    let data = theta_entries(spectrum, pair, p)?;
    HermitianMatrix::from_real_symmetric(p, &data)
}

fn theta_entries(spectrum: &Spectrum, pair: &OrderingPair, p: usize) -> Result<Vec<f64>> {
    let lambda = build_lambda(spectrum, pair, p)?;
    let mut data = vec![0.0; p * p];
    for k in 0..p {
        for l in 0..p {
            data[k * p + l] = lambda.get(k, l) + lambda.get(l, k);
        }
    }
    Ok(data)
}

/// Every ordering pair for `p ≤ 3`, each exactly once (`p₊!·p₋!` of them).
pub fn enumerate_ordering_pairs(p: usize) -> Result<impl Iterator<Item = OrderingPair>> {
    if p == 0 {
        return Err(Error::InvalidArgument("ordering pairs need p ≥ 1".into()));
    }
    if p > EXHAUSTIVE_P_MAX {
        let (a, b) = (p_plus(p), p_minus(p));
        return Err(Error::CombinatorialExplosion {
            p,
            pairs: format!("{a}!·{b}!"),
        });
    }
    let minus: Vec<Vec<usize>> = crate::perm::lexicographic_ranks(p_minus(p)).collect();
    Ok(crate::perm::lexicographic_ranks(p_plus(p)).flat_map(move |plus| {
        minus.clone().into_iter().map(move |m| OrderingPair {
            p,
            sigma_plus: plus.clone(),
            sigma_minus: m,
        })
    }))
}

/// Result of the exhaustive test.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExactOutcome {
    pub appt: bool,
    /// Smallest eigenvalue over all Θ.
    pub min_eigenvalue: f64,
    /// A pair attaining `min_eigenvalue`.
    pub witness: OrderingPair,
    /// Number of distinct Θ (up to simultaneous row/column permutation) checked.
    pub distinct_thetas: usize,
}

/// Θ entries canonicalised under simultaneous permutation of rows and
/// columns, which preserves the spectrum.
fn canonical_key(data: &[f64], p: usize) -> Vec<u64> {
    let mut best: Option<Vec<u64>> = None;
    for perm in crate::perm::lexicographic_ranks(p) {
        let key: Vec<u64> = (0..p * p)
            .map(|k| data[(perm[k / p] - 1) * p + perm[k % p] - 1].to_bits())
            .collect();
        if best.as_ref().is_none_or(|b| key < *b) {
            best = Some(key);
        }
    }
    best.unwrap_or_default()
}

/// Exhaustive test: every Θ over every ordering pair is PSD within `tol`.
pub fn appt_exact_small_p(spectrum: &Spectrum, p: usize, tol: f64) -> Result<bool> {
    Ok(appt_exact_detail(spectrum, p, tol)?.appt)
}

/// [`appt_exact_small_p`] with the minimizing pair and eigenvalue.
pub fn appt_exact_detail(spectrum: &Spectrum, p: usize, tol: f64) -> Result<ExactOutcome> {
    if !(tol >= 0.0) {
        return Err(Error::InvalidArgument(format!("tolerance must be ≥ 0, got {tol}")));
    }
    let pairs = enumerate_ordering_pairs(p)?;
    check_dims(spectrum, &OrderingPair::row_major(p), p)?;
    let mut seen: HashSet<Vec<u64>> = HashSet::new();
    let mut best: Option<(f64, OrderingPair)> = None;
    for pair in pairs {
        let data = theta_entries(spectrum, &pair, p)?;
        if !seen.insert(canonical_key(&data, p)) {
            continue;
        }
        let theta = HermitianMatrix::from_real_symmetric(p, &data)?;
        let min = hermitian_eigenvalues(&theta)?.smallest();
        if best.as_ref().is_none_or(|(m, _)| min < *m) {
            best = Some((min, pair));
        }
    }
    let (min_eigenvalue, witness) = best.expect("at least one ordering pair");
    Ok(ExactOutcome {
        appt: min_eigenvalue >= -tol,
        min_eigenvalue,
        witness,
        distinct_thetas: seen.len(),
    })
}

/// Closed-form APPT test for `p = 2`: `λ₁ ≤ λ_{d−1} + 2√(λ_{d−2} λ_d)`.
///
/// This is a single Θ condition, so it can accept spectra that the
/// exhaustive test rejects.
pub fn appt_p2_closed_form(spectrum: &Spectrum, tol: f64) -> Result<bool> {
    let lam = spectrum.values();
    let d = lam.len();
    if d < 3 {
        return Err(Error::DimensionMismatch(format!("p = 2 test needs d ≥ 3, got {d}")));
    }
    let rhs = lam[d - 2] + 2.0 * (lam[d - 3].max(0.0) * lam[d - 1].max(0.0)).sqrt();
    Ok(lam[0] <= rhs + tol)
}

/// Outcome of the all-ones quadratic form test.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "outcome", content = "value", rename_all = "snake_case")]
pub enum NecessaryOutcome {
    /// `xᵀΛx ≥ 0`: inconclusive.
    Pass(f64),
    /// `xᵀΛx < 0`: not APPT.
    Fail(f64),
}

impl NecessaryOutcome {
    pub fn value(&self) -> f64 {
        match *self {
            Self::Pass(v) | Self::Fail(v) => v,
        }
    }

    pub fn is_fail(&self) -> bool {
        matches!(self, Self::Fail(_))
    }
}

/// `xᵀΛx = Σ_{i≤p₊} λ_{d+1−i} − Σ_{i≤p₋} λ_i` for the all-ones `x`.
///
/// The value is the same for every ordering pair: `x` sums all entries of Λ,
/// whose upper and lower parts are fixed multisets of eigenvalues.
pub fn appt_necessary_all_ones(spectrum: &Spectrum, p: usize) -> Result<NecessaryOutcome> {
    if p == 0 {
        return Err(Error::InvalidArgument("p must be ≥ 1".into()));
    }
    check_dims(spectrum, &OrderingPair::row_major(p), p)?;
    let lam = spectrum.values();
    let d = lam.len();
    let small = crate::summation::compensated_sum(lam[d - p_plus(p)..].iter().copied());
    let large = crate::summation::compensated_sum(lam[..p_minus(p)].iter().copied());
    let value = small - large;
    Ok(if value < 0.0 {
        NecessaryOutcome::Fail(value)
    } else {
        NecessaryOutcome::Pass(value)
    })
}

/// Outcome of the entrywise norm bound.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SufficientOutcome {
    pub certified: bool,
    /// `δ = max(λ₁ − 1/d, 1/d − λ_d)`.
    pub delta: f64,
    /// `1/(p d) − δ`; non-negative exactly when certified.
    pub margin: f64,
}

/// Relative slack on `δ ≤ 1/(pd)` so that the boundary survives rounding.
const BOUNDARY_SLACK: f64 = 1e-12;

/// Certifies APPT when `δ ≤ 1/(p d)`.
///
/// With `Υ = Θ − (2/d) Id`, each entry of Υ is a difference of two
/// deviations from `1/d` (or twice one), so `|Υ_ij| ≤ 2δ` and
/// `‖Υ‖ ≤ 2pδ ≤ 2/d` makes every Θ PSD.
pub fn appt_sufficient_norm_bound(spectrum: &Spectrum, d: usize, p: usize) -> Result<SufficientOutcome> {
    if spectrum.len() != d {
        return Err(Error::DimensionMismatch(format!(
            "spectrum has {} values, d = {d}",
            spectrum.len()
        )));
    }
    if p == 0 {
        return Err(Error::InvalidArgument("p must be ≥ 1".into()));
    }
    let inv_d = 1.0 / d as f64;
    let delta = (spectrum.largest() - inv_d).max(inv_d - spectrum.smallest()).max(0.0);
    let bound = inv_d / p as f64;
    Ok(SufficientOutcome {
        certified: delta <= bound * (1.0 + BOUNDARY_SLACK),
        delta,
        margin: bound - delta,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    AbsolutelyPPT,
    NotAbsolutelyPPT,
    Unknown,
}

/// The test that settled (or failed to settle) a verdict.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "test", rename_all = "snake_case")]
pub enum Evidence {
    NormBound {
        delta: f64,
        margin: f64,
    },
    Exact {
        min_eigenvalue: f64,
        witness: OrderingPair,
    },
    AllOnes {
        value: f64,
        witness: OrderingPair,
    },
    Inconclusive {
        sufficient_margin: f64,
        necessary_value: f64,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ApptVerdict {
    pub verdict: Verdict,
    pub evidence: Evidence,
    pub p: usize,
    pub d: usize,
}

/// The compact JSON form of a verdict.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerdictSummary {
    pub verdict: String,
    pub test: String,
    pub margin: f64,
    pub p: usize,
    pub d: usize,
}

impl ApptVerdict {
    pub fn summary(&self) -> VerdictSummary {
        let (test, margin) = match &self.evidence {
            Evidence::NormBound { margin, .. } => ("norm_bound", *margin),
            Evidence::Exact { min_eigenvalue, .. } => ("exact", *min_eigenvalue),
            Evidence::AllOnes { value, .. } => ("all_ones", *value),
            Evidence::Inconclusive {
                sufficient_margin, ..
            } => ("inconclusive", *sufficient_margin),
        };
        let verdict = match self.verdict {
            Verdict::AbsolutelyPPT => "AbsolutelyPPT",
            Verdict::NotAbsolutelyPPT => "NotAbsolutelyPPT",
            Verdict::Unknown => "Unknown",
        };
        VerdictSummary {
            verdict: verdict.into(),
            test: test.into(),
            margin,
            p: self.p,
            d: self.d,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.summary()).expect("verdict serializes")
    }
}

/// Checks length `d`, clips entries in `[−1e−10, 0)` to 0 and renormalizes a
/// trace within `1e−10` of 1.
pub fn validate_spectrum(spectrum: &Spectrum, d: usize) -> Result<Spectrum> {
    if spectrum.len() != d {
        return Err(Error::InvalidSpectrum(format!(
            "{} eigenvalues for dimension {d}",
            spectrum.len()
        )));
    }
    if spectrum.smallest() < -SPECTRUM_TOL {
        return Err(Error::InvalidSpectrum(format!(
            "negative eigenvalue {}",
            spectrum.smallest()
        )));
    }
    let clipped: Vec<f64> = spectrum.values().iter().map(|&x| x.max(0.0)).collect();
    let tr = crate::summation::compensated_sum(clipped.iter().copied());
    if (tr - 1.0).abs() > SPECTRUM_TOL {
        return Err(Error::InvalidSpectrum(format!("trace {tr} differs from 1")));
    }
    Spectrum::new(clipped.into_iter().map(|x| x / tr).collect())
}

/// Runs the sufficient bound, then the exhaustive test when `p ≤ 3`, then the
/// necessary test, and returns the first conclusive answer. Depends on
/// `(d₁, d₂)` only through `p = min(d₁, d₂)` and `d = d₁ d₂`.
pub fn appt_verdict(spectrum: &Spectrum, d1: usize, d2: usize, tol: f64) -> Result<ApptVerdict> {
    let d = d1 * d2;
    let p = d1.min(d2);
    if p < 2 {
        return Err(Error::InvalidArgument(format!(
            "bipartite factors must both be ≥ 2, got ({d1}, {d2})"
        )));
    }
    let lam = validate_spectrum(spectrum, d)?;

    let sufficient = appt_sufficient_norm_bound(&lam, d, p)?;
    if sufficient.certified {
        return Ok(ApptVerdict {
            verdict: Verdict::AbsolutelyPPT,
            evidence: Evidence::NormBound {
                delta: sufficient.delta,
                margin: sufficient.margin,
            },
            p,
            d,
        });
    }
    let necessary = appt_necessary_all_ones(&lam, p)?;
    if p <= EXHAUSTIVE_P_MAX {
        let exact = appt_exact_detail(&lam, p, tol)?;
        // prefer the all-ones witness when it also refutes
        if let (false, NecessaryOutcome::Fail(value)) = (exact.appt, necessary) {
            return Ok(ApptVerdict {
                verdict: Verdict::NotAbsolutelyPPT,
                evidence: Evidence::AllOnes {
                    value,
                    witness: OrderingPair::row_major(p),
                },
                p,
                d,
            });
        }
        return Ok(ApptVerdict {
            verdict: if exact.appt {
                Verdict::AbsolutelyPPT
            } else {
                Verdict::NotAbsolutelyPPT
            },
            evidence: Evidence::Exact {
                min_eigenvalue: exact.min_eigenvalue,
                witness: exact.witness,
            },
            p,
            d,
        });
    }
    if let NecessaryOutcome::Fail(value) = necessary {
        return Ok(ApptVerdict {
            verdict: Verdict::NotAbsolutelyPPT,
            evidence: Evidence::AllOnes {
                value,
                witness: OrderingPair::row_major(p),
            },
            p,
            d,
        });
    }
    Ok(ApptVerdict {
        verdict: Verdict::Unknown,
        evidence: Evidence::Inconclusive {
            sufficient_margin: sufficient.margin,
            necessary_value: necessary.value(),
        },
        p,
        d,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(v: Vec<f64>) -> Spectrum {
        Spectrum::new(v).unwrap()
    }

    fn mixed(d: usize) -> Spectrum {
        spec(vec![1.0 / d as f64; d])
    }

    fn pure(d: usize) -> Spectrum {
        let mut v = vec![0.0; d];
        v[0] = 1.0;
        spec(v)
    }

    /// σ₊: (1,1)→1, (2,2)→2, (1,2)→3 in row-major slots (1,1), (1,2), (2,2).
    fn example_pair() -> OrderingPair {
        OrderingPair::new(2, vec![1, 3, 2], vec![1]).unwrap()
    }

    #[test]
    fn slots_are_row_major() {
        let p = 3;
        let plus: Vec<_> = (0..p).flat_map(|k| (k..p).map(move |l| plus_slot(p, k, l))).collect();
        assert_eq!(plus, (0..6).collect::<Vec<_>>());
        let minus: Vec<_> = (0..p)
            .flat_map(|k| (k + 1..p).map(move |l| minus_slot(p, k, l)))
            .collect();
        assert_eq!(minus, (0..3).collect::<Vec<_>>());
    }

    #[test]
    fn lambda_examples() {
        let d = 4;
        let l = build_lambda(&mixed(d), &OrderingPair::row_major(2), 2).unwrap();
        assert_eq!(l.data, vec![0.25, 0.25, -0.25, 0.25]);

        let pair = example_pair();
        assert_eq!(pair.plus(1, 1), 1);
        assert_eq!(pair.plus(2, 2), 2);
        assert_eq!(pair.plus(1, 2), 3);
        let l = build_lambda(&pure(4), &pair, 2).unwrap();
        assert_eq!(l.data, vec![0.0, 0.0, -1.0, 0.0]);
    }

    #[test]
    fn lambda_uses_extreme_eigenvalues() {
        let lam = spec((1..=10).map(|x| x as f64).collect());
        for pair in enumerate_ordering_pairs(3).unwrap().step_by(97) {
            let l = build_lambda(&lam, &pair, 3).unwrap();
            let mut upper: Vec<f64> = (0..3).flat_map(|k| (k..3).map(move |j| (k, j))).map(|(k, j)| l.get(k, j)).collect();
            upper.sort_by(f64::total_cmp);
            assert_eq!(upper, vec![1.0, 2.0, 3.0, 4.0, 5.0, 6.0]);
            let mut lower: Vec<f64> = (0..3).flat_map(|k| (0..k).map(move |j| (k, j))).map(|(k, j)| -l.get(k, j)).collect();
            lower.sort_by(f64::total_cmp);
            assert_eq!(lower, vec![8.0, 9.0, 10.0]);
        }
    }

    #[test]
    fn theta_examples() {
        for pair in enumerate_ordering_pairs(2).unwrap() {
            let t = build_theta(&mixed(6), &pair, 2).unwrap();
            assert!(t.max_abs_diff(&HermitianMatrix::diagonal(&[1.0 / 3.0; 2])) < 1e-16);
        }
        let t = build_theta(&pure(4), &example_pair(), 2).unwrap();
        assert_eq!(t, HermitianMatrix::from_real_symmetric(2, &[0.0, -1.0, -1.0, 0.0]).unwrap());
    }

    #[test]
    fn dimension_errors() {
        let lam = spec(vec![0.5, 0.5]);
        assert!(matches!(
            build_lambda(&lam, &OrderingPair::row_major(2), 2),
            Err(Error::DimensionMismatch(_))
        ));
        assert!(build_lambda(&mixed(6), &OrderingPair::row_major(3), 2).is_err());
        assert!(OrderingPair::new(2, vec![1, 1, 2], vec![1]).is_err());
        assert!(OrderingPair::new(2, vec![1, 2], vec![1]).is_err());
    }

    #[test]
    fn ordering_pair_counts() {
        assert_eq!(enumerate_ordering_pairs(2).unwrap().count(), 6);
        let all: HashSet<OrderingPair> = enumerate_ordering_pairs(3).unwrap().collect();
        assert_eq!(all.len(), 4320);
        assert!(matches!(
            enumerate_ordering_pairs(4),
            Err(Error::CombinatorialExplosion { p: 4, .. })
        ));
    }

    #[test]
    fn exact_examples() {
        assert!(appt_exact_small_p(&mixed(6), 2, 1e-12).unwrap());
        assert!(!appt_exact_small_p(&pure(6), 2, 1e-12).unwrap());
        let detail = appt_exact_detail(&pure(6), 2, 1e-12).unwrap();
        assert!((detail.min_eigenvalue + 1.0).abs() < 1e-15);
        assert!(appt_exact_small_p(&mixed(9), 4, 1e-12).is_err());
    }

    #[test]
    fn exact_agrees_with_sufficient_at_boundary() {
        // δ = 1/(p d) exactly on a p = 2, d = 8 spectrum
        let d = 8.0;
        let delta = 1.0 / (2.0 * d);
        let mut v = vec![1.0 / d; 8];
        v[0] += delta;
        v[7] -= delta;
        let lam = spec(v);
        let suff = appt_sufficient_norm_bound(&lam, 8, 2).unwrap();
        assert!(suff.certified);
        assert!(appt_exact_small_p(&lam, 2, 1e-12).unwrap());
    }

    #[test]
    fn necessary_examples() {
        let d = 9;
        match appt_necessary_all_ones(&mixed(d), 3).unwrap() {
            NecessaryOutcome::Pass(v) => assert!((v - 3.0 / 9.0).abs() < 1e-15),
            other => panic!("{other:?}"),
        }
        assert_eq!(appt_necessary_all_ones(&pure(7), 3).unwrap(), NecessaryOutcome::Fail(-1.0));

        // top p₋ raised by ε, bottom p₊ lowered by ε: value = p/d − (p₊ + p₋)ε
        let (p, d) = (2usize, 10usize);
        let eps = 0.06;
        let mut v = vec![1.0 / d as f64; d];
        v[0] += eps;
        for x in &mut v[d - 3..] {
            *x -= eps;
        }
        let lam = spec(v);
        let value = appt_necessary_all_ones(&lam, p).unwrap();
        assert!((value.value() - (0.2 - 4.0 * eps)).abs() < 1e-12);
        assert!(value.is_fail());
    }

    #[test]
    fn sufficient_examples() {
        let s = appt_sufficient_norm_bound(&mixed(9), 9, 3).unwrap();
        assert!(s.certified);
        assert_eq!(s.delta, 0.0);
        let s = appt_sufficient_norm_bound(&pure(9), 9, 3).unwrap();
        assert!(!s.certified);
        assert!((s.delta - 8.0 / 9.0).abs() < 1e-15);
    }

    #[test]
    fn verdict_examples() {
        let v = appt_verdict(&mixed(9), 3, 3, 1e-12).unwrap();
        assert_eq!(v.verdict, Verdict::AbsolutelyPPT);
        assert!(matches!(v.evidence, Evidence::NormBound { .. }));

        let v = appt_verdict(&pure(6), 2, 3, 1e-12).unwrap();
        assert_eq!(v.verdict, Verdict::NotAbsolutelyPPT);
        assert!(matches!(v.evidence, Evidence::AllOnes { value, .. } if value == -1.0));

        // refuted by some Θ but not by the all-ones form
        let lam = spec(vec![0.28, 0.2, 0.2, 0.16, 0.16, 0.0]);
        assert!(!appt_necessary_all_ones(&lam, 2).unwrap().is_fail());
        let v = appt_verdict(&lam, 2, 3, 1e-12).unwrap();
        assert_eq!(v.verdict, Verdict::NotAbsolutelyPPT);
        assert!(matches!(v.evidence, Evidence::Exact { min_eigenvalue, .. } if min_eigenvalue < 0.0));

        let v = appt_verdict(&pure(16), 4, 4, 1e-12).unwrap();
        assert_eq!(v.verdict, Verdict::NotAbsolutelyPPT);
        assert!(matches!(v.evidence, Evidence::AllOnes { value, .. } if value == -1.0));
        assert_eq!(
            v.to_json(),
            r#"{"verdict":"NotAbsolutelyPPT","test":"all_ones","margin":-1.0,"p":4,"d":16}"#
        );
    }

    #[test]
    fn verdict_is_symmetric_in_factors() {
        let lam = spec(vec![0.3, 0.2, 0.15, 0.15, 0.1, 0.1]);
        let a = appt_verdict(&lam, 2, 3, 1e-12).unwrap();
        let b = appt_verdict(&lam, 3, 2, 1e-12).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn verdict_validates_spectrum() {
        assert!(appt_verdict(&spec(vec![0.5, 0.5, 0.5, -0.5]), 2, 2, 1e-12).is_err());
        assert!(appt_verdict(&spec(vec![0.3, 0.3, 0.3, 0.3]), 2, 2, 1e-12).is_err());
        assert!(appt_verdict(&mixed(6), 2, 2, 1e-12).is_err());
        // tiny negative entries are clipped
        let v = appt_verdict(&spec(vec![0.5, 0.5, 0.0, -1e-12]), 2, 2, 1e-12).unwrap();
        assert_eq!(v.verdict, Verdict::NotAbsolutelyPPT);
    }

    #[test]
    fn closed_form_p2() {
        assert!(appt_p2_closed_form(&mixed(6), 0.0).unwrap());
        assert!(!appt_p2_closed_form(&pure(6), 0.0).unwrap());
    }
}
