//! Ginibre and Wishart sampling, random induced states, partial trace and
//! partial transpose.
//!
//! Tensor index convention: the composite index of `(i, α)` in
//! `C^{d₁} ⊗ C^{d₂}` is `i·d₂ + α` (first factor slow).
//!
//! Complex Gaussians are standard: `E G_ij = 0`, `E |G_ij|² = 1`, with
//! independent real and imaginary parts of variance 1/2 each, so that
//! `E tr GG* = ds`.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{hermitian_eigenvalues, is_psd, ComplexRectMatrix, HermitianMatrix, Spectrum};

/// Tolerance on `tr ρ = 1` for density matrices.
pub const TRACE_TOL: f64 = 1e-12;

/// Eigenvalues at or below this are treated as zero by the induced density.
const SINGULAR_EIGENVALUE: f64 = 1e-14;

/// A reproducible random source: `(seed, stream_id)` selects one of 2⁶⁴
/// independent ChaCha8 streams under a seed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RngStream {
    pub seed: u64,
    pub stream_id: u64,
}

impl RngStream {
    pub fn new(seed: u64, stream_id: u64) -> Self {
        Self { seed, stream_id }
    }

    /// A fresh generator positioned at the start of this stream.
    pub fn rng(&self) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(self.stream_id);
        rng
    }

    pub fn with_stream(&self, stream_id: u64) -> Self {
        Self {
            seed: self.seed,
            stream_id,
        }
    }
}

fn standard_complex_gaussian<R: Rng + ?Sized>(rng: &mut R) -> (f64, f64) {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    (re * std::f64::consts::FRAC_1_SQRT_2, im * std::f64::consts::FRAC_1_SQRT_2)
}

/// A `d × s` Ginibre matrix.
pub fn sample_ginibre<R: Rng + ?Sized>(d: usize, s: usize, rng: &mut R) -> Result<ComplexRectMatrix> {
    if d == 0 || s == 0 {
        return Err(Error::InvalidArgument(format!("Ginibre dimensions must be ≥ 1, got {d}×{s}")));
    }
    let n = d * s;
    let mut re = Vec::with_capacity(n);
    let mut im = Vec::with_capacity(n);
    for _ in 0..n {
        let (x, y) = standard_complex_gaussian(rng);
        re.push(x);
        im.push(y);
    }
    Ok(ComplexRectMatrix::from_planes(d, s, re, im))
}

/// `W = GG*` for a `d × s` Ginibre matrix `G`.
pub fn sample_wishart<R: Rng + ?Sized>(d: usize, s: usize, rng: &mut R) -> Result<HermitianMatrix> {
    Ok(sample_ginibre(d, s, rng)?.gram())
}

/// `Z_d = √(ds) (W/(ds) − Id/d) = W/√(ds) − √(s/d)·Id`.
pub fn centered_normalized(w: &HermitianMatrix, d: usize, s: f64) -> Result<HermitianMatrix> {
    if w.n() != d {
        return Err(Error::DimensionMismatch(format!(
            "Wishart matrix is {0}×{0}, expected d = {d}",
            w.n()
        )));
    }
    if !(s > 0.0 && s.is_finite()) {
        return Err(Error::InvalidArgument(format!("s must be positive, got {s}")));
    }
    let d = d as f64;
    Ok(w.affine(1.0 / (d * s).sqrt(), -(s / d).sqrt()))
}

/// A unit-trace positive semidefinite matrix, optionally with a bipartite
/// shape `(d₁, d₂)`.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    matrix: HermitianMatrix,
    shape: Option<(usize, usize)>,
}

impl DensityMatrix {
    /// Validates trace, positivity (within `1e−10`) and shape.
    pub fn new(matrix: HermitianMatrix, shape: Option<(usize, usize)>) -> Result<Self> {
        let tr = matrix.trace();
        if (tr - 1.0).abs() > TRACE_TOL {
            return Err(Error::InvalidArgument(format!("density matrix trace is {tr}, expected 1")));
        }
        if !is_psd(&matrix, 1e-10)? {
            return Err(Error::InvalidArgument("density matrix is not positive semidefinite".into()));
        }
        check_shape(matrix.n(), shape)?;
        Ok(Self { matrix, shape })
    }

    fn from_trusted(matrix: HermitianMatrix, shape: Option<(usize, usize)>) -> Self {
        Self { matrix, shape }
    }

    /// `Id / (d₁ d₂)`.
    pub fn maximally_mixed(d1: usize, d2: usize) -> Result<Self> {
        let d = d1 * d2;
        check_shape(d, Some((d1, d2)))?;
        Ok(Self::from_trusted(
            HermitianMatrix::diagonal(&vec![1.0 / d as f64; d]),
            Some((d1, d2)),
        ))
    }

    /// `|ψ⟩⟨ψ| / ⟨ψ|ψ⟩`.
    pub fn pure(psi: &[Complex64], shape: Option<(usize, usize)>) -> Result<Self> {
        let norm_sqr: f64 = psi.iter().map(|z| z.norm_sqr()).sum();
        if psi.is_empty() || !(norm_sqr > 0.0) {
            return Err(Error::InvalidArgument("pure state vector must be non-zero".into()));
        }
        let scale = 1.0 / norm_sqr.sqrt();
        let unit: Vec<Complex64> = psi.iter().map(|z| z * scale).collect();
        check_shape(unit.len(), shape)?;
        Ok(Self::from_trusted(pure_state_projector(&unit), shape))
    }

    pub fn matrix(&self) -> &HermitianMatrix {
        &self.matrix
    }

    pub fn shape(&self) -> Option<(usize, usize)> {
        self.shape
    }

    pub fn dim(&self) -> usize {
        self.matrix.n()
    }

    pub fn with_shape(self, d1: usize, d2: usize) -> Result<Self> {
        check_shape(self.dim(), Some((d1, d2)))?;
        Ok(Self {
            shape: Some((d1, d2)),
            ..self
        })
    }

    pub fn spectrum(&self) -> Result<Spectrum> {
        hermitian_eigenvalues(&self.matrix)
    }
}

fn check_shape(d: usize, shape: Option<(usize, usize)>) -> Result<()> {
    if let Some((d1, d2)) = shape {
        if d1 * d2 != d {
            return Err(Error::DimensionMismatch(format!("shape {d1}×{d2} for dimension {d}")));
        }
        if d1.min(d2) < 2 {
            return Err(Error::InvalidArgument(format!(
                "bipartite factors must both be ≥ 2, got ({d1}, {d2})"
            )));
        }
    }
    Ok(())
}

/// `ρ = W / tr W` on `C^d`, no bipartite shape.
pub fn sample_induced_density<R: Rng + ?Sized>(d: usize, s: usize, rng: &mut R) -> Result<DensityMatrix> {
    let w = sample_wishart(d, s, rng)?;
    let tr = w.trace();
    Ok(DensityMatrix::from_trusted(w.affine(1.0 / tr, 0.0), None))
}

/// A random induced state on `C^{d₁} ⊗ C^{d₂}` with environment dimension `s`.
pub fn sample_induced_state<R: Rng + ?Sized>(
    d1: usize,
    d2: usize,
    s: usize,
    rng: &mut R,
) -> Result<DensityMatrix> {
    check_shape(d1 * d2, Some((d1, d2)))?;
    let rho = sample_induced_density(d1 * d2, s, rng)?;
    Ok(DensityMatrix {
        shape: Some((d1, d2)),
        ..rho
    })
}

/// A uniformly distributed unit vector in `C^n` (normalized Gaussian vector).
pub fn sample_uniform_pure_state<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<Vec<Complex64>> {
    if n == 0 {
        return Err(Error::InvalidArgument("state dimension must be ≥ 1".into()));
    }
    let v: Vec<Complex64> = (0..n)
        .map(|_| {
            let (x, y) = standard_complex_gaussian(rng);
            Complex64::new(x, y)
        })
        .collect();
    let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    Ok(v.into_iter().map(|z| z / norm).collect())
}

/// `|ψ⟩⟨ψ|`.
pub fn pure_state_projector(psi: &[Complex64]) -> HermitianMatrix {
    let n = psi.len();
    let mut data = Vec::with_capacity(n * n);
    for a in psi {
        for b in psi {
            data.push(a * b.conj());
        }
    }
    HermitianMatrix::from_hermitian_unchecked(n, data)
}

/// The induced state built literally: partial trace over `C^s` of a uniform
/// pure state on `C^d ⊗ C^s`. Materialises the `ds × ds` projector.
pub fn sample_induced_state_by_purification<R: Rng + ?Sized>(
    d: usize,
    s: usize,
    rng: &mut R,
) -> Result<HermitianMatrix> {
    let psi = sample_uniform_pure_state(d * s, rng)?;
    partial_trace(&pure_state_projector(&psi), d, s)
}

/// `σ_ij = Σ_β ρ_{iβ, jβ}`: trace over the second factor of `C^d ⊗ C^s`.
pub fn partial_trace(rho: &HermitianMatrix, d: usize, s: usize) -> Result<HermitianMatrix> {
    if d == 0 || s == 0 || rho.n() != d * s {
        return Err(Error::DimensionMismatch(format!(
            "partial trace of a {0}×{0} matrix over {d}⊗{s}",
            rho.n()
        )));
    }
    let mut data = vec![Complex64::new(0.0, 0.0); d * d];
    for i in 0..d {
        for j in 0..d {
            let mut acc = Complex64::new(0.0, 0.0);
            for beta in 0..s {
                acc += rho.get(i * s + beta, j * s + beta);
            }
            data[i * d + j] = acc;
        }
    }
    HermitianMatrix::new(d, data)
}

/// Transpose on the second factor: `((i,α),(j,β)) ↦ ((i,β),(j,α))`.
pub fn partial_transpose_matrix(rho: &HermitianMatrix, d1: usize, d2: usize) -> Result<HermitianMatrix> {
    let d = d1 * d2;
    if rho.n() != d {
        return Err(Error::DimensionMismatch(format!(
            "partial transpose of a {0}×{0} matrix over {d1}⊗{d2}",
            rho.n()
        )));
    }
    let mut data = vec![Complex64::new(0.0, 0.0); d * d];
    for i in 0..d1 {
        for alpha in 0..d2 {
            for j in 0..d1 {
                for beta in 0..d2 {
                    data[(i * d2 + alpha) * d + j * d2 + beta] = rho.get(i * d2 + beta, j * d2 + alpha);
                }
            }
        }
    }
    // a permutation of entries of a Hermitian matrix that commutes with A ↦ A*
    Ok(HermitianMatrix::from_hermitian_unchecked(d, data))
}

/// `T₂(ρ)` for a shaped state.
pub fn partial_transpose(rho: &DensityMatrix) -> Result<HermitianMatrix> {
    let (d1, d2) = rho.shape.ok_or(Error::Unshaped)?;
    partial_transpose_matrix(&rho.matrix, d1, d2)
}

/// `T₂(ρ) ≥ −tol`.
pub fn is_ppt(rho: &DensityMatrix, tol: f64) -> Result<bool> {
    is_psd(&partial_transpose(rho)?, tol)
}

/// `(s − d) Σ log λ_i`, the log of `(det ρ)^{s−d}` without normalization.
///
/// Requires real `s ≥ d`. Returns `f64::NEG_INFINITY` when `ρ` is singular
/// (some eigenvalue ≤ 1e−14) and `s > d`; for `s = d` the density is flat and
/// the result is 0.
pub fn induced_log_density_unnormalized(rho: &DensityMatrix, s: f64) -> Result<f64> {
    let d = rho.dim() as f64;
    if !(s >= d) || !s.is_finite() {
        return Err(Error::InvalidArgument(format!("induced density needs s ≥ d = {d}, got {s}")));
    }
    if s == d {
        return Ok(0.0);
    }
    let spec = rho.spectrum()?;
    if spec.smallest() <= SINGULAR_EIGENVALUE {
        return Ok(f64::NEG_INFINITY);
    }
    let log_det = crate::summation::compensated_sum(spec.values().iter().map(|x| x.ln()));
    Ok((s - d) * log_det)
}
