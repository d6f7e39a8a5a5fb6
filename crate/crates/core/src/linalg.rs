//! Dense complex matrices and Hermitian eigenvalues.
//!
//! Eigenvalues are computed by complex Householder reduction to a real
//! symmetric tridiagonal matrix followed by implicit-shift QL iteration.
//! Only eigenvalues are produced.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// QL sweeps allowed per eigenvalue before reporting non-convergence.
const MAX_QL_SWEEPS: usize = 60;

/// Default relative PSD tolerance, scaled by the operator norm.
pub const DEFAULT_PSD_RELATIVE_TOL: f64 = 1e-10;

/// A dense `rows × cols` complex matrix.
///
/// Real and imaginary parts are stored in separate row-major planes, which is
/// what the Gram kernel wants.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexRectMatrix {
    rows: usize,
    cols: usize,
    re: Vec<f64>,
    im: Vec<f64>,
}

impl ComplexRectMatrix {
    pub fn new(rows: usize, cols: usize, entries: &[Complex64]) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::InvalidArgument("matrix dimensions must be ≥ 1".into()));
        }
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}×{cols} matrix",
                entries.len()
            )));
        }
        if entries.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(Self {
            rows,
            cols,
            re: entries.iter().map(|z| z.re).collect(),
            im: entries.iter().map(|z| z.im).collect(),
        })
    }

    /// Builds from separate real and imaginary planes (row-major).
    pub(crate) fn from_planes(rows: usize, cols: usize, re: Vec<f64>, im: Vec<f64>) -> Self {
        debug_assert_eq!(re.len(), rows * cols);
        debug_assert_eq!(im.len(), rows * cols);
        Self { rows, cols, re, im }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        let k = i * self.cols + j;
        Complex64::new(self.re[k], self.im[k])
    }

    pub fn entries(&self) -> impl Iterator<Item = Complex64> + '_ {
        self.re.iter().zip(&self.im).map(|(&r, &i)| Complex64::new(r, i))
    }

    pub fn frobenius_norm_sqr(&self) -> f64 {
        crate::summation::compensated_sum(
            self.re.iter().zip(&self.im).map(|(r, i)| r * r + i * i),
        )
    }

    /// `M M*`, exactly Hermitian (the upper triangle is computed and mirrored).
    pub fn gram(&self) -> HermitianMatrix {
        let (d, s) = (self.rows, self.cols);
        let mut out_re = vec![0.0; d * d];
        let mut out_im = vec![0.0; d * d];
        gram_upper(&self.re, &self.im, d, s, &mut out_re, &mut out_im);
        let mut data = vec![Complex64::new(0.0, 0.0); d * d];
        for i in 0..d {
            data[i * d + i] = Complex64::new(out_re[i * d + i], 0.0);
            for j in i + 1..d {
                let z = Complex64::new(out_re[i * d + j], out_im[i * d + j]);
                data[i * d + j] = z;
                data[j * d + i] = z.conj();
            }
        }
        HermitianMatrix { n: d, data }
    }
}

const GRAM_K_BLOCK: usize = 512;

fn gram_upper(re: &[f64], im: &[f64], d: usize, s: usize, out_re: &mut [f64], out_im: &mut [f64]) {
    #[cfg(target_arch = "x86_64")]
    {
        if std::is_x86_feature_detected!("avx512f") {
            // SAFETY: the required target feature was detected at runtime.
            unsafe { gram_upper_avx512(re, im, d, s, out_re, out_im) };
            return;
        }
        if std::is_x86_feature_detected!("avx2") && std::is_x86_feature_detected!("fma") {
            // SAFETY: the required target features were detected at runtime.
            unsafe { gram_upper_avx2(re, im, d, s, out_re, out_im) };
            return;
        }
    }
    gram_upper_tiled::<2, 2, 4>(re, im, d, s, out_re, out_im);
}

#[cfg(target_arch = "x86_64")]
#[target_feature(enable = "avx512f,avx2,fma")]
unsafe fn gram_upper_avx512(re: &[f64], im: &[f64], d: usize, s: usize, out_re: &mut [f64], out_im: &mut [f64]) {
    gram_upper_tiled::<2, 4, 8>(re, im, d, s, out_re, out_im)
}

#[cfg(target_arch = "x86_64")]
#[target_feature(enable = "avx2,fma")]
unsafe fn gram_upper_avx2(re: &[f64], im: &[f64], d: usize, s: usize, out_re: &mut [f64], out_im: &mut [f64]) {
    gram_upper_tiled::<2, 2, 4>(re, im, d, s, out_re, out_im)
}

/// Upper triangle of `M M*` accumulated over k-blocks with `R × C` register
/// tiles of row pairs. Every output entry is summed in a fixed order, so the
/// result does not depend on anything but the input.
#[inline(always)]
fn block_row(plane: &[f64], i: usize, s: usize, k0: usize, k1: usize) -> &[f64] {
    &plane[i * s + k0..i * s + k1]
}

#[inline(always)]
fn gram_upper_tiled<const R: usize, const C: usize, const L: usize>(
    re: &[f64],
    im: &[f64],
    d: usize,
    s: usize,
    out_re: &mut [f64],
    out_im: &mut [f64],
) {
    let mut k0 = 0;
    while k0 < s {
        let k1 = (k0 + GRAM_K_BLOCK).min(s);
        let row = |plane, i| block_row(plane, i, s, k0, k1);
        let mut i0 = 0;
        while i0 < d {
            if i0 + R <= d {
                let a: [&[f64]; R] = std::array::from_fn(|r| row(re, i0 + r));
                let b: [&[f64]; R] = std::array::from_fn(|r| row(im, i0 + r));
                let mut j0 = i0;
                while j0 + C <= d {
                    let c: [&[f64]; C] = std::array::from_fn(|q| row(re, j0 + q));
                    let e: [&[f64]; C] = std::array::from_fn(|q| row(im, j0 + q));
                    let (tr, ti) = conj_dot_tile::<R, C, L>(&a, &b, &c, &e);
                    for r in 0..R {
                        for q in 0..C {
                            out_re[(i0 + r) * d + j0 + q] += tr[r][q];
                            out_im[(i0 + r) * d + j0 + q] += ti[r][q];
                        }
                    }
                    j0 += C;
                }
                for j in j0..d {
                    for r in 0..R {
                        let (x, y) = conj_dot::<L>(a[r], b[r], row(re, j), row(im, j));
                        out_re[(i0 + r) * d + j] += x;
                        out_im[(i0 + r) * d + j] += y;
                    }
                }
                i0 += R;
            } else {
                for i in i0..d {
                    for j in i..d {
                        let (x, y) = conj_dot::<L>(row(re, i), row(im, i), row(re, j), row(im, j));
                        out_re[i * d + j] += x;
                        out_im[i * d + j] += y;
                    }
                }
                i0 = d;
            }
        }
        k0 = k1;
    }
}

/// `Σ_k (a_r + i b_r)(c_q − i e_q)` for all `R × C` row pairs at once.
#[inline(always)]
#[allow(clippy::type_complexity)]
fn conj_dot_tile<const R: usize, const C: usize, const L: usize>(
    a: &[&[f64]; R],
    b: &[&[f64]; R],
    c: &[&[f64]; C],
    e: &[&[f64]; C],
) -> ([[f64; C]; R], [[f64; C]; R]) {
    let len = a[0].len();
    let n = len / L * L;
    let mut acc_re = [[[0.0f64; L]; C]; R];
    let mut acc_im = [[[0.0f64; L]; C]; R];
    let mut k = 0;
    while k < n {
        let av: [[f64; L]; R] = std::array::from_fn(|r| a[r][k..k + L].try_into().unwrap());
        let bv: [[f64; L]; R] = std::array::from_fn(|r| b[r][k..k + L].try_into().unwrap());
        for q in 0..C {
            let cv: [f64; L] = c[q][k..k + L].try_into().unwrap();
            let ev: [f64; L] = e[q][k..k + L].try_into().unwrap();
            for r in 0..R {
                for l in 0..L {
                    acc_re[r][q][l] += av[r][l] * cv[l] + bv[r][l] * ev[l];
                    acc_im[r][q][l] += bv[r][l] * cv[l] - av[r][l] * ev[l];
                }
            }
        }
        k += L;
    }
    let mut out_re = [[0.0; C]; R];
    let mut out_im = [[0.0; C]; R];
    for r in 0..R {
        for q in 0..C {
            let mut x = acc_re[r][q].iter().sum::<f64>();
            let mut y = acc_im[r][q].iter().sum::<f64>();
            for kk in n..len {
                x += a[r][kk] * c[q][kk] + b[r][kk] * e[q][kk];
                y += b[r][kk] * c[q][kk] - a[r][kk] * e[q][kk];
            }
            out_re[r][q] = x;
            out_im[r][q] = y;
        }
    }
    (out_re, out_im)
}

/// `Σ (a + ib)(c − ie)` over equal-length slices.
#[inline(always)]
fn conj_dot<const L: usize>(a: &[f64], b: &[f64], c: &[f64], e: &[f64]) -> (f64, f64) {
    let (x, y) = conj_dot_tile::<1, 1, L>(&[a], &[b], &[c], &[e]);
    (x[0][0], y[0][0])
}

/// A dense `n × n` Hermitian matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianMatrix {
    n: usize,
    data: Vec<Complex64>,
}

impl HermitianMatrix {
    /// Builds from row-major entries, replacing the input by `(A + A*)/2`.
    pub fn new(n: usize, data: Vec<Complex64>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument("matrix dimension must be ≥ 1".into()));
        }
        if data.len() != n * n {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {n}×{n} matrix",
                data.len()
            )));
        }
        if data.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite);
        }
        let mut m = Self { n, data };
        m.symmetrize();
        Ok(m)
    }

    pub fn from_real_symmetric(n: usize, data: &[f64]) -> Result<Self> {
        Self::new(n, data.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> Complex64) -> Result<Self> {
        let data = (0..n * n).map(|k| f(k / n, k % n)).collect();
        Self::new(n, data)
    }

    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            data: vec![Complex64::new(0.0, 0.0); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::diagonal(&vec![1.0; n])
    }

    pub fn diagonal(values: &[f64]) -> Self {
        let n = values.len();
        let mut m = Self::zeros(n);
        for (i, &v) in values.iter().enumerate() {
            m.data[i * n + i] = Complex64::new(v, 0.0);
        }
        m
    }

    /// `A ⊕ B`.
    pub fn block_diagonal(a: &Self, b: &Self) -> Self {
        let n = a.n + b.n;
        let mut m = Self::zeros(n);
        for i in 0..a.n {
            for j in 0..a.n {
                m.data[i * n + j] = a.get(i, j);
            }
        }
        for i in 0..b.n {
            for j in 0..b.n {
                m.data[(a.n + i) * n + a.n + j] = b.get(i, j);
            }
        }
        m
    }

    /// Wraps entries already known to be exactly Hermitian.
    pub(crate) fn from_hermitian_unchecked(n: usize, data: Vec<Complex64>) -> Self {
        debug_assert_eq!(data.len(), n * n);
        Self { n, data }
    }

    fn symmetrize(&mut self) {
        let n = self.n;
        for i in 0..n {
            let k = i * n + i;
            self.data[k] = Complex64::new(self.data[k].re, 0.0);
            for j in i + 1..n {
                let upper = self.data[i * n + j];
                let lower = self.data[j * n + i];
                let avg = (upper + lower.conj()) * 0.5;
                self.data[i * n + j] = avg;
                self.data[j * n + i] = avg.conj();
            }
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.data[i * self.n + j]
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.data
    }

    pub fn trace(&self) -> f64 {
        crate::summation::compensated_sum((0..self.n).map(|i| self.data[i * self.n + i].re))
    }

    /// `scale · A + shift · Id`.
    pub fn affine(&self, scale: f64, shift: f64) -> Self {
        let n = self.n;
        let mut data: Vec<Complex64> = self.data.iter().map(|z| z * scale).collect();
        for i in 0..n {
            data[i * n + i] += shift;
        }
        Self { n, data }
    }

    /// Kronecker product `A ⊗ B`, composite index `i·n_B + α`.
    pub fn kron(&self, other: &Self) -> Self {
        let (na, nb) = (self.n, other.n);
        let n = na * nb;
        let mut data = vec![Complex64::new(0.0, 0.0); n * n];
        for i in 0..na {
            for j in 0..na {
                let a = self.get(i, j);
                for k in 0..nb {
                    for l in 0..nb {
                        data[(i * nb + k) * n + j * nb + l] = a * other.get(k, l);
                    }
                }
            }
        }
        Self { n, data }
    }

    pub fn max_abs_entry(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Largest entrywise distance to `other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.n, other.n, "dimension mismatch");
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn eigenvalues(&self) -> Result<Spectrum> {
        hermitian_eigenvalues(self)
    }
}

/// Real eigenvalues sorted non-increasingly, `λ₁ ≥ λ₂ ≥ … ≥ λ_n`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Spectrum {
    values: Vec<f64>,
}

impl Spectrum {
    /// Sorts the given values non-increasingly. Rejects empty or non-finite input.
    pub fn new(mut values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::InvalidSpectrum("empty spectrum".into()));
        }
        if values.iter().any(|x| !x.is_finite()) {
            return Err(Error::InvalidSpectrum("non-finite eigenvalue".into()));
        }
        values.sort_by(|a, b| b.total_cmp(a));
        Ok(Self { values })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn largest(&self) -> f64 {
        self.values[0]
    }

    pub fn smallest(&self) -> f64 {
        self.values[self.values.len() - 1]
    }

    pub fn sum(&self) -> f64 {
        crate::summation::compensated_sum(self.values.iter().copied())
    }

    /// `Σ λ_i^p`.
    pub fn power_sum(&self, p: i32) -> f64 {
        crate::summation::compensated_sum(self.values.iter().map(|x| x.powi(p)))
    }
}

/// All eigenvalues of a Hermitian matrix, sorted non-increasingly.
pub fn hermitian_eigenvalues(a: &HermitianMatrix) -> Result<Spectrum> {
    let (diag, off) = tridiagonalize(a);
    let values = symmetric_tridiagonal_eigenvalues(diag, off)?;
    Spectrum::new(values)
}

/// Householder reduction `Q* A Q = T`. Returns the real diagonal of `T` and
/// the moduli of its sub-diagonal; a diagonal unitary similarity makes the
/// sub-diagonal real without changing eigenvalues.
fn tridiagonalize(a: &HermitianMatrix) -> (Vec<f64>, Vec<f64>) {
    let n = a.n;
    let mut m = a.data.clone();
    let mut diag = vec![0.0; n];
    let mut off = vec![0.0; n.saturating_sub(1)];
    let zero = Complex64::new(0.0, 0.0);
    let mut v = vec![zero; n];
    let mut w = vec![zero; n];

    for k in 0..n.saturating_sub(1) {
        let len = n - k - 1;
        let col = |i: usize| m[(k + 1 + i) * n + k];
        let sigma = (0..len).map(|i| col(i).norm_sqr()).sum::<f64>().sqrt();
        let head = col(0);
        let tail_norm_sqr = sigma * sigma - head.norm_sqr();
        if sigma == 0.0 || tail_norm_sqr <= f64::MIN_POSITIVE {
            off[k] = head.norm();
            continue;
        }
        let phase = if head.norm() > 0.0 {
            head / head.norm()
        } else {
            Complex64::new(1.0, 0.0)
        };
        let alpha = -phase * sigma;
        for i in 0..len {
            v[i] = col(i);
        }
        v[0] -= alpha;
        let vnorm = v[..len].iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        for z in &mut v[..len] {
            *z /= vnorm;
        }
        // trailing block B = m[k+1.., k+1..]; p = B v, K = v* p, w = p − K v
        let base = k + 1;
        for i in 0..len {
            let row = &m[(base + i) * n + base..(base + i) * n + n];
            let mut acc = zero;
            for (x, y) in row.iter().zip(&v[..len]) {
                acc += x * y;
            }
            w[i] = acc;
        }
        let kk: f64 = (0..len).map(|i| (v[i].conj() * w[i]).re).sum();
        for i in 0..len {
            w[i] -= v[i] * kk;
        }
        // B ← B − 2(v w* + w v*)
        for i in 0..len {
            let vi2 = v[i] * 2.0;
            let wi2 = w[i] * 2.0;
            let row = &mut m[(base + i) * n + base..(base + i) * n + n];
            for (j, x) in row.iter_mut().enumerate() {
                *x -= vi2 * w[j].conj() + wi2 * v[j].conj();
            }
        }
        off[k] = sigma;
    }
    for (i, d) in diag.iter_mut().enumerate() {
        *d = m[i * n + i].re;
    }
    (diag, off)
}

/// Eigenvalues of the symmetric tridiagonal matrix with diagonal `d` and
/// off-diagonal `e` (`e.len() == d.len() − 1`), by implicit QL with Wilkinson-type
/// shifts. Unsorted.
pub(crate) fn symmetric_tridiagonal_eigenvalues(mut d: Vec<f64>, e_in: Vec<f64>) -> Result<Vec<f64>> {
    let n = d.len();
    if n <= 1 {
        return Ok(d);
    }
    let mut e = e_in;
    e.push(0.0);
    for l in 0..n {
        let mut sweeps = 0;
        loop {
            let mut m = l;
            while m < n - 1 {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            sweeps += 1;
            if sweeps > MAX_QL_SWEEPS {
                return Err(Error::NoConvergence {
                    index: l,
                    iterations: sweeps - 1,
                });
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut underflow = false;
            let mut i = m;
            while i > l {
                i -= 1;
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
            }
            if underflow {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    Ok(d)
}

/// `‖A‖ = max |λ_i|`.
pub fn operator_norm(a: &HermitianMatrix) -> Result<f64> {
    let spec = hermitian_eigenvalues(a)?;
    Ok(spec.largest().abs().max(spec.smallest().abs()))
}

/// `max_{i,j} |A_ij|`.
pub fn max_abs_entry(a: &HermitianMatrix) -> f64 {
    a.max_abs_entry()
}

/// `λ_min(A) ≥ −tol`.
pub fn is_psd(a: &HermitianMatrix, tol: f64) -> Result<bool> {
    if !(tol >= 0.0) {
        return Err(Error::InvalidArgument(format!("tolerance must be ≥ 0, got {tol}")));
    }
    Ok(hermitian_eigenvalues(a)?.smallest() >= -tol)
}

/// [`is_psd`] with tolerance `1e−10 · ‖A‖`.
pub fn is_psd_default(a: &HermitianMatrix) -> Result<bool> {
    let spec = hermitian_eigenvalues(a)?;
    let norm = spec.largest().abs().max(spec.smallest().abs());
    Ok(spec.smallest() >= -DEFAULT_PSD_RELATIVE_TOL * norm)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn real(n: usize, data: &[f64]) -> HermitianMatrix {
        HermitianMatrix::from_real_symmetric(n, data).unwrap()
    }

    #[test]
    fn eigenvalue_examples() {
        let id = HermitianMatrix::identity(3);
        assert_eq!(hermitian_eigenvalues(&id).unwrap().values(), &[1.0, 1.0, 1.0]);

        let d = real(2, &[2.0, 0.0, 0.0, -1.0]);
        assert_eq!(hermitian_eigenvalues(&d).unwrap().values(), &[2.0, -1.0]);

        let flip = real(2, &[0.0, -1.0, -1.0, 0.0]);
        let ev = hermitian_eigenvalues(&flip).unwrap();
        assert!((ev.values()[0] - 1.0).abs() < 1e-15);
        assert!((ev.values()[1] + 1.0).abs() < 1e-15);
    }

    #[test]
    fn complex_two_by_two() {
        // [[1, i], [−i, 1]] has eigenvalues 2 and 0
        let m = HermitianMatrix::new(
            2,
            vec![
                Complex64::new(1.0, 0.0),
                Complex64::new(0.0, 1.0),
                Complex64::new(0.0, -1.0),
                Complex64::new(1.0, 0.0),
            ],
        )
        .unwrap();
        let ev = m.eigenvalues().unwrap();
        assert!((ev.largest() - 2.0).abs() < 1e-14);
        assert!(ev.smallest().abs() < 1e-14);
    }

    #[test]
    fn norms_and_psd() {
        assert_eq!(operator_norm(&HermitianMatrix::identity(4)).unwrap(), 1.0);
        let flip = real(2, &[0.0, -1.0, -1.0, 0.0]);
        assert!((operator_norm(&flip).unwrap() - 1.0).abs() < 1e-15);
        assert_eq!(operator_norm(&HermitianMatrix::diagonal(&[3.0, -5.0])).unwrap(), 5.0);

        assert_eq!(max_abs_entry(&HermitianMatrix::zeros(3)), 0.0);
        assert_eq!(max_abs_entry(&real(2, &[2.0, -3.0, -3.0, 1.0])), 3.0);

        assert!(is_psd(&HermitianMatrix::identity(3), 0.0).unwrap());
        assert!(!is_psd(&flip, 1e-10).unwrap());
        assert!(is_psd(&HermitianMatrix::zeros(2), 0.0).unwrap());
        assert!(is_psd_default(&HermitianMatrix::zeros(2)).unwrap());
        assert!(is_psd(&flip, -1.0).is_err());
    }

    #[test]
    fn construction_symmetrizes() {
        let m = HermitianMatrix::new(
            2,
            vec![
                Complex64::new(1.0, 0.3),
                Complex64::new(2.0, 1.0),
                Complex64::new(2.0, -1.0 + 1e-16),
                Complex64::new(0.0, 0.0),
            ],
        )
        .unwrap();
        assert_eq!(m.get(0, 0).im, 0.0);
        assert_eq!(m.get(0, 1), m.get(1, 0).conj());
        assert!(HermitianMatrix::new(2, vec![Complex64::new(f64::NAN, 0.0); 4]).is_err());
        assert!(HermitianMatrix::new(2, vec![Complex64::new(0.0, 0.0); 3]).is_err());
    }

    #[test]
    fn gram_of_small_matrix() {
        let z = |r, i| Complex64::new(r, i);
        let g = ComplexRectMatrix::new(2, 3, &[z(1.0, 1.0), z(0.0, 2.0), z(3.0, 0.0), z(1.0, 0.0), z(0.0, 0.0), z(0.0, -1.0)])
            .unwrap();
        let w = g.gram();
        // row0 = (1+i, 2i, 3), row1 = (1, 0, −i)
        assert_eq!(w.get(0, 0), z(15.0, 0.0));
        assert_eq!(w.get(1, 1), z(2.0, 0.0));
        // Σ row0_k conj(row1_k) = (1+i) + 3·i
        assert_eq!(w.get(0, 1), z(1.0, 4.0));
        assert_eq!(w.get(1, 0), z(1.0, -4.0));
    }

    #[test]
    fn gram_handles_long_rows() {
        // crosses several k-blocks and a lane remainder
        let s = 3 * GRAM_K_BLOCK + 5;
        let entries: Vec<Complex64> = (0..2 * s)
            .map(|k| Complex64::new((k as f64 * 0.37).sin(), (k as f64 * 0.11).cos()))
            .collect();
        let g = ComplexRectMatrix::new(2, s, &entries).unwrap();
        let w = g.gram();
        let mut naive = Complex64::new(0.0, 0.0);
        for k in 0..s {
            naive += entries[k] * entries[s + k].conj();
        }
        assert!((w.get(0, 1) - naive).norm() < 1e-10);
    }

    #[test]
    fn tridiagonal_solver_on_known_matrix() {
        // second-difference matrix: eigenvalues 2 − 2cos(kπ/(n+1))
        let n = 12;
        let mut ev = symmetric_tridiagonal_eigenvalues(vec![2.0; n], vec![-1.0; n - 1]).unwrap();
        ev.sort_by(f64::total_cmp);
        for (k, x) in ev.iter().enumerate() {
            let want = 2.0 - 2.0 * ((k + 1) as f64 * std::f64::consts::PI / (n + 1) as f64).cos();
            assert!((x - want).abs() < 1e-13);
        }
    }
}
