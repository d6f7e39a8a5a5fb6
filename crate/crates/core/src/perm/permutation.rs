use std::fmt;

use crate::error::{Error, Result};

/// A bijection of `[p] = {1, …, p}`.
///
/// Semantics are 1-based ([`Permutation::image`], [`Permutation::cycles`],
/// [`Permutation::from_cycles`]); storage is 0-based.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    /// Builds a permutation from 1-based images: `images[i]` is the image of `i + 1`.
    pub fn from_one_based(images: &[usize]) -> Result<Self> {
        let zero: Vec<usize> = images
            .iter()
            .map(|&x| {
                x.checked_sub(1)
                    .ok_or_else(|| Error::InvalidPermutation("image 0 in 1-based input".into()))
            })
            .collect::<Result<_>>()?;
        Self::from_zero_based(zero)
    }

    /// Builds a permutation from 0-based images.
    pub fn from_zero_based(images: Vec<usize>) -> Result<Self> {
        let p = images.len();
        let mut seen = vec![false; p];
        for &x in &images {
            if x >= p {
                return Err(Error::InvalidPermutation(format!(
                    "image {} out of range for p = {p}",
                    x + 1
                )));
            }
            if std::mem::replace(&mut seen[x], true) {
                return Err(Error::InvalidPermutation(format!(
                    "image {} appears twice",
                    x + 1
                )));
            }
        }
        Ok(Self { images })
    }

    /// Builds a permutation of `[p]` from disjoint 1-based cycles; unlisted
    /// points are fixed.
    pub fn from_cycles(p: usize, cycles: &[&[usize]]) -> Result<Self> {
        let mut images: Vec<usize> = (0..p).collect();
        let mut touched = vec![false; p];
        for cycle in cycles {
            for (k, &x) in cycle.iter().enumerate() {
                if x == 0 || x > p {
                    return Err(Error::InvalidPermutation(format!(
                        "cycle point {x} outside [1, {p}]"
                    )));
                }
                if std::mem::replace(&mut touched[x - 1], true) {
                    return Err(Error::InvalidPermutation(format!(
                        "point {x} appears in two cycles"
                    )));
                }
                let next = cycle[(k + 1) % cycle.len()];
                images[x - 1] = next - 1;
            }
        }
        Self::from_zero_based(images)
    }

    pub fn identity(p: usize) -> Self {
        Self {
            images: (0..p).collect(),
        }
    }

    /// The increasing full cycle `γ = (1 2 … p)`.
    pub fn full_cycle(p: usize) -> Self {
        Self {
            images: (0..p).map(|i| (i + 1) % p.max(1)).collect(),
        }
    }

    /// Number of points `p`.
    pub fn size(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    /// Image of the 1-based point `i`, itself 1-based.
    pub fn image(&self, i: usize) -> usize {
        self.images[i - 1] + 1
    }

    pub fn zero_based_images(&self) -> &[usize] {
        &self.images
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x] = i;
        }
        Self { images: inv }
    }

    /// `self ∘ other`, i.e. `x ↦ self(other(x))`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.size() != other.size() {
            return Err(Error::DimensionMismatch(format!(
                "composing permutations of {} and {} points",
                self.size(),
                other.size()
            )));
        }
        Ok(Self {
            images: other.images.iter().map(|&x| self.images[x]).collect(),
        })
    }

    /// `#α`, the number of cycles (fixed points included).
    pub fn cycle_count(&self) -> usize {
        count_cycles(&self.images)
    }

    /// `|α| = p − #α`, the minimal number of transpositions.
    pub fn length(&self) -> usize {
        self.size() - self.cycle_count()
    }

    /// Genus relative to the increasing full cycle of `[p]`:
    /// `g(α) = (|α| + |α⁻¹γ| − p + 1) / 2`.
    pub fn genus(&self) -> Result<usize> {
        if self.is_empty() {
            return Err(Error::InvalidArgument(
                "genus is undefined for the empty permutation".into(),
            ));
        }
        Ok(genus_of(&self.images))
    }

    pub fn fixed_points(&self) -> Vec<usize> {
        self.images
            .iter()
            .enumerate()
            .filter(|&(i, &x)| i == x)
            .map(|(i, _)| i + 1)
            .collect()
    }

    pub fn is_fixed_point_free(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i != x)
    }

    /// Removes fixed points. Returns the permutation restricted to its support,
    /// relabelled increasingly onto `[|support|]`, together with the 1-based
    /// support. Relabelling is order preserving, so the full cycle of the
    /// support maps to the full cycle of `[|support|]`.
    pub fn strip_fixed_points(&self) -> (Self, Vec<usize>) {
        let support: Vec<usize> = (0..self.size()).filter(|&i| self.images[i] != i).collect();
        let mut rank = vec![usize::MAX; self.size()];
        for (r, &i) in support.iter().enumerate() {
            rank[i] = r;
        }
        let images = support.iter().map(|&i| rank[self.images[i]]).collect();
        (Self { images }, support.into_iter().map(|i| i + 1).collect())
    }

    /// Disjoint cycles, 1-based, each starting at its smallest point, ordered
    /// by that point. Fixed points appear as 1-cycles.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let p = self.size();
        let mut seen = vec![false; p];
        let mut out = Vec::new();
        for start in 0..p {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cycle.push(x + 1);
                x = self.images[x];
            }
            out.push(cycle);
        }
        out
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "∅");
        }
        let nontrivial: Vec<_> = self.cycles().into_iter().filter(|c| c.len() > 1).collect();
        if nontrivial.is_empty() {
            return write!(f, "id");
        }
        for c in nontrivial {
            let parts: Vec<String> = c.iter().map(ToString::to_string).collect();
            write!(f, "({})", parts.join(" "))?;
        }
        Ok(())
    }
}

/// Cycle count of a 0-based image slice.
pub(crate) fn count_cycles(images: &[usize]) -> usize {
    let p = images.len();
    if p <= 64 {
        let mut seen: u64 = 0;
        let mut cycles = 0;
        for start in 0..p {
            if seen & (1 << start) != 0 {
                continue;
            }
            cycles += 1;
            let mut x = start;
            while seen & (1 << x) == 0 {
                seen |= 1 << x;
                x = images[x];
            }
        }
        cycles
    } else {
        let mut seen = vec![false; p];
        let mut cycles = 0;
        for start in 0..p {
            if seen[start] {
                continue;
            }
            cycles += 1;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = images[x];
            }
        }
        cycles
    }
}

/// Cycle count of `α⁻¹γ` for the increasing full cycle `γ`, where `α` is
/// given by 0-based images.
pub(crate) fn count_cycles_inverse_times_gamma(images: &[usize]) -> usize {
    let p = images.len();
    let mut inv = [0usize; 64];
    let mut inv_heap;
    let inv: &mut [usize] = if p <= 64 {
        &mut inv[..p]
    } else {
        inv_heap = vec![0; p];
        &mut inv_heap
    };
    for (i, &x) in images.iter().enumerate() {
        inv[x] = i;
    }
    let mut composed = [0usize; 64];
    let mut composed_heap;
    let composed: &mut [usize] = if p <= 64 {
        &mut composed[..p]
    } else {
        composed_heap = vec![0; p];
        &mut composed_heap
    };
    for (x, slot) in composed.iter_mut().enumerate() {
        *slot = inv[(x + 1) % p];
    }
    count_cycles(composed)
}

/// Genus of a non-empty 0-based image slice.
pub(crate) fn genus_of(images: &[usize]) -> usize {
    let p = images.len();
    debug_assert!(p > 0);
    let len_alpha = p - count_cycles(images);
    let len_rest = p - count_cycles_inverse_times_gamma(images);
    // |α| + |α⁻¹γ| ≥ p − 1 with even excess
    let excess = len_alpha + len_rest + 1 - p;
    debug_assert!(excess % 2 == 0);
    excess / 2
}
