//! Permutation combinatorics and the exact moment formula for centered
//! Wishart matrices.
//!
//! For `Z_d = √(ds)(W/(ds) − Id/d)` with `W` a `d × s` Wishart matrix,
//!
//! ```text
//! E (1/d) tr Z_d^p = Σ_{α ∈ S_p, no fixed points} d^(−2 g(α)) (d/s)^(|α| − p/2)
//! ```
//!
//! where `|α|` is the length and `g(α)` the genus relative to the full cycle
//! `(1 2 … p)`. [`Enumerator`] evaluates this sum exactly by enumeration, with
//! a configurable cap `p_max` on the number of points.

mod enumerate;
mod moments;
mod partition;
mod permutation;

use std::collections::BTreeMap;

pub use enumerate::FixedPointFree;
pub use moments::{MomentTable, MomentTerm, MomentValue};
pub use partition::SetPartition;
pub use permutation::Permutation;

use crate::error::{Error, Result};

/// All permutations of `{1..n}` as 1-based image vectors, lexicographically.
pub(crate) fn lexicographic_ranks(n: usize) -> impl Iterator<Item = Vec<usize>> {
    enumerate::Lexicographic::new(n).map(|v| v.into_iter().map(|x| x + 1).collect())
}

pub const DEFAULT_P_MAX: usize = 12;

/// Hard ceiling on `p_max`; the enumerators use 64-bit point masks and
/// anything near this is far beyond what exhaustive enumeration can finish.
const ABSOLUTE_P_MAX: usize = 20;

/// Limit regime for the moments of `Z_d`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Regime {
    /// `d` fixed, `s → ∞`.
    DFixed(f64),
    /// `s/d → c`.
    Ratio(f64),
    /// `1 ≪ d ≪ s`.
    Semicircle,
}

/// Exact enumerations, bounded by `p_max` points.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Enumerator {
    p_max: usize,
}

impl Default for Enumerator {
    fn default() -> Self {
        Self {
            p_max: DEFAULT_P_MAX,
        }
    }
}

impl Enumerator {
    pub fn new(p_max: usize) -> Result<Self> {
        if p_max > ABSOLUTE_P_MAX {
            return Err(Error::InvalidArgument(format!(
                "p_max = {p_max} exceeds the supported ceiling {ABSOLUTE_P_MAX}"
            )));
        }
        Ok(Self { p_max })
    }

    pub fn p_max(&self) -> usize {
        self.p_max
    }

    fn check(&self, p: usize) -> Result<()> {
        if p > self.p_max {
            Err(Error::EnumerationTooLarge {
                p,
                p_max: self.p_max,
            })
        } else {
            Ok(())
        }
    }

    /// Every fixed-point-free permutation of `[p]` exactly once.
    pub fn fixed_point_free(&self, p: usize) -> Result<FixedPointFree> {
        self.check(p)?;
        Ok(FixedPointFree::new(p))
    }

    /// The exact coefficient table of `m_p`, independent of `(d, s)`.
    pub fn centered_moment_table(&self, p: usize) -> Result<MomentTable> {
        self.check(p)?;
        Ok(moments::centered_table(p))
    }

    /// `m_p = E (1/d) tr Z_d^p` evaluated at real `d, s > 0`.
    pub fn centered_wishart_moment(&self, p: usize, d: f64, s: f64) -> Result<MomentValue> {
        if p == 0 {
            return Err(Error::InvalidArgument("moment order must be ≥ 1".into()));
        }
        check_positive("d", d)?;
        check_positive("s", s)?;
        let table = self.centered_moment_table(p)?;
        Ok(MomentValue {
            p,
            d,
            s,
            value: table.evaluate(d, s),
            table,
        })
    }

    /// `E tr W^p = Σ_{α ∈ S_p} d^{#(α⁻¹γ)} s^{#α}` for the uncentered Wishart matrix.
    pub fn raw_wishart_moment(&self, p: usize, d: f64, s: f64) -> Result<f64> {
        if p == 0 {
            return Err(Error::InvalidArgument("moment order must be ≥ 1".into()));
        }
        self.check(p)?;
        check_positive("d", d)?;
        check_positive("s", s)?;
        Ok(moments::evaluate_raw(&moments::raw_table(p), d, s))
    }

    /// Histogram `(#(α⁻¹γ), #α) → count` behind [`Self::raw_wishart_moment`].
    pub fn raw_wishart_table(&self, p: usize) -> Result<BTreeMap<(usize, usize), u64>> {
        self.check(p)?;
        Ok(moments::raw_table(p))
    }

    /// Non-crossing partitions of `[p]` whose blocks all have size ≥ 2.
    pub fn nc_no_singletons(&self, p: usize) -> Result<Vec<SetPartition>> {
        self.check(p)?;
        Ok(partition::non_crossing_partitions(p, false))
    }

    /// All non-crossing partitions of `[p]`.
    pub fn non_crossing(&self, p: usize) -> Result<Vec<SetPartition>> {
        self.check(p)?;
        Ok(partition::non_crossing_partitions(p, true))
    }

    /// `ε(n, g)` for every genus: index `g` of the result counts products of
    /// `n` disjoint transpositions in `S_{2n}` with genus `g`.
    pub fn epsilon_by_genus(&self, n: usize) -> Result<Vec<u64>> {
        if n == 0 {
            return Err(Error::InvalidArgument("ε(n, g) needs n ≥ 1".into()));
        }
        self.check(2 * n)?;
        let mut counts: Vec<u64> = Vec::new();
        enumerate::for_each_pairing(n, |images| {
            let g = permutation::genus_of(images);
            if counts.len() <= g {
                counts.resize(g + 1, 0);
            }
            counts[g] += 1;
        });
        Ok(counts)
    }

    /// `ε(n, g)`.
    pub fn epsilon_count(&self, n: usize, g: usize) -> Result<u64> {
        Ok(self.epsilon_by_genus(n)?.get(g).copied().unwrap_or(0))
    }

    /// Limit of `m_p` in the given regime.
    pub fn limit_moment(&self, p: usize, regime: Regime) -> Result<f64> {
        if p == 0 {
            return Err(Error::InvalidArgument("moment order must be ≥ 1".into()));
        }
        self.check(p)?;
        match regime {
            Regime::DFixed(d) => {
                check_positive("d", d)?;
                if p % 2 == 1 {
                    return Ok(0.0);
                }
                let eps = self.epsilon_by_genus(p / 2)?;
                Ok(crate::summation::compensated_sum(
                    eps.iter()
                        .enumerate()
                        .map(|(g, &n)| n as f64 * d.powi(-2 * g as i32)),
                ))
            }
            Regime::Ratio(c) => {
                check_positive("c", c)?;
                let half = p as f64 / 2.0;
                Ok(crate::summation::compensated_sum(
                    self.nc_no_singletons(p)?
                        .iter()
                        .map(|pi| c.powf(pi.block_count() as f64 - half)),
                ))
            }
            Regime::Semicircle => Ok(if p % 2 == 1 {
                0.0
            } else {
                catalan(p / 2) as f64
            }),
        }
    }
}

fn check_positive(name: &str, x: f64) -> Result<()> {
    if x.is_finite() && x > 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!("{name} must be positive and finite, got {x}")))
    }
}

/// Every fixed-point-free permutation of `[p]`, with the default `p_max`.
pub fn enumerate_fixed_point_free(p: usize) -> Result<FixedPointFree> {
    Enumerator::default().fixed_point_free(p)
}

pub fn centered_wishart_moment(p: usize, d: f64, s: f64) -> Result<MomentValue> {
    Enumerator::default().centered_wishart_moment(p, d, s)
}

pub fn raw_wishart_moment(p: usize, d: f64, s: f64) -> Result<f64> {
    Enumerator::default().raw_wishart_moment(p, d, s)
}

pub fn enumerate_nc_no_singletons(p: usize) -> Result<Vec<SetPartition>> {
    Enumerator::default().nc_no_singletons(p)
}

pub fn epsilon_count(n: usize, g: usize) -> Result<u64> {
    Enumerator::default().epsilon_count(n, g)
}

pub fn limit_moment(p: usize, regime: Regime) -> Result<f64> {
    Enumerator::default().limit_moment(p, regime)
}

/// Catalan number `Cat_n`.
pub fn catalan(n: usize) -> u64 {
    // Cat_{k+1} = Cat_k · 2(2k+1)/(k+2), exact at every step
    (0..n).fold(1u64, |c, k| c * 2 * (2 * k as u64 + 1) / (k as u64 + 2))
}

/// `(2n − 1)!!`, the number of perfect matchings of `[2n]`.
pub fn double_factorial_odd(n: usize) -> u64 {
    (1..=n as u64).map(|k| 2 * k - 1).product()
}

/// Number of derangements `D_p`.
pub fn derangement_count(p: usize) -> u64 {
    // D_p = (p − 1)(D_{p−1} + D_{p−2})
    let (mut prev, mut cur) = (1u64, 0u64);
    if p == 0 {
        return 1;
    }
    for k in 2..=p as u64 {
        let next = (k - 1) * (cur + prev);
        prev = cur;
        cur = next;
    }
    cur
}
