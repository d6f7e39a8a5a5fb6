use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::enumerate::{for_each_permutation, DerangementWalker};
use super::permutation::{count_cycles, count_cycles_inverse_times_gamma, genus_of};

/// One term of the centered moment polynomial:
/// `count · d^(−2·genus) · (d/s)^(half_exponent / 2)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct MomentTerm {
    pub genus: u32,
    /// `2|α| − p`, the exponent of `d/s` doubled.
    pub half_exponent: i32,
    pub count: u64,
}

/// Exact integer coefficients of `E (1/d) tr Z_d^p` in the variables
/// `d^(−2)` and `(d/s)^(1/2)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MomentTable {
    pub p: usize,
    pub terms: Vec<MomentTerm>,
}

impl MomentTable {
    pub(crate) fn from_counts(p: usize, counts: BTreeMap<(u32, i32), u64>) -> Self {
        let terms = counts
            .into_iter()
            .filter(|&(_, n)| n > 0)
            .map(|((genus, half_exponent), count)| MomentTerm {
                genus,
                half_exponent,
                count,
            })
            .collect();
        Self { p, terms }
    }

    pub fn evaluate(&self, d: f64, s: f64) -> f64 {
        let ratio = d / s;
        let mut terms: Vec<f64> = self
            .terms
            .iter()
            .map(|t| {
                t.count as f64
                    * d.powi(-2 * t.genus as i32)
                    * ratio.powf(f64::from(t.half_exponent) / 2.0)
            })
            .collect();
        // smallest first keeps the sum stable when d is large
        terms.sort_by(|a, b| a.abs().total_cmp(&b.abs()));
        crate::summation::compensated_sum(terms)
    }

    /// Total number of permutations contributing, i.e. `Σ count`.
    pub fn total_count(&self) -> u64 {
        self.terms.iter().map(|t| t.count).sum()
    }

    /// Coefficient of a given `(genus, half_exponent)`, zero when absent.
    pub fn coefficient(&self, genus: u32, half_exponent: i32) -> u64 {
        self.terms
            .iter()
            .find(|t| t.genus == genus && t.half_exponent == half_exponent)
            .map_or(0, |t| t.count)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("moment table serializes")
    }
}

/// `m_p` as a floating value together with its exact coefficient table.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MomentValue {
    pub p: usize,
    pub d: f64,
    pub s: f64,
    pub value: f64,
    pub table: MomentTable,
}

/// Sums over fixed-point-free `α ∈ S_p` of the genus / length histogram.
/// Subtrees keyed by `α(1)` are walked in parallel; integer accumulation makes
/// the result independent of scheduling.
pub(crate) fn centered_table(p: usize) -> MomentTable {
    let p_i32 = p as i32;
    let walk = |prefix: &[usize]| {
        let mut counts: BTreeMap<(u32, i32), u64> = BTreeMap::new();
        let mut walker = DerangementWalker::with_prefix(p, prefix);
        while let Some(images) = walker.advance() {
            let len = (p - count_cycles(images)) as i32;
            let g = genus_of(images) as u32;
            *counts.entry((g, 2 * len - p_i32)).or_default() += 1;
        }
        counts
    };
    let merged = if p >= 8 {
        (1..p)
            .into_par_iter()
            .map(|first| walk(&[first]))
            .reduce(BTreeMap::new, merge_counts)
    } else if p == 0 {
        BTreeMap::new()
    } else {
        walk(&[])
    };
    MomentTable::from_counts(p, merged)
}

fn merge_counts(
    mut a: BTreeMap<(u32, i32), u64>,
    b: BTreeMap<(u32, i32), u64>,
) -> BTreeMap<(u32, i32), u64> {
    for (k, v) in b {
        *a.entry(k).or_default() += v;
    }
    a
}

/// Histogram of `(#(α⁻¹γ), #α)` over all of `S_p`.
pub(crate) fn raw_table(p: usize) -> BTreeMap<(usize, usize), u64> {
    let mut counts = BTreeMap::new();
    for_each_permutation(p, |images| {
        let key = (count_cycles_inverse_times_gamma(images), count_cycles(images));
        *counts.entry(key).or_default() += 1;
    });
    counts
}

pub(crate) fn evaluate_raw(table: &BTreeMap<(usize, usize), u64>, d: f64, s: f64) -> f64 {
    crate::summation::compensated_sum(
        table
            .iter()
            .map(|(&(cd, cs), &n)| n as f64 * d.powi(cd as i32) * s.powi(cs as i32)),
    )
}
