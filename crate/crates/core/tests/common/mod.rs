//! Oracles shared by the integration tests.

use std::collections::BTreeMap;

pub fn all_permutations(k: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for x in 0..used.len() {
            if !used[x] {
                used[x] = true;
                prefix.push(x);
                go(prefix, used, out);
                prefix.pop();
                used[x] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; k], &mut out);
    out
}

pub fn cycles(a: &[usize]) -> usize {
    let mut seen = vec![false; a.len()];
    let mut n = 0;
    for i in 0..a.len() {
        if !seen[i] {
            n += 1;
            let mut j = i;
            while !seen[j] {
                seen[j] = true;
                j = a[j];
            }
        }
    }
    n
}

/// Σ_{I ⊆ [p]} (−1)^{p−|I|} Σ_{α ∈ S_I} d^{−2g_I(α)} (d/s)^{|α| − p/2},
/// keyed by (genus, 2|α| − p). Subsets of equal size contribute equally.
pub fn inclusion_exclusion(p: usize) -> BTreeMap<(u32, i32), i64> {
    let mut out: BTreeMap<(u32, i32), i64> = BTreeMap::new();
    let binom = |n: usize, k: usize| -> i64 { (0..k).fold(1i64, |acc, i| acc * (n - i) as i64 / (i + 1) as i64) };
    for k in 0..=p {
        let sign = if (p - k) % 2 == 0 { 1 } else { -1 };
        let weight = sign * binom(p, k);
        if k == 0 {
            *out.entry((0, -(p as i32))).or_default() += weight;
            continue;
        }
        for alpha in all_permutations(k) {
            let len = k - cycles(&alpha);
            // α⁻¹γ with γ(i) = i + 1 mod k
            let mut inv = vec![0; k];
            for (i, &x) in alpha.iter().enumerate() {
                inv[x] = i;
            }
            let rest: Vec<usize> = (0..k).map(|i| inv[(i + 1) % k]).collect();
            let len_rest = k - cycles(&rest);
            let twice_genus = len + len_rest + 1 - k;
            assert_eq!(twice_genus % 2, 0);
            *out.entry(((twice_genus / 2) as u32, 2 * len as i32 - p as i32)).or_default() += weight;
        }
    }
    out.retain(|_, v| *v != 0);
    out
}

/// `(2n − 1)!!` as a product of odd numbers.
pub fn odd_double_factorial(n: usize) -> u64 {
    (0..n as u64).map(|k| 2 * k + 1).product()
}
