use crate::error::{Error, Result};

/// A partition of `[p]` into disjoint non-empty blocks (1-based points).
///
/// Blocks are stored sorted internally and ordered by their smallest point,
/// so structurally equal partitions compare equal.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SetPartition {
    p: usize,
    blocks: Vec<Vec<usize>>,
}

impl SetPartition {
    pub fn new(p: usize, blocks: Vec<Vec<usize>>) -> Result<Self> {
        let mut seen = vec![false; p];
        let mut blocks: Vec<Vec<usize>> = blocks
            .into_iter()
            .map(|mut b| {
                b.sort_unstable();
                b
            })
            .collect();
        for b in &blocks {
            if b.is_empty() {
                return Err(Error::InvalidArgument("empty block".into()));
            }
            for &x in b {
                if x == 0 || x > p {
                    return Err(Error::InvalidArgument(format!("point {x} outside [1, {p}]")));
                }
                if std::mem::replace(&mut seen[x - 1], true) {
                    return Err(Error::InvalidArgument(format!("point {x} in two blocks")));
                }
            }
        }
        if let Some(missing) = seen.iter().position(|&s| !s) {
            return Err(Error::InvalidArgument(format!(
                "point {} not covered",
                missing + 1
            )));
        }
        blocks.sort_unstable_by_key(|b| b[0]);
        Ok(Self { p, blocks })
    }

    pub fn size(&self) -> usize {
        self.p
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    /// `#π`.
    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    pub fn has_singletons(&self) -> bool {
        self.blocks.iter().any(|b| b.len() == 1)
    }

    /// A partition is crossing iff there are `a < b < c < d` with `a, c` in
    /// one block and `b, d` in another. Checked by direct quadruple scan.
    pub fn is_non_crossing(&self) -> bool {
        let mut owner = vec![0usize; self.p + 1];
        for (k, b) in self.blocks.iter().enumerate() {
            for &x in b {
                owner[x] = k;
            }
        }
        let p = self.p;
        for a in 1..=p {
            for b in a + 1..=p {
                if owner[a] == owner[b] {
                    continue;
                }
                for c in b + 1..=p {
                    if owner[c] != owner[a] {
                        continue;
                    }
                    for d in c + 1..=p {
                        if owner[d] == owner[b] {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }
}

/// All non-crossing partitions of `[p]`, optionally excluding those with
/// singleton blocks. Generated directly: the block of the smallest point
/// splits the rest into independent intervals.
pub(crate) fn non_crossing_partitions(p: usize, allow_singletons: bool) -> Vec<SetPartition> {
    let points: Vec<usize> = (1..=p).collect();
    nc_blocks(&points, allow_singletons)
        .into_iter()
        .map(|blocks| SetPartition::new(p, blocks).expect("generator covers [p]"))
        .collect()
}

fn nc_blocks(points: &[usize], allow_singletons: bool) -> Vec<Vec<Vec<usize>>> {
    let Some((&first, rest)) = points.split_first() else {
        return vec![Vec::new()];
    };
    let mut out = Vec::new();
    let m = rest.len();
    // subsets of `rest` joining `first`; bit k selects rest[k]
    for mask in 0u64..(1u64 << m) {
        if !allow_singletons && mask == 0 {
            continue;
        }
        let mut block = vec![first];
        let mut intervals: Vec<&[usize]> = Vec::new();
        let mut gap_start = 0;
        for k in 0..m {
            if mask & (1 << k) != 0 {
                block.push(rest[k]);
                intervals.push(&rest[gap_start..k]);
                gap_start = k + 1;
            }
        }
        intervals.push(&rest[gap_start..]);

        let mut partial: Vec<Vec<Vec<usize>>> = vec![vec![block]];
        for interval in intervals {
            let sub = nc_blocks(interval, allow_singletons);
            if sub.is_empty() {
                partial.clear();
                break;
            }
            let mut next = Vec::with_capacity(partial.len() * sub.len());
            for head in &partial {
                for tail in &sub {
                    let mut combined = head.clone();
                    combined.extend(tail.iter().cloned());
                    next.push(combined);
                }
            }
            partial = next;
        }
        out.extend(partial);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_no_singleton_cases() {
        let p2 = non_crossing_partitions(2, false);
        assert_eq!(p2, vec![SetPartition::new(2, vec![vec![1, 2]]).unwrap()]);

        let p3 = non_crossing_partitions(3, false);
        assert_eq!(p3, vec![SetPartition::new(3, vec![vec![1, 2, 3]]).unwrap()]);

        let mut p4 = non_crossing_partitions(4, false);
        p4.sort();
        let mut expected = vec![
            SetPartition::new(4, vec![vec![1, 2], vec![3, 4]]).unwrap(),
            SetPartition::new(4, vec![vec![1, 4], vec![2, 3]]).unwrap(),
            SetPartition::new(4, vec![vec![1, 2, 3, 4]]).unwrap(),
        ];
        expected.sort();
        assert_eq!(p4, expected);
    }

    #[test]
    fn crossing_detection() {
        let crossing = SetPartition::new(4, vec![vec![1, 3], vec![2, 4]]).unwrap();
        assert!(!crossing.is_non_crossing());
        let nested = SetPartition::new(4, vec![vec![1, 4], vec![2, 3]]).unwrap();
        assert!(nested.is_non_crossing());
    }

    #[test]
    fn constructor_validates_cover() {
        assert!(SetPartition::new(3, vec![vec![1, 2]]).is_err());
        assert!(SetPartition::new(3, vec![vec![1, 2], vec![2, 3]]).is_err());
        assert!(SetPartition::new(2, vec![vec![1], vec![]]).is_err());
        assert!(SetPartition::new(0, vec![]).is_ok());
    }

    #[test]
    fn catalan_counts_with_singletons() {
        let catalan = [1, 1, 2, 5, 14, 42, 132, 429];
        for (p, &c) in catalan.iter().enumerate() {
            assert_eq!(non_crossing_partitions(p, true).len(), c, "p = {p}");
        }
    }
}
