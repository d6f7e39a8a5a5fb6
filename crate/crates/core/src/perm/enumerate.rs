use super::permutation::Permutation;

/// Depth-first walker over fixed-point-free permutations of `[p]` in
/// lexicographic order of their 0-based image vectors. Optionally pinned to a
/// prefix so independent subtrees can be walked separately.
pub(crate) struct DerangementWalker {
    p: usize,
    images: Vec<usize>,
    next: Vec<usize>,
    used: u64,
    level: usize,
    floor: usize,
    started: bool,
    done: bool,
}

impl DerangementWalker {
    pub(crate) fn new(p: usize) -> Self {
        Self::with_prefix(p, &[])
    }

    /// Walks only derangements whose first images equal `prefix`.
    pub(crate) fn with_prefix(p: usize, prefix: &[usize]) -> Self {
        assert!(p <= 64, "bitmask walker supports at most 64 points");
        let mut used = 0u64;
        let mut valid = prefix.len() <= p;
        let mut images = vec![0; p];
        for (i, &x) in prefix.iter().enumerate() {
            if x >= p || x == i || used & (1 << x) != 0 {
                valid = false;
                break;
            }
            used |= 1 << x;
            images[i] = x;
        }
        Self {
            p,
            images,
            next: vec![0; p + 1],
            used,
            level: prefix.len(),
            floor: prefix.len(),
            started: false,
            done: !valid,
        }
    }

    /// Advances to the next derangement; returns its 0-based images.
    pub(crate) fn advance(&mut self) -> Option<&[usize]> {
        if self.done {
            return None;
        }
        if self.started {
            if self.level == self.floor {
                // p == prefix length: the prefix itself was the only candidate
                self.done = true;
                return None;
            }
            // resume search at the last assigned level
            self.level -= 1;
            self.used &= !(1 << self.images[self.level]);
        } else {
            self.started = true;
            if self.level == self.p {
                return Some(&self.images);
            }
            self.next[self.level] = 0;
        }
        loop {
            let level = self.level;
            let mut c = self.next[level];
            while c < self.p && (c == level || self.used & (1 << c) != 0) {
                c += 1;
            }
            if c < self.p {
                self.images[level] = c;
                self.used |= 1 << c;
                self.next[level] = c + 1;
                self.level += 1;
                if self.level == self.p {
                    return Some(&self.images);
                }
                self.next[self.level] = 0;
            } else {
                if level == self.floor {
                    self.done = true;
                    return None;
                }
                self.level -= 1;
                self.used &= !(1 << self.images[self.level]);
            }
        }
    }
}

/// Stream of fixed-point-free permutations of `[p]`.
pub struct FixedPointFree {
    walker: DerangementWalker,
}

impl FixedPointFree {
    pub(crate) fn new(p: usize) -> Self {
        Self {
            walker: DerangementWalker::new(p),
        }
    }
}

impl Iterator for FixedPointFree {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        self.walker
            .advance()
            .map(|images| Permutation::from_zero_based(images.to_vec()).expect("walker yields bijections"))
    }
}

/// Visits every permutation of `[p]` in lexicographic order.
pub(crate) fn for_each_permutation(p: usize, mut visit: impl FnMut(&[usize])) {
    let mut images: Vec<usize> = (0..p).collect();
    loop {
        visit(&images);
        if !next_lexicographic(&mut images) {
            break;
        }
    }
}

fn next_lexicographic(a: &mut [usize]) -> bool {
    let n = a.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && a[i - 1] >= a[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while a[j] <= a[i - 1] {
        j -= 1;
    }
    a.swap(i - 1, j);
    a[i..].reverse();
    true
}

/// Visits every fixed-point-free involution (perfect matching) of `[2n]`.
pub(crate) fn for_each_pairing(n: usize, mut visit: impl FnMut(&[usize])) {
    let p = 2 * n;
    let mut images = vec![usize::MAX; p];
    fn recurse(images: &mut [usize], visit: &mut dyn FnMut(&[usize])) {
        let Some(first) = images.iter().position(|&x| x == usize::MAX) else {
            visit(images);
            return;
        };
        for partner in first + 1..images.len() {
            if images[partner] != usize::MAX {
                continue;
            }
            images[first] = partner;
            images[partner] = first;
            recurse(images, visit);
            images[first] = usize::MAX;
            images[partner] = usize::MAX;
        }
    }
    recurse(&mut images, &mut visit);
}

/// Lexicographic permutations of an owned vector, as an iterator.
pub(crate) struct Lexicographic {
    current: Option<Vec<usize>>,
}

impl Lexicographic {
    pub(crate) fn new(n: usize) -> Self {
        Self {
            current: Some((0..n).collect()),
        }
    }
}

impl Iterator for Lexicographic {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let out = self.current.take()?;
        let mut succ = out.clone();
        if next_lexicographic(&mut succ) {
            self.current = Some(succ);
        }
        Some(out)
    }
}
