//! Free trees as canonical level sequences.
//!
//! Generation follows the Wright–Richmond–Odlyzko–McKay successor scheme: rooted trees are
//! stepped through in reverse lexicographic order of their canonical level sequences
//! (Beyer–Hedetniemi), rooted at a center, and sequences that are not the canonical
//! representative of a free tree are skipped with a jump instead of being visited.

use alloc::vec::Vec;

use crate::{Error, Result, Tree};

/// Largest vertex count the generator accepts.
pub const MAX_ORDER: usize = 24;

/// Depth list of a rooted ordered tree; the root has level 1.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct LevelSequence(pub Vec<usize>);

impl LevelSequence {
    pub fn new(levels: Vec<usize>) -> Result<Self> {
        let seq = LevelSequence(levels);
        seq.validate()?;
        Ok(seq)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn levels(&self) -> &[usize] {
        &self.0
    }

    fn validate(&self) -> Result<()> {
        match self.0.first() {
            None => return Err(Error::BadSequence("empty sequence")),
            Some(&1) => {}
            Some(_) => return Err(Error::BadSequence("root level must be 1")),
        }
        for w in self.0.windows(2) {
            if w[1] < 2 || w[1] > w[0] + 1 {
                return Err(Error::BadSequence("level must be in 2..=previous + 1"));
            }
        }
        Ok(())
    }

    /// Tree with vertex `i + 1` joined to the nearest earlier position one level up.
    pub fn decode(&self) -> Result<Tree> {
        self.validate()?;
        let n = self.0.len();
        // last_at[d] = latest position seen at level d + 1
        let mut last_at: Vec<usize> = Vec::with_capacity(n);
        let mut edges = Vec::with_capacity(n.saturating_sub(1));
        for (i, &level) in self.0.iter().enumerate() {
            let d = level - 1;
            if d > 0 {
                edges.push((last_at[d - 1], i));
            }
            last_at.truncate(d);
            last_at.push(i);
        }
        Ok(Tree::from_edges0_unchecked(n, edges))
    }
}

/// Successor of a rooted level sequence (0-based levels) with the last non-leaf-level
/// position at or before `p`; `None` when `layout` is the star.
fn next_rooted(layout: &mut [usize], p: Option<usize>) -> bool {
    let p = match p {
        Some(p) => p,
        None => {
            let mut p = layout.len() - 1;
            while layout[p] == 1 {
                p -= 1;
            }
            p
        }
    };
    if p == 0 {
        return false;
    }
    let mut q = p - 1;
    while layout[q] != layout[p] - 1 {
        q -= 1;
    }
    for i in p..layout.len() {
        layout[i] = layout[i - p + q];
    }
    true
}

/// Start of the second root subtree, or `len` if the root has one child.
fn split_point(layout: &[usize]) -> usize {
    layout.iter().enumerate().skip(2).find(|&(_, &l)| l == 1).map_or(layout.len(), |(i, _)| i)
}

/// Whether `layout` is the canonical center-rooted form of its free tree. The left subtree
/// (first child of the root) must not be taller than the rest, and on equal height must not
/// be larger, or on equal size lexicographically after the rest.
fn is_free_canonical(layout: &[usize]) -> bool {
    let m = split_point(layout);
    let left = &layout[1..m];
    let left_height = left.iter().max().map_or(0, |h| h - 1);
    let rest_height = layout[m..].iter().copied().max().unwrap_or(0);
    if rest_height < left_height {
        return false;
    }
    if rest_height == left_height {
        let rest_len = 1 + layout.len() - m;
        if left.len() > rest_len {
            return false;
        }
        if left.len() == rest_len {
            // compare left (shifted up one level) with [0] ++ rest
            let lhs = left.iter().map(|l| l - 1);
            let rhs = core::iter::once(0).chain(layout[m..].iter().copied());
            if lhs.gt(rhs) {
                return false;
            }
        }
    }
    true
}

/// Iterator over all free trees on `n` vertices, one level sequence per isomorphism class.
#[derive(Clone, Debug)]
pub struct FreeTrees {
    n: usize,
    /// 0-based levels of the next candidate, `None` once exhausted.
    layout: Option<Vec<usize>>,
}

impl FreeTrees {
    fn new(n: usize) -> Result<Self> {
        if n == 0 || n > MAX_ORDER {
            return Err(Error::BadParam("free tree enumeration needs 1 <= n <= 24"));
        }
        // path rooted at its center
        let layout = (0..=n / 2).chain(1..n.div_ceil(2)).collect();
        Ok(FreeTrees { n, layout: Some(layout) })
    }

    pub fn order(&self) -> usize {
        self.n
    }

    /// Replaces a non-canonical candidate by the next canonical one.
    fn advance_to_valid(layout: &mut [usize]) -> bool {
        loop {
            if layout.len() <= 2 || is_free_canonical(layout) {
                return true;
            }
            let p = split_point(layout) - 1;
            let big = layout[p] > 2;
            if !next_rooted(layout, Some(p)) {
                return false;
            }
            if big {
                let m = split_point(layout);
                let left_height = layout[1..m].iter().max().map_or(0, |h| h - 1);
                let len = layout.len();
                let tail = left_height + 1;
                for (k, slot) in layout[len - tail..].iter_mut().enumerate() {
                    *slot = k + 1;
                }
            }
        }
    }
}

impl Iterator for FreeTrees {
    type Item = LevelSequence;

    fn next(&mut self) -> Option<LevelSequence> {
        let layout = self.layout.as_mut()?;
        if !Self::advance_to_valid(layout) {
            self.layout = None;
            return None;
        }
        let out = LevelSequence(layout.iter().map(|l| l + 1).collect());
        if layout.len() <= 2 || !next_rooted(layout, None) {
            self.layout = None;
        }
        Some(out)
    }
}

pub fn free_trees(n: usize) -> Result<FreeTrees> {
    FreeTrees::new(n)
}

pub fn count_free_trees(n: usize) -> Result<usize> {
    Ok(free_trees(n)?.count())
}

/// Worker `index` of `count` keeps the sequences whose enumeration index is `index` mod `count`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ShardSpec {
    pub index: usize,
    pub count: usize,
}

impl ShardSpec {
    pub fn new(index: usize, count: usize) -> Result<Self> {
        if count == 0 || index >= count {
            return Err(Error::BadParam("shard index must satisfy 0 <= index < count"));
        }
        Ok(ShardSpec { index, count })
    }

    pub fn all() -> Self {
        ShardSpec { index: 0, count: 1 }
    }
}

/// The `shard` slice of [`free_trees`], as `(enumeration index, sequence)` pairs.
pub fn free_trees_shard(n: usize, shard: ShardSpec) -> Result<impl Iterator<Item = (usize, LevelSequence)>> {
    let shard = ShardSpec::new(shard.index, shard.count)?;
    Ok(free_trees(n)?.enumerate().filter(move |(i, _)| i % shard.count == shard.index))
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::collections::BTreeSet;
    use alloc::vec;

    #[test]
    fn small_counts() {
        let expected = [0, 1, 1, 1, 2, 3, 6, 11, 23, 47, 106, 235];
        for (n, &want) in expected.iter().enumerate().skip(1) {
            assert_eq!(count_free_trees(n).unwrap(), want, "n={n}");
        }
        assert!(free_trees(0).is_err());
        assert!(free_trees(25).is_err());
    }

    #[test]
    fn four_vertices() {
        let all: Vec<_> = free_trees(4).unwrap().collect();
        let codes: BTreeSet<_> = all.iter().map(|s| s.decode().unwrap().canonical_code()).collect();
        assert_eq!(all.len(), 2);
        assert!(codes.contains(&Tree::path(4).unwrap().canonical_code()));
        assert!(codes.contains(&Tree::star(3).unwrap().canonical_code()));
    }

    #[test]
    fn decode_examples() {
        assert_eq!(LevelSequence::new(vec![1, 2, 3, 4]).unwrap().decode().unwrap(), Tree::path(4).unwrap());
        assert_eq!(LevelSequence::new(vec![1, 2, 2, 2]).unwrap().decode().unwrap(), Tree::star(3).unwrap());
        assert_eq!(LevelSequence::new(vec![1]).unwrap().decode().unwrap().order(), 1);
        assert!(matches!(LevelSequence::new(vec![2, 3]), Err(Error::BadSequence(_))));
        assert!(matches!(LevelSequence::new(vec![1, 3]), Err(Error::BadSequence(_))));
        assert!(matches!(LevelSequence::new(vec![1, 2, 1]), Err(Error::BadSequence(_))));
        assert!(LevelSequence::new(vec![]).is_err());
        // parent is the nearest earlier position one level up
        let t = LevelSequence::new(vec![1, 2, 3, 2, 3, 3]).unwrap().decode().unwrap();
        assert_eq!(t.edges(), [(1, 2), (1, 4), (2, 3), (4, 5), (4, 6)]);
    }

    #[test]
    fn sharding() {
        let full: Vec<_> = free_trees(9).unwrap().collect();
        let single: Vec<_> = free_trees_shard(9, ShardSpec::all()).unwrap().map(|(_, s)| s).collect();
        assert_eq!(single, full);
        let mut seen = BTreeSet::new();
        let mut total = 0;
        for k in 0..4 {
            for (_, seq) in free_trees_shard(9, ShardSpec::new(k, 4).unwrap()).unwrap() {
                assert!(seen.insert(seq));
                total += 1;
            }
        }
        assert_eq!(total, full.len());
        assert!(ShardSpec::new(4, 4).is_err());
        assert!(ShardSpec::new(0, 0).is_err());
    }

    #[test]
    fn deterministic_order() {
        let a: Vec<_> = free_trees(10).unwrap().collect();
        let b: Vec<_> = free_trees(10).unwrap().collect();
        assert_eq!(a, b);
    }
}
