//! Subsets of the marking set {1..n} and set partitions of it.
//!
//! A [`MarkSet`] is a bitmask with bit `i - 1` standing for mark `i`. A
//! [`Partition`] keeps its blocks sorted by least element.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{invalid, Error, Result};

/// Largest supported number of markings.
pub const MAX_MARKS: usize = 32;

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct MarkSet(u32);

impl MarkSet {
    pub const EMPTY: MarkSet = MarkSet(0);

    pub const fn from_bits(bits: u32) -> Self {
        MarkSet(bits)
    }

    pub const fn bits(self) -> u32 {
        self.0
    }

    /// The full set {1..n}.
    pub fn full(n: usize) -> Self {
        debug_assert!(n <= MAX_MARKS);
        if n >= 32 {
            MarkSet(u32::MAX)
        } else {
            MarkSet((1u32 << n) - 1)
        }
    }

    pub fn singleton(mark: usize) -> Self {
        debug_assert!((1..=MAX_MARKS).contains(&mark));
        MarkSet(1 << (mark - 1))
    }

    /// Builds a set from 1-based marks, rejecting 0 and marks above `n`.
    pub fn from_marks<I: IntoIterator<Item = usize>>(n: usize, marks: I) -> Result<Self> {
        let mut bits = 0u32;
        for m in marks {
            if m == 0 || m > n || m > MAX_MARKS {
                return Err(invalid(format!("mark {m} outside 1..={n}")));
            }
            bits |= 1 << (m - 1);
        }
        Ok(MarkSet(bits))
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, mark: usize) -> bool {
        (1..=MAX_MARKS).contains(&mark) && self.0 & (1 << (mark - 1)) != 0
    }

    pub fn with(self, mark: usize) -> Self {
        self | MarkSet::singleton(mark)
    }

    pub fn without(self, mark: usize) -> Self {
        MarkSet(self.0 & !MarkSet::singleton(mark).0)
    }

    pub fn is_subset(self, other: MarkSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_disjoint(self, other: MarkSet) -> bool {
        self.0 & other.0 == 0
    }

    pub fn minus(self, other: MarkSet) -> Self {
        MarkSet(self.0 & !other.0)
    }

    /// Least mark, if any.
    pub fn min_mark(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize + 1)
    }

    /// Greatest mark, if any.
    pub fn max_mark(self) -> Option<usize> {
        (self.0 != 0).then(|| 32 - self.0.leading_zeros() as usize)
    }

    /// Marks in increasing order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let m = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(m + 1)
            }
        })
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }

    /// Image under a permutation given as `perm[i - 1] = σ(i)`.
    pub fn permuted(self, perm: &[usize]) -> Self {
        MarkSet(self.iter().fold(0, |acc, m| acc | 1 << (perm[m - 1] - 1)))
    }

    /// Order by size, then lexicographically on the sorted mark lists.
    pub fn canonical_cmp(self, other: MarkSet) -> Ordering {
        self.len().cmp(&other.len()).then_with(|| lex_cmp(self, other))
    }

    /// Parses a comma list such as "1,2,10".
    pub fn parse_list(s: &str, n: usize) -> Result<Self> {
        let marks: Vec<usize> = s
            .split(',')
            .map(|t| t.trim().parse::<usize>().map_err(|_| invalid(format!("bad mark {t:?}"))))
            .collect::<Result<_>>()?;
        let set = MarkSet::from_marks(n, marks.iter().copied())?;
        if set.len() != marks.len() {
            return Err(invalid(format!("repeated mark in {s:?}")));
        }
        Ok(set)
    }

    /// Parses "124" (digit marks) or "1,2,10" (comma list).
    pub fn parse(s: &str, n: usize) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(MarkSet::EMPTY);
        }
        if s.contains(',') {
            return MarkSet::parse_list(s, n);
        }
        let marks: Vec<usize> = s
            .chars()
            .map(|c| {
                c.to_digit(10)
                    .map(|d| d as usize)
                    .ok_or_else(|| invalid(format!("bad mark {c:?} in {s:?}")))
            })
            .collect::<Result<_>>()?;
        let set = MarkSet::from_marks(n, marks.iter().copied())?;
        if set.len() != marks.len() {
            return Err(invalid(format!("repeated mark in {s:?}")));
        }
        Ok(set)
    }
}

/// Lexicographic order on sorted mark lists (a proper prefix sorts first).
fn lex_cmp(a: MarkSet, b: MarkSet) -> Ordering {
    let diff = a.0 ^ b.0;
    if diff == 0 {
        return Ordering::Equal;
    }
    let low = diff & diff.wrapping_neg();
    let below = low - 1;
    // One set ends before the first difference: it is a prefix of the other.
    if a.0 & !below == 0 {
        return Ordering::Less;
    }
    if b.0 & !below == 0 {
        return Ordering::Greater;
    }
    if a.0 & low != 0 {
        Ordering::Less
    } else {
        Ordering::Greater
    }
}

impl std::ops::BitOr for MarkSet {
    type Output = MarkSet;
    fn bitor(self, rhs: MarkSet) -> MarkSet {
        MarkSet(self.0 | rhs.0)
    }
}

impl std::ops::BitAnd for MarkSet {
    type Output = MarkSet;
    fn bitand(self, rhs: MarkSet) -> MarkSet {
        MarkSet(self.0 & rhs.0)
    }
}

impl std::ops::BitOrAssign for MarkSet {
    fn bitor_assign(&mut self, rhs: MarkSet) {
        self.0 |= rhs.0;
    }
}

impl fmt::Display for MarkSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.max_mark().unwrap_or(0) <= 9 {
            for m in self.iter() {
                write!(f, "{m}")?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.iter().map(|m| m.to_string()).collect();
            f.write_str(&parts.join(","))
        }
    }
}

impl fmt::Debug for MarkSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{self}}}")
    }
}

/// A set partition of {1..n}; blocks are nonempty and sorted by least mark.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    n: usize,
    blocks: Vec<MarkSet>,
}

impl Partition {
    pub fn new(n: usize, blocks: Vec<MarkSet>) -> Result<Self> {
        if n == 0 || n > MAX_MARKS {
            return Err(Error::OutOfRange { what: "n", detail: format!("{n}") });
        }
        let mut seen = MarkSet::EMPTY;
        for &b in &blocks {
            if b.is_empty() {
                return Err(invalid("empty block in partition"));
            }
            if !b.is_subset(MarkSet::full(n)) {
                return Err(invalid(format!("block {b} outside 1..={n}")));
            }
            if !b.is_disjoint(seen) {
                return Err(invalid(format!("block {b} overlaps another block")));
            }
            seen |= b;
        }
        if seen != MarkSet::full(n) {
            return Err(invalid(format!("blocks do not cover 1..={n}")));
        }
        Ok(Self::from_blocks_unchecked(n, blocks))
    }

    pub(crate) fn from_blocks_unchecked(n: usize, mut blocks: Vec<MarkSet>) -> Self {
        blocks.sort_by_key(|b| b.min_mark());
        Partition { n, blocks }
    }

    pub fn discrete(n: usize) -> Self {
        Self::from_blocks_unchecked(n, (1..=n).map(MarkSet::singleton).collect())
    }

    pub fn single_block(n: usize) -> Self {
        Partition { n, blocks: vec![MarkSet::full(n)] }
    }

    /// P(I): the partition whose only large part is `part`.
    pub fn with_large_part(n: usize, part: MarkSet) -> Self {
        let mut blocks = vec![part];
        blocks.extend(MarkSet::full(n).minus(part).iter().map(MarkSet::singleton));
        Self::from_blocks_unchecked(n, blocks)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn blocks(&self) -> &[MarkSet] {
        &self.blocks
    }

    pub fn num_parts(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_discrete(&self) -> bool {
        self.blocks.len() == self.n
    }

    pub fn large_parts(&self) -> impl Iterator<Item = MarkSet> + '_ {
        self.blocks.iter().copied().filter(|b| b.len() >= 2)
    }

    pub fn block_of(&self, mark: usize) -> Option<MarkSet> {
        self.blocks.iter().copied().find(|b| b.contains(mark))
    }

    pub fn has_block(&self, block: MarkSet) -> bool {
        self.blocks.contains(&block)
    }

    /// True iff every block of `self` lies inside a block of `other`.
    pub fn refines(&self, other: &Partition) -> bool {
        self.n == other.n
            && self.blocks.iter().all(|b| other.blocks.iter().any(|c| b.is_subset(*c)))
    }

    /// P ≺ Q: `finer` is a proper refinement of `self`.
    pub fn precedes(&self, finer: &Partition) -> bool {
        self != finer && finer.refines(self)
    }

    /// Partitions obtained by merging two blocks.
    pub fn merges(&self) -> Vec<Partition> {
        let mut out = Vec::new();
        for i in 0..self.blocks.len() {
            for j in i + 1..self.blocks.len() {
                let mut blocks: Vec<MarkSet> = self
                    .blocks
                    .iter()
                    .enumerate()
                    .filter(|&(k, _)| k != i && k != j)
                    .map(|(_, &b)| b)
                    .collect();
                blocks.push(self.blocks[i] | self.blocks[j]);
                out.push(Self::from_blocks_unchecked(self.n, blocks));
            }
        }
        out
    }

    /// All set partitions of {1..n}, in restricted-growth-string order.
    pub fn all(n: usize) -> Vec<Partition> {
        let mut out = Vec::new();
        let mut blocks: Vec<MarkSet> = Vec::new();
        fn rec(m: usize, n: usize, blocks: &mut Vec<MarkSet>, out: &mut Vec<Partition>) {
            if m > n {
                out.push(Partition::from_blocks_unchecked(n, blocks.clone()));
                return;
            }
            for i in 0..blocks.len() {
                let saved = blocks[i];
                blocks[i] = saved.with(m);
                rec(m + 1, n, blocks, out);
                blocks[i] = saved;
            }
            blocks.push(MarkSet::singleton(m));
            rec(m + 1, n, blocks, out);
            blocks.pop();
        }
        if n > 0 {
            rec(1, n, &mut blocks, &mut out);
        }
        out
    }

    /// Parses "12/34"; blocks may be comma lists ("1,10/2,3") when n > 9.
    pub fn parse(s: &str) -> Result<Self> {
        let raw: Vec<&str> = s.trim().split('/').collect();
        let comma = s.contains(',');
        let count: usize = raw
            .iter()
            .map(|t| if comma { t.split(',').count() } else { t.trim().chars().count() })
            .sum();
        let blocks = raw
            .iter()
            .map(|t| {
                let t = t.trim();
                if comma {
                    MarkSet::parse_list(t, count)
                } else {
                    MarkSet::parse(t, count)
                }
            })
            .collect::<Result<Vec<_>>>()
            .map_err(|e| invalid(format!("partition {s:?}: {e}")))?;
        Partition::new(count, blocks)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.blocks.iter().map(|b| b.to_string()).collect();
        f.write_str(&parts.join("/"))
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
