//! Downward-closed sets of non-discrete partitions.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{invalid, Error, Result};
use crate::marks::Partition;

/// Largest n for which `QSet::all` is offered.
const MAX_ALL_N: usize = 4;

/// A set of partitions closed under coarsening that omits the discrete one.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QSet {
    n: usize,
    partitions: BTreeSet<Partition>,
}

impl QSet {
    pub fn new(n: usize, partitions: impl IntoIterator<Item = Partition>) -> Result<Self> {
        let partitions: BTreeSet<Partition> = partitions.into_iter().collect();
        for p in &partitions {
            if p.n() != n {
                return Err(invalid(format!("partition {p} is on {} marks, expected {n}", p.n())));
            }
            if p.is_discrete() {
                return Err(invalid("Q may not contain the discrete partition"));
            }
            if let Some(c) = p.merges().into_iter().find(|c| !partitions.contains(c)) {
                return Err(invalid(format!("Q is not downward closed: {p} is in Q but {c} is not")));
            }
        }
        Ok(QSet { n, partitions })
    }

    pub fn empty(n: usize) -> Self {
        QSet { n, partitions: BTreeSet::new() }
    }

    /// Every partition with between one and `m` parts; requires m < n.
    pub fn with_at_most_parts(n: usize, m: usize) -> Result<Self> {
        if m >= n {
            return Err(Error::OutOfRange { what: "m", detail: format!("{m} (need m < n = {n})") });
        }
        Ok(QSet { n, partitions: Partition::all(n).into_iter().filter(|p| p.num_parts() <= m).collect() })
    }

    /// Parses a comma-separated list such as "1234,12/34".
    pub fn parse(s: &str, n: usize) -> Result<Self> {
        let parts = s
            .split(',')
            .map(str::trim)
            .filter(|t| !t.is_empty())
            .map(Partition::parse)
            .collect::<Result<Vec<_>>>()?;
        Self::new(n, parts)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn contains(&self, p: &Partition) -> bool {
        self.partitions.contains(p)
    }

    pub fn partitions(&self) -> impl Iterator<Item = &Partition> + '_ {
        self.partitions.iter()
    }

    pub fn len(&self) -> usize {
        self.partitions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.partitions.is_empty()
    }

    /// Every Q-set on [n], for n ≤ 4.
    pub fn all(n: usize) -> Result<Vec<QSet>> {
        if n == 0 || n > MAX_ALL_N {
            return Err(Error::OutOfRange { what: "n", detail: format!("{n} (Q-set enumeration supports 1..={MAX_ALL_N})") });
        }
        let mut candidates: Vec<Partition> = Partition::all(n).into_iter().filter(|p| !p.is_discrete()).collect();
        candidates.sort_by_key(|p| p.num_parts());
        let mut out = Vec::new();
        let mut chosen = BTreeSet::new();
        fn rec(i: usize, cands: &[Partition], chosen: &mut BTreeSet<Partition>, n: usize, out: &mut Vec<QSet>) {
            if i == cands.len() {
                out.push(QSet { n, partitions: chosen.clone() });
                return;
            }
            rec(i + 1, cands, chosen, n, out);
            if cands[i].merges().iter().all(|c| chosen.contains(c)) {
                chosen.insert(cands[i].clone());
                rec(i + 1, cands, chosen, n, out);
                chosen.remove(&cands[i]);
            }
        }
        rec(0, &candidates, &mut chosen, n, &mut out);
        out.sort();
        Ok(out)
    }
}

impl fmt::Display for QSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<&Partition> = self.partitions.iter().collect();
        parts.sort_by(|a, b| a.num_parts().cmp(&b.num_parts()).then_with(|| a.to_string().cmp(&b.to_string())));
        let shown: Vec<String> = parts.iter().map(|p| p.to_string()).collect();
        write!(f, "{{{}}}", shown.join(", "))
    }
}

impl fmt::Debug for QSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
