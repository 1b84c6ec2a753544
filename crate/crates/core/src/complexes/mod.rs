//! Simplicial complexes on the marking set {1..n}.
//!
//! The empty set and all singletons are members of every complex and are not
//! stored. Faces of size at least two are kept as mark bitmasks.

mod enumerate;
mod threshold;

use std::collections::BTreeSet;
use std::fmt;

use itertools::Itertools;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{invalid, Error, Result};
use crate::marks::{MarkSet, Partition, MAX_MARKS};

pub use enumerate::{count_complexes, count_complexes_up_to_iso, enumerate_complexes, visit_complexes, MAX_ENUMERATION_N};
pub use threshold::{count_threshold, count_threshold_up_to_iso, is_threshold, shifted_threshold_classes};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SimplicialComplex {
    n: usize,
    faces: BTreeSet<MarkSet>,
}

impl SimplicialComplex {
    /// Smallest complex on [n] containing every generator.
    pub fn from_faces(n: usize, generators: &[MarkSet]) -> Result<Self> {
        check_n(n)?;
        let full = MarkSet::full(n);
        let mut faces = BTreeSet::new();
        for &g in generators {
            if !g.is_subset(full) {
                return Err(invalid(format!("generator {g} is not a subset of 1..={n}")));
            }
            close_into(g, &mut faces);
        }
        Ok(SimplicialComplex { n, faces })
    }

    /// Builds from a family already known to be downward closed.
    pub(crate) fn from_closed_unchecked(n: usize, faces: BTreeSet<MarkSet>) -> Self {
        SimplicialComplex { n, faces }
    }

    pub fn zero_skeleton(n: usize) -> Self {
        SimplicialComplex { n, faces: BTreeSet::new() }
    }

    pub fn full_simplex(n: usize) -> Self {
        Self::from_faces(n, &[MarkSet::full(n)]).expect("n validated by caller")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Membership, with ∅ and singletons always present.
    pub fn contains(&self, set: MarkSet) -> bool {
        set.is_subset(MarkSet::full(self.n)) && (set.len() <= 1 || self.faces.contains(&set))
    }

    /// Stored faces (size ≥ 2) in canonical (size, lexicographic) order.
    pub fn faces(&self) -> Vec<MarkSet> {
        let mut v: Vec<MarkSet> = self.faces.iter().copied().collect();
        v.sort_by(|a, b| a.canonical_cmp(*b));
        v
    }

    pub fn num_faces(&self) -> usize {
        self.faces.len()
    }

    /// Inclusion-maximal faces, singletons included when isolated.
    pub fn maximal_faces(&self) -> Vec<MarkSet> {
        let mut out: Vec<MarkSet> = self
            .faces
            .iter()
            .copied()
            .filter(|&f| !self.faces.iter().any(|&g| g != f && f.is_subset(g)))
            .collect();
        for m in 1..=self.n {
            if !self.faces.iter().any(|f| f.contains(m)) {
                out.push(MarkSet::singleton(m));
            }
        }
        out.sort_by(|a, b| a.canonical_cmp(*b));
        out
    }

    /// Non-faces all of whose codimension-one subsets are faces.
    pub fn minimal_nonfaces(&self) -> Vec<MarkSet> {
        let mut out = BTreeSet::new();
        let singletons = (1..=self.n).map(MarkSet::singleton);
        for f in singletons.chain(self.faces.iter().copied()) {
            for x in MarkSet::full(self.n).minus(f).iter() {
                let g = f.with(x);
                if !self.contains(g) && g.iter().all(|y| self.contains(g.without(y))) {
                    out.insert(g);
                }
            }
        }
        let mut v: Vec<MarkSet> = out.into_iter().collect();
        v.sort_by(|a, b| a.canonical_cmp(*b));
        v
    }

    /// All set partitions of [n] whose parts are faces, finest first.
    pub fn k_partitions(&self) -> Vec<Partition> {
        let mut out = Vec::new();
        let mut blocks = Vec::new();
        self.partition_rec(MarkSet::full(self.n), &mut blocks, &mut out);
        out.sort_by(|a, b| b.num_parts().cmp(&a.num_parts()).then_with(|| a.to_string().cmp(&b.to_string())));
        out
    }

    fn partition_rec(&self, rest: MarkSet, blocks: &mut Vec<MarkSet>, out: &mut Vec<Partition>) {
        let Some(first) = rest.min_mark() else {
            out.push(Partition::new(self.n, blocks.clone()).expect("blocks cover [n]"));
            return;
        };
        let others = rest.without(first);
        // Enumerate subsets of `others` to join `first`.
        let bits = others.bits();
        let mut sub = bits;
        loop {
            let block = MarkSet::from_bits(sub).with(first);
            if self.contains(block) {
                blocks.push(block);
                self.partition_rec(rest.minus(block), blocks, out);
                blocks.pop();
            }
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & bits;
        }
    }

    /// False iff some K-partition has at most two parts.
    pub fn is_at_least_triparted(&self) -> bool {
        let full = MarkSet::full(self.n);
        if self.contains(full) {
            return false;
        }
        let singletons = (1..=self.n).map(MarkSet::singleton);
        !singletons.chain(self.faces.iter().copied()).any(|f| {
            let rest = full.minus(f);
            !rest.is_empty() && self.contains(rest)
        })
    }

    /// Faces are the sets of size ≥ 2 with weight sum at most one.
    pub fn from_weights(weights: &WeightVector) -> Self {
        let n = weights.len();
        let mut faces = BTreeSet::new();
        let mut frontier: Vec<MarkSet> = (1..=n).map(MarkSet::singleton).collect();
        // Grow faces one mark at a time; sums are monotone under inclusion.
        while let Some(f) = frontier.pop() {
            let start = f.max_mark().unwrap_or(0) + 1;
            for x in start..=n {
                let g = f.with(x);
                if weights.sum(g) <= BigRational::one() && faces.insert(g) {
                    frontier.push(g);
                }
            }
        }
        SimplicialComplex { n, faces }
    }

    /// Image under `perm[i - 1] = σ(i)`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        SimplicialComplex { n: self.n, faces: self.faces.iter().map(|f| f.permuted(perm)).collect() }
    }

    /// Least relabeling; equal exactly for isomorphic complexes.
    pub fn canonical_form(&self) -> Self {
        (1..=self.n).permutations(self.n).map(|p| self.permuted(&p)).min().expect("n ≥ 1")
    }

    /// Parses the text form "n:12/34" (comma lists for n > 9).
    pub fn parse(s: &str) -> Result<Self> {
        let (n_str, body) = s.split_once(':').ok_or_else(|| invalid(format!("expected \"n:faces\", got {s:?}")))?;
        let n: usize = n_str.trim().parse().map_err(|_| invalid(format!("bad n in {s:?}")))?;
        check_n(n)?;
        let gens = parse_face_list(body, n, '/')?;
        Self::from_faces(n, &gens)
    }
}

/// Parses a separator-delimited list of faces; commas inside faces when n > 9.
pub fn parse_face_list(body: &str, n: usize, sep: char) -> Result<Vec<MarkSet>> {
    body.split(sep)
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| if n > 9 { MarkSet::parse_list(t, n) } else { MarkSet::parse(t, n) })
        .collect()
}

fn check_n(n: usize) -> Result<()> {
    if n == 0 || n > MAX_MARKS {
        return Err(Error::OutOfRange { what: "n", detail: format!("{n} (need 1..={MAX_MARKS})") });
    }
    Ok(())
}

fn close_into(g: MarkSet, faces: &mut BTreeSet<MarkSet>) {
    if g.len() < 2 || faces.contains(&g) {
        return;
    }
    faces.insert(g);
    for x in g.iter() {
        close_into(g.without(x), faces);
    }
}

impl fmt::Display for SimplicialComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let faces: Vec<String> = self
            .maximal_faces()
            .iter()
            .map(|m| if self.n > 9 { m.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",") } else { m.to_string() })
            .collect();
        write!(f, "{}:{}", self.n, faces.join("/"))
    }
}

impl fmt::Debug for SimplicialComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Weights a_1..a_n with 0 < a_i ≤ 1, exact.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct WeightVector(Vec<BigRational>);

impl WeightVector {
    pub fn new(a: Vec<BigRational>) -> Result<Self> {
        if a.is_empty() || a.len() > MAX_MARKS {
            return Err(Error::OutOfRange { what: "weight vector length", detail: a.len().to_string() });
        }
        for (i, w) in a.iter().enumerate() {
            if !w.is_positive() || *w > BigRational::one() {
                return Err(invalid(format!("weight a_{} = {w} not in (0, 1]", i + 1)));
            }
        }
        Ok(WeightVector(a))
    }

    /// Parses "1/2,1/3,1".
    pub fn parse(s: &str) -> Result<Self> {
        let a = s
            .split(',')
            .map(|t| t.trim().parse::<BigRational>().map_err(|_| invalid(format!("bad weight {t:?}"))))
            .collect::<Result<Vec<_>>>()?;
        Self::new(a)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, mark: usize) -> &BigRational {
        &self.0[mark - 1]
    }

    pub fn values(&self) -> &[BigRational] {
        &self.0
    }

    pub fn sum(&self, set: MarkSet) -> BigRational {
        set.iter().fold(BigRational::zero(), |acc, m| acc + &self.0[m - 1])
    }
}

impl fmt::Display for WeightVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|w| w.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

impl fmt::Debug for WeightVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cx(n: usize, faces: &[&str]) -> SimplicialComplex {
        let gens: Vec<MarkSet> = faces.iter().map(|f| MarkSet::parse(f, n).unwrap()).collect();
        SimplicialComplex::from_faces(n, &gens).unwrap()
    }

    fn names(v: &[MarkSet]) -> Vec<String> {
        v.iter().map(|f| f.to_string()).collect()
    }

    fn w(s: &str) -> WeightVector {
        WeightVector::parse(s).unwrap()
    }

    #[test]
    fn closure_examples() {
        assert_eq!(cx(3, &[]).num_faces(), 0);
        assert_eq!(names(&cx(3, &["123"]).faces()), ["12", "13", "23", "123"]);
        assert_eq!(names(&cx(5, &["12", "34"]).faces()), ["12", "34"]);
        assert!(SimplicialComplex::from_faces(0, &[]).is_err());
        assert!(SimplicialComplex::from_faces(2, &[MarkSet::parse("13", 3).unwrap()]).is_err());
    }

    #[test]
    fn k_partition_examples() {
        let shown = |k: &SimplicialComplex| k.k_partitions().iter().map(|p| p.to_string()).collect::<Vec<_>>();
        assert_eq!(shown(&cx(3, &[])), ["1/2/3"]);
        assert_eq!(shown(&cx(3, &["12"])), ["1/2/3", "12/3"]);
        assert_eq!(shown(&SimplicialComplex::full_simplex(2)), ["1/2", "12"]);
    }

    #[test]
    fn triparted_examples() {
        assert!(cx(3, &[]).is_at_least_triparted());
        assert!(!SimplicialComplex::full_simplex(3).is_at_least_triparted());
        assert!(!cx(4, &["12", "34"]).is_at_least_triparted());
        assert!(!cx(2, &[]).is_at_least_triparted());
        assert!(cx(4, &["12"]).is_at_least_triparted());
    }

    #[test]
    fn triparted_agrees_with_partition_scan() {
        for n in 1..=5 {
            for k in enumerate_complexes(n, false).unwrap() {
                let scan = k.k_partitions().iter().all(|p| p.num_parts() >= 3);
                assert_eq!(k.is_at_least_triparted(), scan, "{k}");
            }
        }
    }

    #[test]
    fn weight_examples() {
        assert_eq!(SimplicialComplex::from_weights(&w("1,1,1")), cx(3, &[]));
        assert_eq!(SimplicialComplex::from_weights(&w("1/2,1/2,1/2")), cx(3, &["12", "13", "23"]));
        assert_eq!(SimplicialComplex::from_weights(&w("1/3,1/3,1/3")), SimplicialComplex::full_simplex(3));
        assert!(WeightVector::parse("0,1").is_err());
        assert!(WeightVector::parse("3/2").is_err());
    }

    #[test]
    fn maximal_faces_and_minimal_nonfaces() {
        let k = cx(5, &["12", "34"]);
        assert_eq!(names(&k.maximal_faces()), ["5", "12", "34"]);
        assert_eq!(names(&k.minimal_nonfaces()), ["13", "14", "15", "23", "24", "25", "35", "45"]);
        let t = cx(3, &["12", "13", "23"]);
        assert_eq!(names(&t.minimal_nonfaces()), ["123"]);
    }

    #[test]
    fn text_round_trip() {
        let k = cx(5, &["12", "34"]);
        assert_eq!(k.to_string(), "5:5/12/34");
        assert_eq!(SimplicialComplex::parse(&k.to_string()).unwrap(), k);
        let wide = cx(11, &["1,10,11"]);
        assert_eq!(SimplicialComplex::parse(&wide.to_string()).unwrap(), wide);
    }
}
