//! Tropical curves with edge lengths in a free monoid ℕ^r and the piecewise
//! linear functions λ and μ on them.

mod face;
mod subdivide;
mod tail_function;

use std::collections::{BTreeSet, VecDeque};
use std::fmt;
use std::ops::Add;

use crate::error::{invalid, Error, Result};
use crate::graphs::MarkedGraph;

pub use face::{pullback_tail_function, FaceContraction};
pub use subdivide::{Subdivision, VertexOrigin};

/// An element of ℕ^r, ordered componentwise.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MonoidElement(Vec<u64>);

impl MonoidElement {
    pub fn zero(rank: usize) -> Self {
        MonoidElement(vec![0; rank])
    }

    pub fn generator(rank: usize, i: usize) -> Self {
        let mut v = vec![0; rank];
        v[i] = 1;
        MonoidElement(v)
    }

    pub fn from_coeffs(coeffs: Vec<u64>) -> Self {
        MonoidElement(coeffs)
    }

    /// e_{from+1} + … + e_to, in 0-based generator indices from..to.
    pub fn generator_range(rank: usize, from: usize, to: usize) -> Self {
        MonoidElement((0..rank).map(|i| u64::from(i >= from && i < to)).collect())
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.0
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    /// Componentwise ≤.
    pub fn leq(&self, other: &Self) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn lt(&self, other: &Self) -> bool {
        self != other && self.leq(other)
    }

    pub fn comparable(&self, other: &Self) -> bool {
        self.leq(other) || other.leq(self)
    }

    pub fn checked_sub(&self, other: &Self) -> Option<Self> {
        self.0.iter().zip(&other.0).map(|(a, b)| a.checked_sub(*b)).collect::<Option<Vec<_>>>().map(MonoidElement)
    }

    pub fn scaled(&self, k: u64) -> Self {
        MonoidElement(self.0.iter().map(|c| c * k).collect())
    }

    /// Keeps only the listed coordinates, in order.
    pub fn project(&self, kept: &[usize]) -> Self {
        MonoidElement(kept.iter().map(|&i| self.0[i]).collect())
    }

    /// The integer s with `to − from = s · len`, if any; `len` must be nonzero.
    pub fn slope(from: &Self, to: &Self, len: &Self) -> Option<i64> {
        let pivot = len.0.iter().position(|&c| c != 0)?;
        let diff = |i: usize| to.0[i] as i128 - from.0[i] as i128;
        let d = diff(pivot);
        let l = len.0[pivot] as i128;
        if d % l != 0 {
            return None;
        }
        let s = d / l;
        (0..len.rank()).all(|i| diff(i) == s * len.0[i] as i128).then_some(s as i64)
    }

    /// Formats as a sum of named generators, "0" for zero.
    pub fn format(&self, names: &[String]) -> String {
        let terms: Vec<String> = self
            .0
            .iter()
            .zip(names)
            .filter(|(&c, _)| c > 0)
            .map(|(&c, name)| if c == 1 { name.clone() } else { format!("{c}{name}") })
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join("+")
        }
    }
}

impl Add for &MonoidElement {
    type Output = MonoidElement;
    fn add(self, o: &MonoidElement) -> MonoidElement {
        MonoidElement(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }
}

impl fmt::Debug for MonoidElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

/// Vertex values in the monoid and a nonnegative slope on each leg.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PLFunction {
    pub values: Vec<MonoidElement>,
    pub leg_slopes: Vec<u64>,
}

impl PLFunction {
    pub fn zero(vertices: usize, legs: usize, rank: usize) -> Self {
        PLFunction { values: vec![MonoidElement::zero(rank); vertices], leg_slopes: vec![0; legs] }
    }

    /// Vertices with nonzero value.
    pub fn support(&self) -> BTreeSet<usize> {
        (0..self.values.len()).filter(|&v| !self.values[v].is_zero()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(MonoidElement::is_zero) && self.leg_slopes.iter().all(|&s| s == 0)
    }
}

/// A marked graph with a nonzero length in ℕ^r on every edge.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TropicalCurve {
    graph: MarkedGraph,
    lengths: Vec<MonoidElement>,
    generators: Vec<String>,
}

impl TropicalCurve {
    pub fn new(graph: MarkedGraph, lengths: Vec<MonoidElement>, generators: Vec<String>) -> Result<Self> {
        if lengths.len() != graph.edges().len() {
            return Err(invalid(format!("{} lengths for {} edges", lengths.len(), graph.edges().len())));
        }
        if let Some(e) = lengths.iter().position(|l| l.rank() != generators.len()) {
            return Err(invalid(format!("length of edge {e} has rank {}, expected {}", lengths[e].rank(), generators.len())));
        }
        if let Some(e) = lengths.iter().position(MonoidElement::is_zero) {
            return Err(invalid(format!("edge {e} has zero length")));
        }
        Ok(TropicalCurve { graph, lengths, generators })
    }

    pub fn graph(&self) -> &MarkedGraph {
        &self.graph
    }

    pub fn lengths(&self) -> &[MonoidElement] {
        &self.lengths
    }

    pub fn length(&self, e: usize) -> &MonoidElement {
        &self.lengths[e]
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    pub fn num_vertices(&self) -> usize {
        self.graph.num_vertices()
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g == name)
    }

    pub fn format(&self, m: &MonoidElement) -> String {
        m.format(&self.generators)
    }

    /// Strips genus-0 leaves until none remain.
    pub fn core(&self) -> BTreeSet<usize> {
        let g = &self.graph;
        let mut alive: BTreeSet<usize> = (0..g.num_vertices()).collect();
        loop {
            let degree = |v: usize| {
                g.edges()
                    .iter()
                    .filter(|(a, b)| alive.contains(a) && alive.contains(b))
                    .map(|&(a, b)| usize::from(a == v) + usize::from(b == v))
                    .sum::<usize>()
            };
            let leaf = alive.iter().copied().find(|&v| g.genus(v) == 0 && degree(v) <= 1);
            match leaf {
                Some(v) if alive.len() > 1 => {
                    alive.remove(&v);
                }
                _ => return alive,
            }
        }
    }

    fn require_genus_one(&self) -> Result<()> {
        match self.graph.total_genus() {
            1 => Ok(()),
            g => Err(invalid(format!("λ needs genus one, the curve has genus {g}"))),
        }
    }

    /// Distance from the core, with slope 1 on every leg.
    pub fn lambda(&self) -> Result<PLFunction> {
        self.require_genus_one()?;
        let core = self.core();
        let mut values: Vec<Option<MonoidElement>> = vec![None; self.num_vertices()];
        let mut queue: VecDeque<usize> = core.iter().copied().collect();
        for &v in &core {
            values[v] = Some(MonoidElement::zero(self.rank()));
        }
        while let Some(v) = queue.pop_front() {
            for (e, &(a, b)) in self.graph.edges().iter().enumerate() {
                let w = if a == v { b } else if b == v { a } else { continue };
                if values[w].is_none() {
                    values[w] = Some(values[v].as_ref().expect("visited") + &self.lengths[e]);
                    queue.push_back(w);
                }
            }
        }
        let values = values.into_iter().map(|x| x.expect("connected")).collect();
        Ok(PLFunction { values, leg_slopes: vec![1; self.graph.n()] })
    }

    /// All λ-values pairwise comparable.
    pub fn is_radially_aligned(&self) -> Result<bool> {
        let lam = self.lambda()?;
        Ok(lam.values.iter().enumerate().all(|(i, a)| lam.values[i + 1..].iter().all(|b| a.comparable(b))))
    }

    /// Distinct nonzero λ-values in increasing order.
    pub fn radii(&self) -> Result<Vec<MonoidElement>> {
        let lam = self.lambda()?;
        let distinct: BTreeSet<MonoidElement> = lam.values.into_iter().filter(|v| !v.is_zero()).collect();
        let mut radii: Vec<MonoidElement> = distinct.into_iter().collect();
        for (i, a) in radii.iter().enumerate() {
            if let Some(b) = radii[i + 1..].iter().find(|b| !a.comparable(b)) {
                return Err(Error::Incompatible(format!(
                    "radii {} and {} are incomparable",
                    self.format(a),
                    self.format(b)
                )));
            }
        }
        radii.sort_by(|a, b| if a.leq(b) { std::cmp::Ordering::Less } else { std::cmp::Ordering::Greater });
        Ok(radii)
    }

    /// Outgoing slope of `f` at each incident position summed with the
    /// ω(Σ)-degree 2g − 2 + valence + legs.
    pub fn multidegree(&self, f: &PLFunction) -> Result<Vec<i64>> {
        let g = &self.graph;
        let mut deg: Vec<i64> = (0..g.num_vertices())
            .map(|v| 2 * i64::from(g.genus(v)) - 2 + g.valence(v) as i64 + g.num_legs_at(v) as i64)
            .collect();
        for (e, &(a, b)) in g.edges().iter().enumerate() {
            let s = MonoidElement::slope(&f.values[a], &f.values[b], &self.lengths[e])
                .ok_or_else(|| invalid(format!("slope of the function on edge {e} is not integral")))?;
            deg[a] += s;
            deg[b] -= s;
        }
        for (m, &v) in g.legs().iter().enumerate() {
            deg[v] += f.leg_slopes[m] as i64;
        }
        Ok(deg)
    }
}

impl fmt::Debug for TropicalCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let lens: Vec<String> = self.lengths.iter().map(|l| self.format(l)).collect();
        write!(f, "{:?} lengths [{}]", self.graph, lens.join(", "))
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    fn names(k: usize) -> Vec<String> {
        (1..=k).map(|i| format!("e{i}")).collect()
    }

    /// Core O (marks 3,4 off `legs_on_core`) with tail A at e1 carrying 1, 2.
    pub(crate) fn one_layer_12() -> TropicalCurve {
        let g = MarkedGraph::new(vec![1, 0], vec![(0, 1)], vec![1, 1, 0, 0]).unwrap();
        TropicalCurve::new(g, vec![MonoidElement::generator(1, 0)], names(1)).unwrap()
    }

    /// Core O; A at e1 with legs 1, 2; B at e1 + e2 with legs 3, 4.
    pub(crate) fn two_layer_example() -> TropicalCurve {
        let g = MarkedGraph::new(vec![1, 0, 0], vec![(0, 1), (0, 2)], vec![1, 1, 2, 2]).unwrap();
        let lens = vec![MonoidElement::from_coeffs(vec![1, 0]), MonoidElement::from_coeffs(vec![1, 1])];
        TropicalCurve::new(g, lens, names(2)).unwrap()
    }

    #[test]
    fn monoid_order_and_slopes() {
        let a = MonoidElement::from_coeffs(vec![1, 0]);
        let b = MonoidElement::from_coeffs(vec![1, 1]);
        let c = MonoidElement::from_coeffs(vec![0, 1]);
        assert!(a.lt(&b) && !a.comparable(&c));
        assert_eq!(b.checked_sub(&a), Some(c.clone()));
        assert_eq!(MonoidElement::slope(&b, &a, &c), Some(-1));
        assert_eq!(MonoidElement::slope(&a, &b, &b), None);
        assert_eq!(b.format(&names(2)), "e1+e2");
    }

    #[test]
    fn core_examples() {
        assert_eq!(two_layer_example().core(), BTreeSet::from([0]));
        let cycle = MarkedGraph::new(vec![0, 0, 0, 0], vec![(0, 1), (1, 2), (0, 2), (2, 3)], vec![0, 1, 3, 3]).unwrap();
        let lens = vec![MonoidElement::generator(1, 0); 4];
        let t = TropicalCurve::new(cycle, lens, names(1)).unwrap();
        assert_eq!(t.core(), BTreeSet::from([0, 1, 2]));
        let smooth = TropicalCurve::new(MarkedGraph::smooth(1, 2), vec![], vec![]).unwrap();
        assert_eq!(smooth.core(), BTreeSet::from([0]));
    }

    #[test]
    fn lambda_and_radii() {
        let t = two_layer_example();
        let lam = t.lambda().unwrap();
        let shown: Vec<String> = lam.values.iter().map(|v| t.format(v)).collect();
        assert_eq!(shown, ["0", "e1", "e1+e2"]);
        assert!(t.is_radially_aligned().unwrap());
        let radii: Vec<String> = t.radii().unwrap().iter().map(|r| t.format(r)).collect();
        assert_eq!(radii, ["e1", "e1+e2"]);

        let g = MarkedGraph::new(vec![1, 0, 0], vec![(0, 1), (0, 2)], vec![1, 1, 2, 2]).unwrap();
        let skew = TropicalCurve::new(g, vec![MonoidElement::generator(2, 0), MonoidElement::generator(2, 1)], names(2)).unwrap();
        assert!(!skew.is_radially_aligned().unwrap());
        assert!(skew.radii().is_err());

        let smooth = TropicalCurve::new(MarkedGraph::smooth(1, 2), vec![], vec![]).unwrap();
        assert!(smooth.is_radially_aligned().unwrap());
        assert!(smooth.radii().unwrap().is_empty());
        assert_eq!(smooth.lambda().unwrap().leg_slopes, [1, 1]);
    }

    #[test]
    fn zero_function_multidegree() {
        let t = two_layer_example();
        let deg = t.multidegree(&PLFunction::zero(3, 4, 2)).unwrap();
        assert_eq!(deg, [2, 1, 1]);
        assert_eq!(deg.iter().sum::<i64>(), 4);
    }

    #[test]
    fn rejects_zero_lengths() {
        let g = MarkedGraph::new(vec![1, 0], vec![(0, 1)], vec![1, 1]).unwrap();
        assert!(TropicalCurve::new(g, vec![MonoidElement::zero(1)], names(1)).is_err());
    }
}
