//! Weighted n-marked dual graphs: stability, rational tails and contractions.

mod enumerate;
mod extremal;

use std::collections::BTreeSet;
use std::fmt;

use itertools::Itertools;

use crate::error::{invalid, Error, Result};
use crate::marks::{MarkSet, MAX_MARKS};

pub use enumerate::{enumerate_graphs, enumerate_stable_graphs};
pub use extremal::{rho_k, z_k};

/// A connected multigraph with vertex genera and one leg per mark.
///
/// Edges are stored as `(u, v)` with `u ≤ v`; a loop has `u == v`.
/// `legs[m - 1]` is the vertex carrying mark `m`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MarkedGraph {
    genera: Vec<u32>,
    edges: Vec<(usize, usize)>,
    legs: Vec<usize>,
}

/// A genus-0 connected subgraph meeting its complement in one edge.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Tail {
    pub vertices: BTreeSet<usize>,
    pub leading_edge: usize,
    pub marks: MarkSet,
}

impl MarkedGraph {
    pub fn new(genera: Vec<u32>, edges: Vec<(usize, usize)>, legs: Vec<usize>) -> Result<Self> {
        let v = genera.len();
        if v == 0 {
            return Err(invalid("graph has no vertices"));
        }
        if legs.len() > MAX_MARKS {
            return Err(Error::OutOfRange { what: "number of legs", detail: legs.len().to_string() });
        }
        if let Some(&(a, b)) = edges.iter().find(|&&(a, b)| a >= v || b >= v) {
            return Err(invalid(format!("edge ({a}, {b}) has an endpoint outside 0..{v}")));
        }
        if let Some(m) = legs.iter().position(|&x| x >= v) {
            return Err(invalid(format!("leg {} sits on missing vertex {}", m + 1, legs[m])));
        }
        let edges = edges.into_iter().map(|(a, b)| (a.min(b), a.max(b))).collect();
        let g = MarkedGraph { genera, edges, legs };
        if !g.is_connected() {
            return Err(invalid("graph is not connected"));
        }
        Ok(g)
    }

    /// Single vertex of genus `g` carrying marks 1..=n.
    pub fn smooth(g: u32, n: usize) -> Self {
        MarkedGraph { genera: vec![g], edges: vec![], legs: vec![0; n] }
    }

    pub fn n(&self) -> usize {
        self.legs.len()
    }

    pub fn num_vertices(&self) -> usize {
        self.genera.len()
    }

    pub fn genus(&self, v: usize) -> u32 {
        self.genera[v]
    }

    pub fn genera(&self) -> &[u32] {
        &self.genera
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn legs(&self) -> &[usize] {
        &self.legs
    }

    pub fn leg_vertex(&self, mark: usize) -> usize {
        self.legs[mark - 1]
    }

    pub fn marks_at(&self, v: usize) -> MarkSet {
        self.legs.iter().enumerate().filter(|&(_, &w)| w == v).fold(MarkSet::EMPTY, |s, (m, _)| s.with(m + 1))
    }

    pub fn marks_on(&self, vertices: &BTreeSet<usize>) -> MarkSet {
        self.legs.iter().enumerate().filter(|(_, w)| vertices.contains(w)).fold(MarkSet::EMPTY, |s, (m, _)| s.with(m + 1))
    }

    /// Edge endpoints at `v`, loops counted twice.
    pub fn valence(&self, v: usize) -> usize {
        self.edges.iter().map(|&(a, b)| usize::from(a == v) + usize::from(b == v)).sum()
    }

    pub fn num_legs_at(&self, v: usize) -> usize {
        self.legs.iter().filter(|&&w| w == v).count()
    }

    /// Σ g(v) + |E| − |V| + 1.
    pub fn total_genus(&self) -> u32 {
        let sum: u32 = self.genera.iter().sum();
        sum + self.edges.len() as u32 + 1 - self.genera.len() as u32
    }

    /// Genus of the subgraph induced on `vertices`, assumed connected.
    pub fn subgraph_genus(&self, vertices: &BTreeSet<usize>) -> u32 {
        let sum: u32 = vertices.iter().map(|&v| self.genera[v]).sum();
        let internal = self.edges.iter().filter(|(a, b)| vertices.contains(a) && vertices.contains(b)).count();
        (sum as usize + internal + 1 - vertices.len()) as u32
    }

    /// Genus-0 vertices need three special points, genus-1 vertices one.
    pub fn is_stable(&self) -> bool {
        (0..self.num_vertices()).all(|v| {
            let special = self.valence(v) + self.num_legs_at(v);
            match self.genera[v] {
                0 => special >= 3,
                1 => special >= 1,
                _ => true,
            }
        })
    }

    fn is_connected(&self) -> bool {
        self.component_of(0, None).len() == self.num_vertices()
    }

    /// Vertices reachable from `start` without using edge `skip`.
    pub fn component_of(&self, start: usize, skip: Option<usize>) -> BTreeSet<usize> {
        let mut seen = BTreeSet::from([start]);
        let mut stack = vec![start];
        while let Some(v) = stack.pop() {
            for (i, &(a, b)) in self.edges.iter().enumerate() {
                if Some(i) == skip {
                    continue;
                }
                let w = if a == v { b } else if b == v { a } else { continue };
                if seen.insert(w) {
                    stack.push(w);
                }
            }
        }
        seen
    }

    /// All rational tails, ordered by leading edge and then by which side
    /// holds the lower endpoint.
    pub fn rational_tails(&self) -> Vec<Tail> {
        let mut out = Vec::new();
        for (i, &(a, b)) in self.edges.iter().enumerate() {
            if a == b {
                continue;
            }
            let side = self.component_of(a, Some(i));
            if side.contains(&b) {
                continue;
            }
            let other: BTreeSet<usize> = (0..self.num_vertices()).filter(|v| !side.contains(v)).collect();
            for s in [side, other] {
                if self.subgraph_genus(&s) == 0 {
                    let marks = self.marks_on(&s);
                    out.push(Tail { vertices: s, leading_edge: i, marks });
                }
            }
        }
        out
    }

    /// Contracts edge `e`, returning the new graph and the old-to-new vertex map.
    ///
    /// The higher endpoint merges into the lower one; a loop adds one to the genus.
    pub fn contract_edge(&self, e: usize) -> Result<(MarkedGraph, Vec<usize>)> {
        let &(a, b) = self.edges.get(e).ok_or_else(|| invalid(format!("edge {e} not found")))?;
        let mut genera = self.genera.clone();
        if a == b {
            genera[a] += 1;
            let mut edges = self.edges.clone();
            edges.remove(e);
            let map = (0..self.num_vertices()).collect();
            return Ok((MarkedGraph { genera, edges, legs: self.legs.clone() }, map));
        }
        genera[a] += genera[b];
        genera.remove(b);
        let map: Vec<usize> = (0..self.num_vertices())
            .map(|v| match v.cmp(&b) {
                std::cmp::Ordering::Less => v,
                std::cmp::Ordering::Equal => a,
                std::cmp::Ordering::Greater => v - 1,
            })
            .collect();
        let edges = self
            .edges
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != e)
            .map(|(_, &(x, y))| {
                let (x, y) = (map[x], map[y]);
                (x.min(y), x.max(y))
            })
            .collect();
        let legs = self.legs.iter().map(|&v| map[v]).collect();
        Ok((MarkedGraph { genera, edges, legs }, map))
    }

    /// Relabels vertices by `perm[old] = new` and sorts edges.
    pub fn relabeled(&self, perm: &[usize]) -> MarkedGraph {
        let mut genera = vec![0; self.genera.len()];
        for (old, &g) in self.genera.iter().enumerate() {
            genera[perm[old]] = g;
        }
        let mut edges: Vec<(usize, usize)> = self
            .edges
            .iter()
            .map(|&(a, b)| {
                let (x, y) = (perm[a], perm[b]);
                (x.min(y), x.max(y))
            })
            .collect();
        edges.sort_unstable();
        MarkedGraph { genera, edges, legs: self.legs.iter().map(|&v| perm[v]).collect() }
    }

    /// Minimal relabeling over permutations that preserve a vertex invariant.
    ///
    /// Two graphs are isomorphic (fixing marks) iff their canonical forms agree.
    pub fn canonical_form(&self) -> MarkedGraph {
        let nv = self.num_vertices();
        let invariant = |v: usize| {
            let loops = self.edges.iter().filter(|&&(a, b)| a == v && b == v).count();
            // Marked vertices first so that legs dominate the ordering.
            let marks = self.marks_at(v);
            (marks.is_empty(), marks.min_mark(), self.genera[v], self.valence(v), loops)
        };
        let mut order: Vec<usize> = (0..nv).collect();
        order.sort_by_key(|&v| invariant(v));
        let classes: Vec<Vec<usize>> =
            order.iter().copied().chunk_by(|&v| invariant(v)).into_iter().map(|(_, c)| c.collect()).collect();
        let mut best: Option<MarkedGraph> = None;
        let per_class = classes.iter().map(|c| c.iter().copied().permutations(c.len()).collect::<Vec<_>>());
        for choice in per_class.multi_cartesian_product() {
            let mut perm = vec![0; nv];
            for (new, old) in choice.iter().flatten().enumerate() {
                perm[*old] = new;
            }
            let cand = self.relabeled(&perm);
            if best.as_ref().is_none_or(|b| cand < *b) {
                best = Some(cand);
            }
        }
        // multi_cartesian_product of zero iterators yields nothing.
        best.unwrap_or_else(|| self.relabeled(&(0..nv).collect::<Vec<_>>()))
    }

    pub fn is_isomorphic(&self, other: &MarkedGraph) -> bool {
        self.n() == other.n() && self.num_vertices() == other.num_vertices() && self.canonical_form() == other.canonical_form()
    }
}

impl fmt::Debug for MarkedGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verts: Vec<String> = (0..self.num_vertices()).map(|v| format!("g{}{}", self.genera[v], self.marks_at(v).to_vec().iter().map(|m| format!(",{m}")).collect::<String>())).collect();
        write!(f, "G[{} | {:?}]", verts.join(" "), self.edges)
    }
}
