//! Partition chains and the layer trees they determine.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{invalid, Error, Result};
use crate::graphs::MarkedGraph;
use crate::marks::{MarkSet, Partition};
use crate::tropical::{MonoidElement, TropicalCurve};

/// P₁ ≺ P₂ ≺ … ≺ P_k: each step a proper refinement, none discrete.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PartitionChain {
    n: usize,
    parts: Vec<Partition>,
}

impl PartitionChain {
    pub fn new(n: usize, parts: Vec<Partition>) -> Result<Self> {
        for (i, p) in parts.iter().enumerate() {
            if p.n() != n {
                return Err(invalid(format!("partition {p} is on {} marks, expected {n}", p.n())));
            }
            if p.is_discrete() {
                return Err(invalid(format!("partition {p} in a chain is discrete")));
            }
            if i > 0 && !parts[i - 1].precedes(p) {
                return Err(invalid(format!("{p} does not properly refine {}", parts[i - 1])));
            }
        }
        Ok(PartitionChain { n, parts })
    }

    /// Parses "12/34,1/2/34".
    pub fn parse(s: &str) -> Result<Self> {
        let parts = s
            .split(',')
            .map(str::trim)
            .filter(|t| !t.is_empty())
            .map(Partition::parse)
            .collect::<Result<Vec<_>>>()?;
        let n = parts.first().ok_or_else(|| invalid("empty partition chain"))?.n();
        Self::new(n, parts)
    }

    pub fn single(p: Partition) -> Result<Self> {
        Self::new(p.n(), vec![p])
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn parts(&self) -> &[Partition] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Every chain of exactly `len` partitions on [n].
    pub fn all(n: usize, len: usize) -> Vec<PartitionChain> {
        let cands: Vec<Partition> = Partition::all(n).into_iter().filter(|p| !p.is_discrete()).collect();
        let mut out = Vec::new();
        fn rec(cands: &[Partition], len: usize, cur: &mut Vec<Partition>, n: usize, out: &mut Vec<PartitionChain>) {
            if cur.len() == len {
                out.push(PartitionChain { n, parts: cur.clone() });
                return;
            }
            for p in cands {
                if cur.last().is_none_or(|q| q.precedes(p)) {
                    cur.push(p.clone());
                    rec(cands, len, cur, n, out);
                    cur.pop();
                }
            }
        }
        rec(&cands, len, &mut Vec::new(), n, &mut out);
        out
    }

    /// e₁ + … + e_i, the i-th radius of the layer tree (1-based).
    pub fn radius(&self, i: usize) -> MonoidElement {
        MonoidElement::generator_range(self.len(), 0, i)
    }
}

impl fmt::Display for PartitionChain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.parts.iter().map(ToString::to_string).collect();
        write!(f, "{}", parts.join(" ≺ "))
    }
}

impl fmt::Debug for PartitionChain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// The basic radially aligned tree whose radii cut out the chain.
///
/// One vertex per part that splits at the next layer (the last layer
/// splits into singletons). Vertex 0 is the genus-one core; the others are
/// ordered by layer and then by least mark. Generators are named e1..ek.
pub fn chain_to_layer_tree(chain: &PartitionChain) -> TropicalCurve {
    let (n, k) = (chain.n(), chain.len());
    let discrete = Partition::discrete(n);
    // (layer, block) of every branching vertex after the core.
    let mut branching: Vec<(usize, MarkSet)> = Vec::new();
    for (i, p) in chain.parts().iter().enumerate() {
        let next = chain.parts().get(i + 1).unwrap_or(&discrete);
        branching.extend(p.blocks().iter().filter(|&&b| !next.has_block(b)).map(|&b| (i + 1, b)));
    }
    let mut edges = Vec::new();
    let mut lengths = Vec::new();
    for (idx, &(layer, block)) in branching.iter().enumerate() {
        let parent = branching[..idx]
            .iter()
            .enumerate()
            .rev()
            .find(|(_, &(l, b))| l < layer && block.is_subset(b))
            .map(|(j, &(l, _))| (j + 1, l))
            .unwrap_or((0, 0));
        edges.push((parent.0, idx + 1));
        lengths.push(MonoidElement::generator_range(k, parent.1, layer));
    }
    let legs = (1..=n)
        .map(|m| branching.iter().rposition(|&(_, b)| b.contains(m)).map_or(0, |j| j + 1))
        .collect();
    let mut genera = vec![0; branching.len() + 1];
    genera[0] = 1;
    let graph = MarkedGraph::new(genera, edges, legs).expect("layer trees are connected");
    let names = (1..=k).map(|i| format!("e{i}")).collect();
    TropicalCurve::new(graph, lengths, names).expect("layer tree lengths are nonzero")
}

/// Part(ρ): marks grouped by the connected pieces of the locus λ ≥ ρ.
pub fn part_at_radius(curve: &TropicalCurve, rho: &MonoidElement) -> Result<Partition> {
    if !curve.radii()?.contains(rho) {
        return Err(Error::OutOfRange { what: "radius", detail: curve.format(rho) });
    }
    let sub = curve.subdivide_at(rho)?;
    let g = sub.curve.graph();
    let outside: BTreeSet<usize> = (0..g.num_vertices()).filter(|v| !sub.inside.contains(v)).collect();
    let mut blocks = Vec::new();
    let mut left = outside.clone();
    while let Some(&start) = left.iter().next() {
        let mut piece = BTreeSet::from([start]);
        let mut stack = vec![start];
        while let Some(v) = stack.pop() {
            for &(a, b) in g.edges() {
                let w = if a == v { b } else if b == v { a } else { continue };
                if outside.contains(&w) && piece.insert(w) {
                    stack.push(w);
                }
            }
        }
        let marks = g.marks_on(&piece);
        if !marks.is_empty() {
            blocks.push(marks);
        }
        left.retain(|v| !piece.contains(v));
    }
    Partition::new(curve.graph().n(), blocks)
}
