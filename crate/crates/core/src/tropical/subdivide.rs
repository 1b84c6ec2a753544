//! Subdivision of a radially aligned genus-one curve along λ = ρ.

use std::collections::BTreeSet;

use super::{MonoidElement, PLFunction, TropicalCurve};
use crate::error::{invalid, Error, Result};
use crate::graphs::MarkedGraph;

/// Where a vertex of the subdivision comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VertexOrigin {
    Vertex(usize),
    Edge(usize),
    Leg(usize),
}

#[derive(Clone, Debug)]
pub struct Subdivision {
    pub curve: TropicalCurve,
    pub lambda: PLFunction,
    /// Δ: vertices with λ < ρ.
    pub inside: BTreeSet<usize>,
    /// Δ̄: vertices with λ ≤ ρ.
    pub closed: BTreeSet<usize>,
    pub origin: Vec<VertexOrigin>,
}

impl Subdivision {
    /// Vertex of the original curve each new vertex lies on or next to.
    pub fn projection(&self, original: &TropicalCurve) -> Vec<usize> {
        self.origin
            .iter()
            .map(|o| match *o {
                VertexOrigin::Vertex(v) => v,
                VertexOrigin::Edge(e) => original.graph().edges()[e].0,
                VertexOrigin::Leg(m) => original.graph().leg_vertex(m),
            })
            .collect()
    }
}

impl TropicalCurve {
    /// Inserts a genus-0 vertex wherever λ = ρ strictly inside an edge or leg.
    ///
    /// New vertices follow the originals: edge points by edge index, then
    /// leg points by mark. A split edge keeps its index for the half nearer
    /// the core; the outer half is appended.
    pub fn subdivide_at(&self, rho: &MonoidElement) -> Result<Subdivision> {
        if rho.rank() != self.rank() {
            return Err(invalid(format!("radius has rank {}, expected {}", rho.rank(), self.rank())));
        }
        let lam = self.lambda()?;
        if let Some(v) = lam.values.iter().position(|x| !x.comparable(rho)) {
            return Err(Error::Incompatible(format!(
                "λ({v}) = {} is not comparable to ρ = {}",
                self.format(&lam.values[v]),
                self.format(rho)
            )));
        }
        let g = self.graph();
        let mut genera = g.genera().to_vec();
        let mut edges = g.edges().to_vec();
        let mut lengths = self.lengths().to_vec();
        let mut legs = g.legs().to_vec();
        let mut values = lam.values.clone();
        let mut origin: Vec<VertexOrigin> = (0..g.num_vertices()).map(VertexOrigin::Vertex).collect();

        for (e, &(a, b)) in g.edges().iter().enumerate() {
            let (near, far) = if lam.values[a].leq(&lam.values[b]) { (a, b) } else { (b, a) };
            if !(lam.values[near].lt(rho) && rho.lt(&lam.values[far])) {
                continue;
            }
            let w = genera.len();
            genera.push(0);
            values.push(rho.clone());
            origin.push(VertexOrigin::Edge(e));
            edges[e] = (near.min(w), near.max(w));
            lengths[e] = rho.checked_sub(&lam.values[near]).expect("λ(near) < ρ");
            edges.push((w.min(far), w.max(far)));
            lengths.push(lam.values[far].checked_sub(rho).expect("ρ < λ(far)"));
        }
        for (m, leg) in legs.iter_mut().enumerate() {
            let v = *leg;
            if !lam.values[v].lt(rho) {
                continue;
            }
            let w = genera.len();
            genera.push(0);
            values.push(rho.clone());
            origin.push(VertexOrigin::Leg(m + 1));
            edges.push((v, w));
            lengths.push(rho.checked_sub(&lam.values[v]).expect("λ(v) < ρ"));
            *leg = w;
        }

        let graph = MarkedGraph::new(genera, edges, legs)?;
        let curve = TropicalCurve::new(graph, lengths, self.generators().to_vec())?;
        let inside = (0..values.len()).filter(|&v| values[v].lt(rho)).collect();
        let closed = (0..values.len()).filter(|&v| values[v].leq(rho)).collect();
        let lambda = PLFunction { values, leg_slopes: lam.leg_slopes };
        Ok(Subdivision { curve, lambda, inside, closed, origin })
    }
}
