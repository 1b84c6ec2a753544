//! The extremal assignment Z_K and the reduction map it induces.

use std::collections::BTreeSet;

use super::MarkedGraph;
use crate::complexes::SimplicialComplex;
use crate::curves::{CurveModel, MarkedPoint, Singularity};
use crate::error::{invalid, Error, Result};
use crate::marks::MarkSet;

/// Union of the vertex sets of rational tails whose marks form a face of K.
pub fn z_k(g: &MarkedGraph, k: &SimplicialComplex) -> Result<BTreeSet<usize>> {
    if g.n() != k.n() {
        return Err(invalid(format!("graph has {} marks but the complex has {}", g.n(), k.n())));
    }
    if g.total_genus() == 0 && !k.is_at_least_triparted() {
        return Err(Error::NotTriparted(k.n()));
    }
    Ok(g.rational_tails().into_iter().filter(|t| k.contains(t.marks)).flat_map(|t| t.vertices).collect())
}

/// Contracts each connected piece of Z_K to a smooth point, on the retained
/// vertex it hangs from, whose collision group is the piece's marks.
pub fn rho_k(g: &MarkedGraph, k: &SimplicialComplex) -> Result<CurveModel> {
    let z = z_k(g, k)?;
    if z.len() == g.num_vertices() {
        return Err(Error::Internal("Z_K covers the whole graph".into()));
    }
    let kept: Vec<usize> = (0..g.num_vertices()).filter(|v| !z.contains(v)).collect();
    let index = |v: usize| kept.binary_search(&v).ok();
    let mut nodes = Vec::new();
    let mut points: Vec<MarkedPoint> = Vec::new();
    for &(a, b) in g.edges() {
        match (index(a), index(b)) {
            (Some(x), Some(y)) => nodes.push(Singularity::node(x, y)),
            (Some(x), None) | (None, Some(x)) => {
                let root = if index(a).is_some() { b } else { a };
                let piece: BTreeSet<usize> = component_within(g, root, &z);
                points.push(MarkedPoint { component: x, group: g.marks_on(&piece) });
            }
            (None, None) => {}
        }
    }
    for (m, &v) in g.legs().iter().enumerate() {
        if let Some(x) = index(v) {
            points.push(MarkedPoint { component: x, group: MarkSet::singleton(m + 1) });
        }
    }
    CurveModel::new(g.n(), kept.iter().map(|&v| g.genus(v)).collect(), nodes, points)
}

fn component_within(g: &MarkedGraph, start: usize, allowed: &BTreeSet<usize>) -> BTreeSet<usize> {
    let mut seen = BTreeSet::from([start]);
    let mut stack = vec![start];
    while let Some(v) = stack.pop() {
        for &(a, b) in g.edges() {
            let w = if a == v { b } else if b == v { a } else { continue };
            if allowed.contains(&w) && seen.insert(w) {
                stack.push(w);
            }
        }
    }
    seen
}

#[cfg(test)]
mod tests {
    use super::super::tests::{core_with_tail, nested_tails};
    use super::*;
    use crate::curves::is_k_stable;

    fn cx(n: usize, faces: &[&str]) -> SimplicialComplex {
        let gens: Vec<MarkSet> = faces.iter().map(|f| MarkSet::parse(f, n).unwrap()).collect();
        SimplicialComplex::from_faces(n, &gens).unwrap()
    }

    #[test]
    fn z_k_examples() {
        let nested = nested_tails(1, 4, &[1, 2], &[1, 2, 3]);
        assert_eq!(z_k(&nested, &cx(4, &["123"])).unwrap(), BTreeSet::from([1, 2]));
        assert!(z_k(&nested, &SimplicialComplex::zero_skeleton(4)).unwrap().is_empty());
        let two_tails = MarkedGraph::new(vec![1, 0, 0], vec![(0, 1), (0, 2)], vec![1, 1, 2, 2]).unwrap();
        assert_eq!(z_k(&two_tails, &cx(4, &["12"])).unwrap(), BTreeSet::from([1]));
        let genus_zero = MarkedGraph::smooth(0, 3);
        assert!(matches!(z_k(&genus_zero, &cx(3, &["12"])), Err(Error::NotTriparted(3))));
    }

    #[test]
    fn rho_k_examples() {
        let g = core_with_tail(1, 2, &[1, 2]);
        let collided = rho_k(&g, &cx(2, &["12"])).unwrap();
        assert_eq!(collided, CurveModel::smooth(2, 1, &[MarkSet::full(2)]).unwrap());
        let kept = rho_k(&g, &SimplicialComplex::zero_skeleton(2)).unwrap();
        assert_eq!(kept.num_components(), 2);
        assert_eq!(kept.points().len(), 2);

        let nested = nested_tails(2, 4, &[1, 2], &[1, 2, 3]);
        let k = cx(4, &["123"]);
        let c = rho_k(&nested, &k).unwrap();
        assert_eq!(c.num_components(), 1);
        assert_eq!(c.components()[0], 2);
        let groups: Vec<String> = c.groups().map(|g| g.to_string()).collect();
        assert_eq!(groups, ["123", "4"]);
        assert!(is_k_stable(&c, &k).unwrap().is_stable());
    }
}
