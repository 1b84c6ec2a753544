//! Exhaustive model sets for small n.
//!
//! Collision groups are the blocks of a set partition of [n]; the dual graph
//! then carries one leg per block.

use super::{CurveModel, MarkedPoint, Singularity};
use crate::error::Result;
use crate::graphs::{enumerate_graphs, enumerate_stable_graphs, MarkedGraph};
use crate::marks::{MarkSet, Partition};

impl CurveModel {
    /// The nodal curve with dual graph `g`, leg i carrying `groups[i - 1]`.
    pub fn from_graph(n: usize, g: &MarkedGraph, groups: &[MarkSet]) -> Result<CurveModel> {
        let nodes = g.edges().iter().map(|&(a, b)| Singularity::node(a, b)).collect();
        let points = g.legs().iter().zip(groups).map(|(&component, &group)| MarkedPoint { component, group }).collect();
        CurveModel::new(n, g.genera().to_vec(), nodes, points)
    }
}

/// Nodal models of genus g on [n] whose dual graph, with one leg per group,
/// is stable. Every K-stable curve has this shape.
pub fn nodal_models(g: u32, n: usize) -> Result<Vec<CurveModel>> {
    let mut out = Vec::new();
    for p in Partition::all(n) {
        let r = p.num_parts();
        if 2 * g as usize + r <= 2 {
            continue;
        }
        for graph in enumerate_stable_graphs(g, r)? {
            out.push(CurveModel::from_graph(n, &graph, p.blocks())?);
        }
    }
    Ok(out)
}

/// Genus-one models with an elliptic m-fold point whose rational components
/// have two special points (elliptic branches included) when incident to it
/// and three otherwise.
///
/// They arise from trees with a genus-1 hub vertex and no legs on the hub;
/// the hub becomes the elliptic point and its edges become the branches.
pub fn elliptic_models(n: usize) -> Result<Vec<CurveModel>> {
    let mut out = Vec::new();
    for p in Partition::all(n) {
        let r = p.num_parts();
        for graph in enumerate_graphs(1, r, r + 1, is_hub_graph) {
            let hub = graph.genera().iter().position(|&g| g == 1).expect("hub graphs have a genus-1 vertex");
            let renum = |v: usize| if v > hub { v - 1 } else { v };
            let mut branches = Vec::new();
            let mut sings = Vec::new();
            for &(a, b) in graph.edges() {
                match (a == hub, b == hub) {
                    (true, _) => branches.push(renum(b)),
                    (_, true) => branches.push(renum(a)),
                    _ => sings.push(Singularity::node(renum(a), renum(b))),
                }
            }
            sings.insert(0, Singularity::elliptic(branches));
            let points =
                graph.legs().iter().zip(p.blocks()).map(|(&v, &group)| MarkedPoint { component: renum(v), group }).collect();
            out.push(CurveModel::new(n, vec![0; graph.num_vertices() - 1], sings, points)?);
        }
    }
    Ok(out)
}

fn is_hub_graph(g: &MarkedGraph) -> bool {
    let hubs: Vec<usize> = (0..g.num_vertices()).filter(|&v| g.genus(v) == 1).collect();
    let [hub] = hubs[..] else { return false };
    if g.num_legs_at(hub) > 0 || g.valence(hub) == 0 || g.genera().iter().any(|&x| x > 1) {
        return false;
    }
    (0..g.num_vertices()).filter(|&v| v != hub).all(|v| {
        let next_to_hub = g.edges().iter().any(|&(a, b)| (a == hub && b == v) || (b == hub && a == v));
        let special = g.valence(v) + g.num_legs_at(v);
        special >= if next_to_hub { 2 } else { 3 }
    })
}

/// Nodal and elliptic genus-one models on [n].
pub fn genus_one_models(n: usize) -> Result<Vec<CurveModel>> {
    let mut out = nodal_models(1, n)?;
    out.extend(elliptic_models(n)?);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeSet;

    use super::*;

    #[test]
    fn one_mark_models() {
        // Smooth, and the irreducible nodal curve.
        assert_eq!(nodal_models(1, 1).unwrap().len(), 2);
        // Only the cusp.
        let ell = elliptic_models(1).unwrap();
        assert_eq!(ell.len(), 1);
        assert_eq!(ell[0].singularities()[0].branches, [0]);
    }

    #[test]
    fn two_mark_elliptic_models() {
        // Cusp with groups {12} or {1},{2}; tacnode with one mark per branch;
        // cusp whose branch carries a rational tail marked 1, 2.
        assert_eq!(elliptic_models(2).unwrap().len(), 4);
    }

    #[test]
    fn models_are_pairwise_non_isomorphic() {
        for n in 1..=3 {
            let all = genus_one_models(n).unwrap();
            let canon: BTreeSet<CurveModel> = all.iter().map(|c| c.canonical_form()).collect();
            assert_eq!(canon.len(), all.len());
            assert!(all.iter().all(|c| c.arithmetic_genus() == 1));
        }
    }
}
