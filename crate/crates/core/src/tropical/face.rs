//! Restriction to a face of the base cone: some generators are set to zero
//! and every edge whose length vanishes is contracted.

use std::collections::BTreeSet;

use super::{PLFunction, TropicalCurve};
use crate::error::{invalid, Result};
use crate::graphs::MarkedGraph;

#[derive(Clone, Debug)]
pub struct FaceContraction {
    pub curve: TropicalCurve,
    /// Old vertex to new vertex.
    pub vertex_map: Vec<usize>,
    /// Indices of the surviving generators, in order.
    pub kept_generators: Vec<usize>,
}

impl TropicalCurve {
    /// Sets the generators in `kill` to zero.
    ///
    /// Merged vertices are numbered by their smallest old id; surviving
    /// edges keep their relative order.
    pub fn face_contract(&self, kill: &BTreeSet<usize>) -> Result<FaceContraction> {
        if let Some(&i) = kill.iter().find(|&&i| i >= self.rank()) {
            return Err(invalid(format!("generator index {i} out of range")));
        }
        let kept: Vec<usize> = (0..self.rank()).filter(|i| !kill.contains(i)).collect();
        let g = self.graph();
        let lengths: Vec<_> = self.lengths().iter().map(|l| l.project(&kept)).collect();
        let vanishing: Vec<bool> = lengths.iter().map(|l| l.is_zero()).collect();

        let mut parent: Vec<usize> = (0..g.num_vertices()).collect();
        fn find(p: &mut [usize], v: usize) -> usize {
            let mut r = v;
            while p[r] != r {
                r = p[r];
            }
            p[v] = r;
            r
        }
        for (e, &(a, b)) in g.edges().iter().enumerate() {
            if vanishing[e] {
                let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
                parent[ra.max(rb)] = ra.min(rb);
            }
        }
        let roots: Vec<usize> = (0..g.num_vertices()).map(|v| find(&mut parent, v)).collect();
        let distinct: Vec<usize> = roots.iter().copied().collect::<BTreeSet<_>>().into_iter().collect();
        let vertex_map: Vec<usize> =
            roots.iter().map(|r| distinct.binary_search(r).expect("every root is listed")).collect();

        // Each contracted edge inside a class adds a cycle unless it joins two pieces.
        let mut genera = vec![0u32; distinct.len()];
        let mut sizes = vec![0i64; distinct.len()];
        let mut contracted = vec![0i64; distinct.len()];
        for v in 0..g.num_vertices() {
            genera[vertex_map[v]] += g.genus(v);
            sizes[vertex_map[v]] += 1;
        }
        for (e, &(a, _)) in g.edges().iter().enumerate() {
            if vanishing[e] {
                contracted[vertex_map[a]] += 1;
            }
        }
        for c in 0..distinct.len() {
            let cycles = contracted[c] - sizes[c] + 1;
            genera[c] += u32::try_from(cycles).expect("a class is connected");
        }

        let mut edges = Vec::new();
        let mut new_lengths = Vec::new();
        for (e, &(a, b)) in g.edges().iter().enumerate() {
            if !vanishing[e] {
                let (x, y) = (vertex_map[a], vertex_map[b]);
                edges.push((x.min(y), x.max(y)));
                new_lengths.push(lengths[e].clone());
            }
        }
        let legs = g.legs().iter().map(|&v| vertex_map[v]).collect();
        let graph = MarkedGraph::new(genera, edges, legs)?;
        let names = kept.iter().map(|&i| self.generators()[i].clone()).collect();
        let curve = TropicalCurve::new(graph, new_lengths, names)?;
        Ok(FaceContraction { curve, vertex_map, kept_generators: kept })
    }
}

/// Restricts a tail function on `source` to the face curve of `fc`.
///
/// A face vertex lies in the new support when everything that maps to it
/// lies in the old support; the values are then recomputed on the face.
pub fn pullback_tail_function(source: &TropicalCurve, fc: &FaceContraction, mu: &PLFunction) -> Result<PLFunction> {
    if !source.is_tail_function(mu) {
        return Err(invalid("the function is not a tail function"));
    }
    let old = mu.support();
    let support: BTreeSet<usize> = (0..fc.curve.num_vertices())
        .filter(|&w| (0..source.num_vertices()).filter(|&v| fc.vertex_map[v] == w).all(|v| old.contains(&v)))
        .collect();
    fc.curve.tail_function_on(&support)
}

#[cfg(test)]
mod tests {
    use super::super::tests::two_layer_example;
    use super::super::MonoidElement;
    use super::*;

    #[test]
    fn killing_nothing_is_identity() {
        let t = two_layer_example();
        let fc = t.face_contract(&BTreeSet::new()).unwrap();
        assert_eq!(fc.curve, t);
        assert_eq!(fc.vertex_map, [0, 1, 2]);
    }

    #[test]
    fn faces_of_the_two_layer_tree() {
        let t = two_layer_example();
        // e2 = 0: A and B both sit at distance e1, so the tree is 12/34.
        let f1 = t.face_contract(&BTreeSet::from([1])).unwrap();
        assert_eq!(f1.curve.num_vertices(), 3);
        assert_eq!(f1.curve.lengths(), [MonoidElement::generator(1, 0), MonoidElement::generator(1, 0)]);
        assert_eq!(f1.curve.generators(), ["e1"]);
        // e1 = 0: A merges into the core, leaving B at e2.
        let f2 = t.face_contract(&BTreeSet::from([0])).unwrap();
        assert_eq!(f2.vertex_map, [0, 0, 1]);
        assert_eq!(f2.curve.graph().genera(), [1, 0]);
        assert_eq!(f2.curve.graph().legs(), [0, 0, 1, 1]);
        assert_eq!(f2.curve.format(&f2.curve.lengths()[0]), "e2");
    }

    #[test]
    fn contraction_is_functorial() {
        let t = two_layer_example();
        let both = t.face_contract(&BTreeSet::from([0, 1])).unwrap();
        let first = t.face_contract(&BTreeSet::from([0])).unwrap();
        let then = first.curve.face_contract(&BTreeSet::from([0])).unwrap();
        assert_eq!(both.curve, then.curve);
        let composed: Vec<usize> = first.vertex_map.iter().map(|&v| then.vertex_map[v]).collect();
        assert_eq!(both.vertex_map, composed);
        assert_eq!(both.curve.graph().genera(), [1]);
    }

    #[test]
    fn tail_functions_restrict_to_faces() {
        let t = two_layer_example();
        let mu = t.tail_function(&t.stable_tails()).unwrap();
        assert_eq!(mu.support(), BTreeSet::from([1, 2]));
        let f2 = t.face_contract(&BTreeSet::from([0])).unwrap();
        let pulled = pullback_tail_function(&t, &f2, &mu).unwrap();
        assert_eq!(pulled.support(), BTreeSet::from([1]));
        assert_eq!(f2.curve.format(&pulled.values[1]), "e2");
    }
}
