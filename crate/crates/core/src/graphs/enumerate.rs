//! Exhaustive enumeration of marked graphs up to isomorphism.

use std::collections::BTreeSet;

use itertools::Itertools;

use super::MarkedGraph;
use crate::error::{Error, Result};

/// Largest 2g − 2 + n accepted by `enumerate_stable_graphs`.
const MAX_STABLE_COMPLEXITY: usize = 6;

/// Connected unmarked multigraphs with the given total genus, up to isomorphism.
fn shapes(total_genus: u32, vertices: usize) -> Vec<MarkedGraph> {
    let mut out = BTreeSet::new();
    let pairs: Vec<(usize, usize)> = (0..vertices).flat_map(|a| (a..vertices).map(move |b| (a, b))).collect();
    for genera in genus_sequences(vertices, total_genus) {
        let used: u32 = genera.iter().sum();
        let edges = vertices - 1 + (total_genus - used) as usize;
        for chosen in pairs.iter().copied().combinations_with_replacement(edges) {
            if let Ok(g) = MarkedGraph::new(genera.clone(), chosen, vec![]) {
                out.insert(g.canonical_form());
            }
        }
    }
    out.into_iter().collect()
}

/// Non-increasing genus sequences of the given length with sum at most `max`.
fn genus_sequences(len: usize, max: u32) -> Vec<Vec<u32>> {
    fn rec(len: usize, cap: u32, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        for g in (0..=cap.min(left)).rev() {
            cur.push(g);
            rec(len, g, left - g, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(len, max, max, &mut Vec::new(), &mut out);
    out
}

/// All connected graphs of total genus `total_genus` with `n` legs and at most
/// `max_vertices` vertices that satisfy `accept`, one per isomorphism class,
/// sorted by canonical form.
pub fn enumerate_graphs(
    total_genus: u32,
    n: usize,
    max_vertices: usize,
    accept: impl Fn(&MarkedGraph) -> bool,
) -> Vec<MarkedGraph> {
    let mut out = BTreeSet::new();
    for v in 1..=max_vertices {
        for shape in shapes(total_genus, v) {
            for legs in (0..n).map(|_| 0..v).multi_cartesian_product() {
                let g = MarkedGraph { legs, ..shape.clone() };
                if accept(&g) {
                    out.insert(g.canonical_form());
                }
            }
            if n == 0 && accept(&shape) {
                out.insert(shape.canonical_form());
            }
        }
    }
    out.into_iter().collect()
}

/// Stable graphs in 𝔾_{g,n}, one per isomorphism class.
pub fn enumerate_stable_graphs(g: u32, n: usize) -> Result<Vec<MarkedGraph>> {
    let complexity = 2 * g as i64 - 2 + n as i64;
    if complexity <= 0 || complexity as usize > MAX_STABLE_COMPLEXITY {
        return Err(Error::OutOfRange {
            what: "(g, n)",
            detail: format!("({g}, {n}); need 0 < 2g - 2 + n <= {MAX_STABLE_COMPLEXITY}"),
        });
    }
    Ok(enumerate_graphs(g, n, complexity as usize, MarkedGraph::is_stable))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_counts() {
        let count = |g, n| enumerate_stable_graphs(g, n).unwrap().len();
        assert_eq!(count(1, 1), 2);
        assert_eq!(count(0, 3), 1);
        assert_eq!(count(1, 2), 5);
        // Boundary strata of the genus-0 moduli of four and five points.
        assert_eq!(count(0, 4), 4);
        assert_eq!(count(0, 5), 26);
        assert!(enumerate_stable_graphs(0, 2).is_err());
        assert!(enumerate_stable_graphs(0, 9).is_err());
    }

    #[test]
    fn enumerated_graphs_are_stable_and_distinct() {
        for (g, n) in [(0, 5), (1, 3), (0, 6)] {
            let all = enumerate_stable_graphs(g, n).unwrap();
            for (i, a) in all.iter().enumerate() {
                assert!(a.is_stable());
                assert_eq!(a.total_genus(), g);
                assert_eq!(a.n(), n);
                for b in &all[i + 1..] {
                    assert!(!a.is_isomorphic(b));
                }
            }
        }
    }

    #[test]
    fn genus_zero_six_points_matches_stratum_count() {
        // Dual trees of M̄_{0,6}: 1 + 25 + 105 + 105 strata by codimension.
        assert_eq!(enumerate_stable_graphs(0, 6).unwrap().len(), 236);
    }
}
