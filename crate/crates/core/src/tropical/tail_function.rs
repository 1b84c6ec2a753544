//! Tail functions: slope n_e − 1 toward every sub-tail of a chosen tail.

use std::collections::{BTreeSet, VecDeque};

use super::{MonoidElement, PLFunction, TropicalCurve};
use crate::error::{invalid, Result};
use crate::graphs::Tail;

impl TropicalCurve {
    /// Rational tails all of whose vertices carry at least three edges and legs.
    pub fn stable_tails(&self) -> Vec<Tail> {
        let g = self.graph();
        g.rational_tails()
            .into_iter()
            .filter(|t| t.vertices.iter().all(|&v| g.valence(v) + g.num_legs_at(v) >= 3))
            .collect()
    }

    /// Splits `support` into its connected pieces, each of which must be a
    /// rational tail.
    pub fn tails_of_support(&self, support: &BTreeSet<usize>) -> Result<Vec<Tail>> {
        let tails = self.graph().rational_tails();
        let mut out = Vec::new();
        let mut left = support.clone();
        while let Some(&start) = left.iter().next() {
            let piece = piece_within(self, start, support);
            let tail = tails
                .iter()
                .find(|t| t.vertices == piece)
                .ok_or_else(|| invalid(format!("support piece {piece:?} is not a rational tail")))?;
            out.push(tail.clone());
            left.retain(|v| !piece.contains(v));
        }
        Ok(out)
    }

    /// The tail function of disjoint stable tails whose union is proper.
    pub fn tail_function(&self, tails: &[Tail]) -> Result<PLFunction> {
        let g = self.graph();
        let mut covered = BTreeSet::new();
        for t in tails {
            if let Some(&v) = t.vertices.iter().find(|&&v| g.valence(v) + g.num_legs_at(v) < 3) {
                return Err(invalid(format!("tail {} is not stable at vertex {v}", t.marks)));
            }
            if !t.vertices.is_disjoint(&covered) {
                return Err(invalid(format!("tail {} overlaps another tail", t.marks)));
            }
            covered.extend(t.vertices.iter().copied());
        }
        if covered.len() == g.num_vertices() {
            return Err(invalid("tails cover every vertex"));
        }
        let mut values = vec![MonoidElement::zero(self.rank()); g.num_vertices()];
        for t in tails {
            let (a, b) = g.edges()[t.leading_edge];
            let root = if t.vertices.contains(&a) { a } else { b };
            values[root] = self.length(t.leading_edge).scaled(t.marks.len() as u64 - 1);
            let mut queue = VecDeque::from([root]);
            let mut seen = BTreeSet::from([root]);
            while let Some(p) = queue.pop_front() {
                for (e, &(x, y)) in g.edges().iter().enumerate() {
                    let c = if x == p { y } else if y == p { x } else { continue };
                    if !t.vertices.contains(&c) || !seen.insert(c) {
                        continue;
                    }
                    let below = g.component_of(c, Some(e));
                    let n_e = g.marks_on(&below).len() as u64;
                    values[c] = &values[p] + &self.length(e).scaled(n_e.saturating_sub(1));
                    queue.push_back(c);
                }
            }
        }
        Ok(PLFunction { values, leg_slopes: vec![0; g.n()] })
    }

    /// The tail function whose support is `support`.
    pub fn tail_function_on(&self, support: &BTreeSet<usize>) -> Result<PLFunction> {
        self.tail_function(&self.tails_of_support(support)?)
    }

    /// Checks that `f` is the tail function of its own support.
    pub fn is_tail_function(&self, f: &PLFunction) -> bool {
        f.values.len() == self.num_vertices() && self.tail_function_on(&f.support()).is_ok_and(|g| g == *f)
    }
}

/// Vertices of `within` reachable from `start` inside `within`.
fn piece_within(t: &TropicalCurve, start: usize, within: &BTreeSet<usize>) -> BTreeSet<usize> {
    let mut seen = BTreeSet::from([start]);
    let mut stack = vec![start];
    while let Some(v) = stack.pop() {
        for &(a, b) in t.graph().edges() {
            let w = if a == v { b } else if b == v { a } else { continue };
            if within.contains(&w) && seen.insert(w) {
                stack.push(w);
            }
        }
    }
    seen
}
