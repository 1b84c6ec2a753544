//! Combinatorial types of pointed curves: nodal curves with collided markings
//! and genus-one Gorenstein curves with one elliptic m-fold point.

mod enumerate;
mod qset;
mod stability;

use std::collections::BTreeSet;
use std::fmt;

use itertools::Itertools;

use crate::error::{invalid, Error, Result};
use crate::marks::{MarkSet, Partition, MAX_MARKS};

pub use enumerate::{elliptic_models, genus_one_models, nodal_models};
pub use qset::QSet;
pub use stability::{
    collision_complex, collision_weights, is_hassett_stable, is_k_stable, is_ma_stable, is_qk_stable, is_qk_stable_with, ma_to_qk, Q6Mode,
    StabilityReport, Violation,
};

/// A node (genus 0, two branch slots) or an elliptic m-fold point (genus 1).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Singularity {
    pub genus: u32,
    pub branches: Vec<usize>,
}

impl Singularity {
    pub fn node(a: usize, b: usize) -> Self {
        Singularity { genus: 0, branches: vec![a.min(b), a.max(b)] }
    }

    pub fn elliptic(mut branches: Vec<usize>) -> Self {
        branches.sort_unstable();
        Singularity { genus: 1, branches }
    }

    pub fn is_node(&self) -> bool {
        self.genus == 0
    }
}

/// A smooth point of a component where the marks of `group` coincide.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MarkedPoint {
    pub component: usize,
    pub group: MarkSet,
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CurveModel {
    n: usize,
    components: Vec<u32>,
    singularities: Vec<Singularity>,
    points: Vec<MarkedPoint>,
}

/// A genus-0 connected subcurve meeting the rest of the curve in one node.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveTail {
    pub components: BTreeSet<usize>,
    pub node: usize,
    pub marks: MarkSet,
}

impl CurveModel {
    pub fn new(n: usize, components: Vec<u32>, singularities: Vec<Singularity>, points: Vec<MarkedPoint>) -> Result<Self> {
        if n == 0 || n > MAX_MARKS {
            return Err(Error::OutOfRange { what: "n", detail: n.to_string() });
        }
        if components.is_empty() {
            return Err(invalid("curve has no components"));
        }
        let nc = components.len();
        let mut singularities = singularities;
        for s in &mut singularities {
            if let Some(&b) = s.branches.iter().find(|&&b| b >= nc) {
                return Err(invalid(format!("branch on missing component {b}")));
            }
            match s.genus {
                0 if s.branches.len() == 2 => {}
                0 => return Err(invalid(format!("node with {} branches", s.branches.len()))),
                1 if !s.branches.is_empty() => {}
                1 => return Err(invalid("elliptic singularity without branches")),
                g => return Err(invalid(format!("singularity of genus {g} is not supported"))),
            }
            s.branches.sort_unstable();
        }
        let mut seen = MarkSet::EMPTY;
        for p in &points {
            if p.component >= nc {
                return Err(invalid(format!("marked point on missing component {}", p.component)));
            }
            if p.group.is_empty() || !p.group.is_subset(MarkSet::full(n)) {
                return Err(invalid(format!("collision group {} is empty or outside 1..={n}", p.group)));
            }
            if !p.group.is_disjoint(seen) {
                return Err(invalid(format!("mark of group {} appears twice", p.group)));
            }
            seen |= p.group;
        }
        if seen != MarkSet::full(n) {
            return Err(invalid(format!("marks {} are missing", MarkSet::full(n).minus(seen))));
        }
        let mut points = points;
        points.sort_by_key(|p| (p.component, p.group.min_mark()));
        let c = CurveModel { n, components, singularities, points };
        let elliptic = c.singularities.iter().filter(|s| !s.is_node()).count();
        if elliptic > 1 {
            return Err(invalid("more than one elliptic singularity"));
        }
        if !c.is_connected() {
            return Err(invalid("curve is not connected"));
        }
        if elliptic == 1 && (c.components.iter().any(|&g| g > 0) || c.arithmetic_genus() != 1) {
            return Err(invalid("an elliptic singularity requires rational components and arithmetic genus one"));
        }
        Ok(c)
    }

    /// Smooth genus-g curve with the given collision groups.
    pub fn smooth(n: usize, genus: u32, groups: &[MarkSet]) -> Result<Self> {
        let points = groups.iter().map(|&group| MarkedPoint { component: 0, group }).collect();
        Self::new(n, vec![genus], vec![], points)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn components(&self) -> &[u32] {
        &self.components
    }

    pub fn num_components(&self) -> usize {
        self.components.len()
    }

    pub fn singularities(&self) -> &[Singularity] {
        &self.singularities
    }

    pub fn points(&self) -> &[MarkedPoint] {
        &self.points
    }

    pub fn groups(&self) -> impl Iterator<Item = MarkSet> + '_ {
        self.points.iter().map(|p| p.group)
    }

    /// Index of the elliptic singularity, if any.
    pub fn elliptic(&self) -> Option<usize> {
        self.singularities.iter().position(|s| !s.is_node())
    }

    pub fn is_nodal(&self) -> bool {
        self.elliptic().is_none()
    }

    pub fn arithmetic_genus(&self) -> u32 {
        self.subcurve_genus(&(0..self.num_components()).collect())
    }

    /// Arithmetic genus of the subcurve on `comps`; a singularity with k of its
    /// m branches in `comps` adds k − 1, plus its genus when k = m.
    pub fn subcurve_genus(&self, comps: &BTreeSet<usize>) -> u32 {
        let mut total: i64 = comps.iter().map(|&v| i64::from(self.components[v])).sum();
        for s in &self.singularities {
            let k = s.branches.iter().filter(|b| comps.contains(b)).count() as i64;
            if k > 0 {
                total += k - 1;
                if k as usize == s.branches.len() {
                    total += i64::from(s.genus);
                }
            }
        }
        (total - comps.len() as i64 + 1).max(0) as u32
    }

    pub fn marks_on(&self, comps: &BTreeSet<usize>) -> MarkSet {
        self.points.iter().filter(|p| comps.contains(&p.component)).fold(MarkSet::EMPTY, |s, p| s | p.group)
    }

    pub fn points_on(&self, v: usize) -> impl Iterator<Item = &MarkedPoint> + '_ {
        self.points.iter().filter(move |p| p.component == v)
    }

    /// Branch slots at `v` of nodes, and of the elliptic point when asked.
    pub fn branch_count(&self, v: usize, include_elliptic: bool) -> usize {
        self.singularities
            .iter()
            .filter(|s| s.is_node() || include_elliptic)
            .map(|s| s.branches.iter().filter(|&&b| b == v).count())
            .sum()
    }

    /// Node branches plus marked points; elliptic branches when asked.
    pub fn special_points(&self, v: usize, include_elliptic: bool) -> usize {
        self.branch_count(v, include_elliptic) + self.points_on(v).count()
    }

    pub fn incident_to(&self, s: usize, v: usize) -> bool {
        self.singularities[s].branches.contains(&v)
    }

    /// Connected pieces of `comps`, joining components through singularities
    /// none of whose branches lie in `blocked`.
    fn pieces(&self, comps: &BTreeSet<usize>, blocked: &BTreeSet<usize>, skip: Option<usize>) -> Vec<BTreeSet<usize>> {
        let mut out: Vec<BTreeSet<usize>> = Vec::new();
        for &start in comps {
            if out.iter().any(|p| p.contains(&start)) {
                continue;
            }
            let mut piece = BTreeSet::from([start]);
            let mut stack = vec![start];
            while let Some(v) = stack.pop() {
                for (i, s) in self.singularities.iter().enumerate() {
                    if Some(i) == skip || !s.branches.contains(&v) || s.branches.iter().any(|b| blocked.contains(b)) {
                        continue;
                    }
                    for &w in &s.branches {
                        if comps.contains(&w) && piece.insert(w) {
                            stack.push(w);
                        }
                    }
                }
            }
            out.push(piece);
        }
        out
    }

    fn is_connected(&self) -> bool {
        self.is_connected_subcurve(&(0..self.num_components()).collect())
    }

    pub fn is_connected_subcurve(&self, comps: &BTreeSet<usize>) -> bool {
        !comps.is_empty() && self.pieces(comps, &BTreeSet::new(), None).len() == 1
    }

    /// Rational tails, ordered by their node and then by the lower branch.
    pub fn rational_tails(&self) -> Vec<CurveTail> {
        let all: BTreeSet<usize> = (0..self.num_components()).collect();
        let mut out = Vec::new();
        for (i, s) in self.singularities.iter().enumerate() {
            if !s.is_node() || s.branches[0] == s.branches[1] {
                continue;
            }
            let pieces = self.pieces(&all, &BTreeSet::new(), Some(i));
            if pieces.len() != 2 {
                continue;
            }
            for &b in &s.branches {
                let side = pieces.iter().find(|p| p.contains(&b)).expect("every component lies in a piece");
                if self.subcurve_genus(side) == 0 {
                    out.push(CurveTail { components: side.clone(), node: i, marks: self.marks_on(side) });
                }
            }
        }
        out
    }

    /// Partition of marks by the branches of the elliptic singularity `q`;
    /// branches carrying no marks are dropped.
    pub fn level_of_singularity(&self, q: usize) -> Result<Partition> {
        let s = self.singularities.get(q).ok_or_else(|| invalid(format!("no singularity {q}")))?;
        if s.is_node() {
            return Err(invalid(format!("singularity {q} is a node")));
        }
        let all: BTreeSet<usize> = (0..self.num_components()).collect();
        let pieces = self.pieces(&all, &BTreeSet::new(), Some(q));
        let parts: Vec<MarkSet> = pieces.iter().map(|p| self.marks_on(p)).filter(|m| !m.is_empty()).collect();
        Partition::new(self.n, parts).map_err(|e| Error::Internal(format!("level of singularity {q}: {e}")))
    }

    /// Marks of each complement piece, plus one part per marked point on `z`.
    pub fn level_of_subcurve(&self, z: &BTreeSet<usize>) -> Result<Partition> {
        if z.iter().any(|&v| v >= self.num_components()) {
            return Err(invalid("subcurve names a missing component"));
        }
        if !self.is_connected_subcurve(z) {
            return Err(invalid("subcurve is not connected"));
        }
        if self.subcurve_genus(z) != 1 {
            return Err(invalid("subcurve does not have arithmetic genus one"));
        }
        let rest: BTreeSet<usize> = (0..self.num_components()).filter(|v| !z.contains(v)).collect();
        let mut parts: Vec<MarkSet> =
            self.pieces(&rest, z, None).iter().map(|p| self.marks_on(p)).filter(|m| !m.is_empty()).collect();
        parts.extend(self.points.iter().filter(|p| z.contains(&p.component)).map(|p| p.group));
        Partition::new(self.n, parts).map_err(|e| Error::Internal(format!("level of subcurve: {e}")))
    }

    /// Connected subcurves of arithmetic genus one.
    pub fn genus_one_subcurves(&self) -> Vec<BTreeSet<usize>> {
        let nc = self.num_components();
        assert!(nc < 24, "subcurve scan is exponential in the number of components");
        (1u32..1 << nc)
            .map(|mask| (0..nc).filter(|v| mask & (1 << v) != 0).collect::<BTreeSet<usize>>())
            .filter(|z| self.subcurve_genus(z) == 1 && self.is_connected_subcurve(z))
            .collect()
    }

    /// Relabeling of components by `perm[old] = new`.
    fn relabeled(&self, perm: &[usize]) -> CurveModel {
        let mut components = vec![0; self.components.len()];
        for (old, &g) in self.components.iter().enumerate() {
            components[perm[old]] = g;
        }
        let mut singularities: Vec<Singularity> = self
            .singularities
            .iter()
            .map(|s| {
                let mut branches: Vec<usize> = s.branches.iter().map(|&b| perm[b]).collect();
                branches.sort_unstable();
                Singularity { genus: s.genus, branches }
            })
            .collect();
        singularities.sort();
        let mut points: Vec<MarkedPoint> =
            self.points.iter().map(|p| MarkedPoint { component: perm[p.component], group: p.group }).collect();
        points.sort_by_key(|p| (p.component, p.group.min_mark()));
        CurveModel { n: self.n, components, singularities, points }
    }

    /// Minimal relabeling of components; equal iff the combinatorial types
    /// are isomorphic with marks fixed.
    pub fn canonical_form(&self) -> CurveModel {
        let nc = self.num_components();
        let invariant = |v: usize| {
            let marks = self.marks_on(&BTreeSet::from([v]));
            let elliptic = self.elliptic().map_or(0, |q| self.singularities[q].branches.iter().filter(|&&b| b == v).count());
            (marks.is_empty(), marks.min_mark(), self.components[v], self.branch_count(v, false), elliptic)
        };
        let mut order: Vec<usize> = (0..nc).collect();
        order.sort_by_key(|&v| invariant(v));
        let classes: Vec<Vec<usize>> =
            order.iter().copied().chunk_by(|&v| invariant(v)).into_iter().map(|(_, c)| c.collect()).collect();
        classes
            .iter()
            .map(|c| c.iter().copied().permutations(c.len()).collect::<Vec<_>>())
            .multi_cartesian_product()
            .map(|choice| {
                let mut perm = vec![0; nc];
                for (new, old) in choice.iter().flatten().enumerate() {
                    perm[*old] = new;
                }
                self.relabeled(&perm)
            })
            .min()
            .expect("at least one component")
    }

    pub fn is_isomorphic(&self, other: &CurveModel) -> bool {
        self.n == other.n && self.num_components() == other.num_components() && self.canonical_form() == other.canonical_form()
    }
}

impl fmt::Display for CurveModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let comps: Vec<String> = (0..self.num_components())
            .map(|v| {
                let groups: Vec<String> = self.points_on(v).map(|p| p.group.to_string()).collect();
                format!("C{v}(g={}; {})", self.components[v], groups.join(" "))
            })
            .collect();
        let sings: Vec<String> = self
            .singularities
            .iter()
            .map(|s| {
                let b: Vec<String> = s.branches.iter().map(|b| format!("C{b}")).collect();
                if s.is_node() {
                    format!("node[{}]", b.join(","))
                } else {
                    format!("elliptic{}[{}]", s.branches.len(), b.join(","))
                }
            })
            .collect();
        write!(f, "{} | {}", comps.join(" "), sings.join(" "))
    }
}

impl fmt::Debug for CurveModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
