//! Contraction data (ρ, μ) on a radially aligned genus-one curve and the
//! combinatorial type of the curve they contract to.

use std::collections::BTreeSet;

use super::{do_not_overlap, part_at_radius};
use crate::complexes::SimplicialComplex;
use crate::curves::{CurveModel, MarkedPoint, QSet, Singularity};
use crate::error::{invalid, Error, Result};
use crate::marks::{MarkSet, Partition};
use crate::tropical::{MonoidElement, PLFunction, Subdivision, TropicalCurve};

/// Which vertices the tails of μ must avoid.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum TailLocus {
    /// Tails avoid λ ≤ ρ.
    #[default]
    Closed,
    /// Tails avoid λ < ρ and may touch λ = ρ. Contraction is undefined.
    Open,
}

/// A radius (or 0) and a tail function on the subdivision at λ = ρ.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ContractionDatum {
    pub rho: MonoidElement,
    pub mu: PLFunction,
}

impl ContractionDatum {
    pub fn trivial(curve: &TropicalCurve) -> Self {
        ContractionDatum {
            rho: MonoidElement::zero(curve.rank()),
            mu: PLFunction::zero(curve.num_vertices(), curve.graph().n(), curve.rank()),
        }
    }

    /// Vertices of the subdivision where μ is nonzero.
    pub fn mu_support(&self) -> BTreeSet<usize> {
        self.mu.support()
    }

    /// Checks the datum against `curve` and returns the subdivision at ρ.
    pub fn validate(&self, curve: &TropicalCurve, locus: TailLocus) -> Result<Subdivision> {
        if !self.rho.is_zero() && !curve.radii()?.contains(&self.rho) {
            return Err(invalid(format!("{} is not a radius", curve.format(&self.rho))));
        }
        let sub = curve.subdivide_at(&self.rho)?;
        if !sub.curve.is_tail_function(&self.mu) {
            return Err(invalid("μ is not a tail function of disjoint stable tails"));
        }
        let support = self.mu.support();
        let avoid = match locus {
            TailLocus::Closed => &sub.closed,
            TailLocus::Open => &sub.inside,
        };
        if let Some(v) = support.intersection(avoid).next() {
            return Err(invalid(format!("μ is nonzero at vertex {v}, which its tails must avoid")));
        }
        if support.len() + sub.inside.len() == sub.curve.num_vertices() {
            return Err(invalid("μ and the locus λ < ρ cover the whole curve"));
        }
        Ok(sub)
    }

    /// Marks of the tails making up |μ|.
    pub fn tail_marks(&self, curve: &TropicalCurve) -> Result<BTreeSet<MarkSet>> {
        let sub = curve.subdivide_at(&self.rho)?;
        Ok(sub.curve.tails_of_support(&self.mu.support())?.into_iter().map(|t| t.marks).collect())
    }
}

/// Stable tails of the subdivision that avoid the locus.
fn allowed_tails(sub: &Subdivision, locus: TailLocus) -> Vec<crate::graphs::Tail> {
    let avoid = match locus {
        TailLocus::Closed => &sub.closed,
        TailLocus::Open => &sub.inside,
    };
    sub.curve.stable_tails().into_iter().filter(|t| t.vertices.is_disjoint(avoid)).collect()
}

/// Every valid datum, by increasing ρ and then by subset of allowed tails.
pub fn enumerate_contraction_data(curve: &TropicalCurve, locus: TailLocus) -> Result<Vec<ContractionDatum>> {
    let mut out = Vec::new();
    let mut radii = vec![MonoidElement::zero(curve.rank())];
    radii.extend(curve.radii()?);
    for rho in radii {
        let sub = curve.subdivide_at(&rho)?;
        let tails = allowed_tails(&sub, locus);
        if tails.len() >= 31 {
            return Err(Error::OutOfRange { what: "stable tails", detail: tails.len().to_string() });
        }
        'subsets: for mask in 0u32..1 << tails.len() {
            let chosen: Vec<_> = (0..tails.len()).filter(|i| mask >> i & 1 == 1).map(|i| tails[i].clone()).collect();
            for (i, a) in chosen.iter().enumerate() {
                if chosen[i + 1..].iter().any(|b| !a.vertices.is_disjoint(&b.vertices)) {
                    continue 'subsets;
                }
            }
            let covered: usize = chosen.iter().map(|t| t.vertices.len()).sum();
            if covered + sub.inside.len() == sub.curve.num_vertices() {
                continue;
            }
            let mu = sub.curve.tail_function(&chosen)?;
            out.push(ContractionDatum { rho: rho.clone(), mu });
        }
    }
    Ok(out)
}

/// The datum (Q, K) picks on `curve`: the largest radius whose partition
/// lies in Q, and every allowed stable tail whose marks are a face of K.
pub fn universal_datum(q: &QSet, k: &SimplicialComplex, curve: &TropicalCurve, locus: TailLocus) -> Result<ContractionDatum> {
    if q.n() != curve.graph().n() || k.n() != curve.graph().n() {
        return Err(invalid(format!("Q, K and the curve disagree on n ({}, {}, {})", q.n(), k.n(), curve.graph().n())));
    }
    if !do_not_overlap(q, k)? {
        return Err(Error::Overlap("Q and K overlap".into()));
    }
    let mut rho = MonoidElement::zero(curve.rank());
    for r in curve.radii()?.into_iter().rev() {
        if q.contains(&part_at_radius(curve, &r)?) {
            rho = r;
            break;
        }
    }
    let sub = curve.subdivide_at(&rho)?;
    let support: BTreeSet<usize> = allowed_tails(&sub, locus)
        .into_iter()
        .filter(|t| k.contains(t.marks))
        .flat_map(|t| t.vertices)
        .collect();
    let datum = ContractionDatum { rho, mu: sub.curve.tail_function_on(&support)? };
    datum.validate(curve, locus)?;
    Ok(datum)
}

/// The combinatorial type of the contraction of `curve` along `datum`.
///
/// The locus λ < ρ becomes one elliptic point whose branches are the
/// components crossing λ = ρ; each tail of μ becomes a point carrying its
/// marks. Everything else, including valence-2 subdivision vertices, stays.
pub fn contract(curve: &TropicalCurve, datum: &ContractionDatum, locus: TailLocus) -> Result<CurveModel> {
    if locus == TailLocus::Open {
        return Err(invalid("contraction is only defined when tails avoid λ ≤ ρ"));
    }
    let sub = datum.validate(curve, locus)?;
    let g = sub.curve.graph();
    let support = datum.mu.support();
    let kept: Vec<usize> = (0..g.num_vertices()).filter(|v| !sub.inside.contains(v) && !support.contains(v)).collect();
    let index = |v: usize| kept.binary_search(&v).ok();

    let mut singularities = Vec::new();
    if !sub.inside.is_empty() {
        let mut branches = Vec::new();
        for &(a, b) in g.edges() {
            match (sub.inside.contains(&a), sub.inside.contains(&b)) {
                (true, false) => branches.push(index(b).expect("the outer end of a crossing edge is kept")),
                (false, true) => branches.push(index(a).expect("the outer end of a crossing edge is kept")),
                _ => {}
            }
        }
        singularities.push(Singularity::elliptic(branches));
    }
    for &(a, b) in g.edges() {
        if let (Some(x), Some(y)) = (index(a), index(b)) {
            singularities.push(Singularity::node(x, y));
        }
    }
    let mut points = Vec::new();
    for m in 1..=g.n() {
        if let Some(v) = index(g.leg_vertex(m)) {
            points.push(MarkedPoint { component: v, group: MarkSet::singleton(m) });
        }
    }
    for t in sub.curve.tails_of_support(&support)? {
        let (a, b) = g.edges()[t.leading_edge];
        let attach = if t.vertices.contains(&a) { b } else { a };
        let component = index(attach).ok_or_else(|| invalid("a tail of μ attaches outside the kept components"))?;
        points.push(MarkedPoint { component, group: t.marks });
    }
    let genera = kept.iter().map(|&v| g.genus(v)).collect();
    CurveModel::new(g.n(), genera, singularities, points)
}

/// Level the datum imposes on the elliptic point, if ρ ≠ 0.
pub fn datum_level(curve: &TropicalCurve, datum: &ContractionDatum) -> Result<Option<Partition>> {
    if datum.rho.is_zero() {
        return Ok(None);
    }
    part_at_radius(curve, &datum.rho).map(Some)
}
