//! Passing between (Q, K) and contraction data on 1- and 2-layer trees.

use std::collections::{BTreeMap, BTreeSet};

use super::{chain_to_layer_tree, do_not_overlap, universal_datum, ContractionDatum, PartitionChain, TailLocus};
use crate::complexes::SimplicialComplex;
use crate::curves::QSet;
use crate::error::{invalid, Error, Result};
use crate::marks::{MarkSet, Partition};
use crate::tropical::{pullback_tail_function, TropicalCurve};

/// Data on the 1-layer tree of every non-discrete partition, and on the
/// 2-layer trees used as compatibility witnesses.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LayerData {
    pub n: usize,
    pub one_layer: BTreeMap<Partition, ContractionDatum>,
    pub two_layer: BTreeMap<(Partition, Partition), ContractionDatum>,
}

impl LayerData {
    /// The universal data of (Q, K) on every 1-layer tree and every 2-layer tree.
    pub fn universal(q: &QSet, k: &SimplicialComplex, locus: TailLocus) -> Result<Self> {
        let n = k.n();
        let mut data = LayerData { n, ..Default::default() };
        for c in PartitionChain::all(n, 1) {
            let d = universal_datum(q, k, &chain_to_layer_tree(&c), locus)?;
            data.one_layer.insert(c.parts()[0].clone(), d);
        }
        for c in PartitionChain::all(n, 2) {
            let d = universal_datum(q, k, &chain_to_layer_tree(&c), locus)?;
            data.two_layer.insert((c.parts()[0].clone(), c.parts()[1].clone()), d);
        }
        Ok(data)
    }

    fn one(&self, p: &Partition) -> Result<&ContractionDatum> {
        self.one_layer.get(p).ok_or_else(|| invalid(format!("no datum on the 1-layer tree of {p}")))
    }
}

fn one_layer_tree(p: &Partition) -> TropicalCurve {
    chain_to_layer_tree(&PartitionChain::single(p.clone()).expect("non-discrete partitions form a chain"))
}

/// Marks of the tails of μ, or None when the datum does not fit the tree.
fn tails_on(curve: &TropicalCurve, d: &ContractionDatum) -> Option<BTreeSet<MarkSet>> {
    d.tail_marks(curve).ok()
}

/// Restricts the 2-layer datum to both faces and compares with the 1-layer data.
fn face_violations(p1: &Partition, p2: &Partition, d: &ContractionDatum, data: &LayerData) -> Vec<String> {
    let mut out = Vec::new();
    let chain = match PartitionChain::new(data.n, vec![p1.clone(), p2.clone()]) {
        Ok(c) => c,
        Err(e) => return vec![format!("{p1} ≺ {p2}: {e}")],
    };
    let tree = chain_to_layer_tree(&chain);
    let sub = match tree.subdivide_at(&d.rho) {
        Ok(s) => s,
        Err(e) => return vec![format!("{chain}: {e}")],
    };
    // Killing e2 leaves the tree of P1; killing e1 leaves the tree of P2.
    for (kill, target) in [(1usize, p1), (0usize, p2)] {
        let Some(expected) = data.one_layer.get(target) else {
            out.push(format!("{chain}: no datum on the 1-layer tree of {target}"));
            continue;
        };
        let face_tree = one_layer_tree(target);
        let rho = d.rho.project(&[1 - kill]);
        if rho.coeffs() != expected.rho.coeffs() {
            out.push(format!(
                "{chain}: ρ restricts to {} on the face of {target}, but that tree has ρ = {}",
                rho.format(&["e".into()]),
                expected.rho.format(&["e".into()])
            ));
        }
        let pulled = sub
            .curve
            .face_contract(&BTreeSet::from([kill]))
            .and_then(|fc| Ok((pullback_tail_function(&sub.curve, &fc, &d.mu)?, fc)))
            .and_then(|(mu, fc)| Ok(fc.curve.tails_of_support(&mu.support())?.into_iter().map(|t| t.marks).collect::<BTreeSet<_>>()));
        match (pulled, tails_on(&face_tree, expected)) {
            (Ok(a), Some(b)) if a == b => {}
            (Ok(a), Some(b)) => out.push(format!("{chain}: μ restricts to tails {a:?} on the face of {target}, expected {b:?}")),
            (Err(e), _) => out.push(format!("{chain}: {e}")),
            (_, None) => out.push(format!("{chain}: the datum on {target} does not fit its tree")),
        }
    }
    out
}

/// Relations between the data on the 1-layer trees of P₁ ≺ P₂, plus face
/// compatibility of every supplied 2-layer datum.
///
/// (i) ρ ≠ 0 on P₂ forces ρ ≠ 0 on P₁. (ii) ρ = 0 on P₁ forces ρ = 0 on
/// P₂; then (a) a tail of μ on P₁ with marks P forces one on every large
/// part of P₂ inside P, and (b) a tail of μ on P₂ whose marks form a part
/// of P₁ forces the same tail on P₁.
pub fn check_relations_on(data: &LayerData) -> Vec<String> {
    let mut out = Vec::new();
    for c in PartitionChain::all(data.n, 2) {
        let (p1, p2) = (&c.parts()[0], &c.parts()[1]);
        let (Some(d1), Some(d2)) = (data.one_layer.get(p1), data.one_layer.get(p2)) else {
            out.push(format!("{c}: missing 1-layer data"));
            continue;
        };
        if !d2.rho.is_zero() && d1.rho.is_zero() {
            out.push(format!("{c}: (i) ρ ≠ 0 on {p2} but ρ = 0 on {p1}"));
        }
        if d1.rho.is_zero() {
            if !d2.rho.is_zero() {
                out.push(format!("{c}: (ii) ρ = 0 on {p1} but ρ ≠ 0 on {p2}"));
            }
            let (Some(t1), Some(t2)) = (tails_on(&one_layer_tree(p1), d1), tails_on(&one_layer_tree(p2), d2)) else {
                out.push(format!("{c}: a 1-layer datum does not fit its tree"));
                continue;
            };
            for &big in &t1 {
                for small in p2.large_parts().filter(|s| s.is_subset(big)) {
                    if !t2.contains(&small) {
                        out.push(format!("{c}: (ii)(a) μ has tail {big} on {p1} but not {small} on {p2}"));
                    }
                }
            }
            for &s in t2.iter().filter(|&&s| p1.has_block(s)) {
                if !t1.contains(&s) {
                    out.push(format!("{c}: (ii)(b) μ has tail {s} on {p2} but not on {p1}"));
                }
            }
        }
    }
    for ((p1, p2), d) in &data.two_layer {
        out.extend(face_violations(p1, p2, d, data));
    }
    out
}

/// Builds the universal data of (Q, K) and checks every relation.
pub fn check_layer_relations(q: &QSet, k: &SimplicialComplex, locus: TailLocus) -> Result<Vec<String>> {
    Ok(check_relations_on(&LayerData::universal(q, k, locus)?))
}

/// Q = {P : ρ ≠ 0 on the tree of P}; K = {S : μ ≠ 0 on the tree of P(S)}.
pub fn datum_to_qk(data: &LayerData) -> Result<(QSet, SimplicialComplex)> {
    let n = data.n;
    for ((p1, p2), d) in &data.two_layer {
        if let Some(v) = face_violations(p1, p2, d, data).into_iter().next() {
            return Err(Error::Incompatible(v));
        }
    }
    let mut q = Vec::new();
    for p in Partition::all(n).into_iter().filter(|p| !p.is_discrete()) {
        if !data.one(&p)?.rho.is_zero() {
            q.push(p);
        }
    }
    let q = QSet::new(n, q)?;
    let mut faces = BTreeSet::new();
    for bits in 0u32..1 << n {
        let s = MarkSet::from_bits(bits);
        if s.len() < 2 {
            continue;
        }
        let p = Partition::with_large_part(n, s);
        if !data.one(&p)?.mu.is_zero() {
            faces.insert(s);
        }
    }
    if let Some((f, x)) = faces.iter().flat_map(|&f| f.iter().map(move |x| (f, x))).find(|&(f, x)| f.len() > 2 && !faces.contains(&f.without(x))) {
        return Err(invalid(format!("K is not downward closed: {f} is a face but {} is not", f.without(x))));
    }
    let k = SimplicialComplex::from_faces(n, &faces.into_iter().collect::<Vec<_>>())?;
    if !do_not_overlap(&q, &k)? {
        return Err(Error::Overlap("the recovered Q and K overlap".into()));
    }
    Ok((q, k))
}
