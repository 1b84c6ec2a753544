//! Stability predicates: K-, Hassett-, (m,A)- and (Q,K)-stability.

use std::collections::BTreeSet;
use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{CurveModel, QSet};
use crate::complexes::{SimplicialComplex, WeightVector};
use crate::error::{invalid, Error, Result};
use crate::marks::{MarkSet, Partition};
use crate::qk::do_not_overlap;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub axiom: &'static str,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct StabilityReport {
    pub violations: Vec<Violation>,
}

impl StabilityReport {
    pub fn is_stable(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn violates(&self, axiom: &str) -> bool {
        self.violations.iter().any(|v| v.axiom == axiom)
    }

    fn push(&mut self, axiom: &'static str, detail: String) {
        self.violations.push(Violation { axiom, detail });
    }
}

impl fmt::Display for StabilityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_stable() {
            return f.write_str("stable");
        }
        let lines: Vec<String> = self.violations.iter().map(|v| format!("({}) {}", v.axiom, v.detail)).collect();
        write!(f, "unstable: {}", lines.join("; "))
    }
}

/// How the automorphism axiom treats components through the elliptic point.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Q6Mode {
    /// Components through the elliptic point are exempt.
    #[default]
    Proxy,
    /// Components through the elliptic point need two special points,
    /// counting their elliptic branches.
    Strict,
}

fn check_n(c: &CurveModel, n: usize) -> Result<()> {
    if c.n() != n {
        return Err(invalid(format!("curve has {} marks but the complex has {n}", c.n())));
    }
    Ok(())
}

/// Every stored group lies in K and no rational tail is marked by a face.
fn collision_axioms(c: &CurveModel, k: &SimplicialComplex, report: &mut StabilityReport, labels: [&'static str; 2]) {
    for g in c.groups() {
        if !k.contains(g) {
            report.push(labels[0], format!("collision group {g} is not a face of K"));
        }
    }
    for t in c.rational_tails() {
        if k.contains(t.marks) {
            report.push(labels[1], format!("rational tail marked {} has marks in K", t.marks));
        }
    }
}

/// 2g − 2 + special points > 0, with collision groups counted once.
fn component_is_stable(c: &CurveModel, v: usize, include_elliptic: bool) -> bool {
    2 * i64::from(c.components()[v]) - 2 + c.special_points(v, include_elliptic) as i64 > 0
}

pub fn is_k_stable(c: &CurveModel, k: &SimplicialComplex) -> Result<StabilityReport> {
    check_n(c, k.n())?;
    if c.arithmetic_genus() == 0 && !k.is_at_least_triparted() {
        return Err(Error::NotTriparted(k.n()));
    }
    let mut report = StabilityReport::default();
    if let Some(q) = c.elliptic() {
        report.push("K1", format!("singularity {q} is not a node"));
    }
    collision_axioms(c, k, &mut report, ["K3", "K4"]);
    for v in 0..c.num_components() {
        if !component_is_stable(c, v, true) {
            report.push("K5", format!("component {v} has too few special points"));
        }
    }
    Ok(report)
}

pub fn is_hassett_stable(c: &CurveModel, a: &WeightVector) -> Result<bool> {
    if a.len() != c.n() {
        return Err(invalid(format!("curve has {} marks but {} weights were given", c.n(), a.len())));
    }
    if !c.is_nodal() {
        return Err(invalid("Hassett stability needs a nodal curve"));
    }
    Ok(c.groups().all(|g| a.sum(g) <= BigRational::one()) && (0..c.num_components()).all(|v| hassett_component_ok(c, v, a)))
}

fn hassett_component_ok(c: &CurveModel, v: usize, a: &WeightVector) -> bool {
    let weight = c.points_on(v).fold(BigRational::zero(), |acc, p| acc + a.sum(p.group));
    let base = 2 * i64::from(c.components()[v]) - 2 + c.branch_count(v, false) as i64;
    BigRational::from_integer(base.into()) + weight > BigRational::zero()
}

pub fn is_qk_stable(c: &CurveModel, q: &QSet, k: &SimplicialComplex) -> Result<StabilityReport> {
    is_qk_stable_with(c, q, k, Q6Mode::default())
}

pub fn is_qk_stable_with(c: &CurveModel, q: &QSet, k: &SimplicialComplex, mode: Q6Mode) -> Result<StabilityReport> {
    check_n(c, k.n())?;
    if q.n() != k.n() {
        return Err(invalid(format!("Q is on {} marks but K is on {}", q.n(), k.n())));
    }
    if let Some(face) = overlap_witness(q, k) {
        return Err(Error::Overlap(Partition::with_large_part(k.n(), face).to_string()));
    }
    let mut report = StabilityReport::default();
    if c.arithmetic_genus() != 1 {
        report.push("Q1", format!("arithmetic genus is {}, not 1", c.arithmetic_genus()));
    }
    if let Some(s) = c.elliptic() {
        let lev = c.level_of_singularity(s)?;
        if !q.contains(&lev) {
            report.push("Q2", format!("level {lev} of the elliptic point is not in Q"));
        }
    }
    for e in c.genus_one_subcurves() {
        let lev = c.level_of_subcurve(&e)?;
        if q.contains(&lev) {
            report.push("Q3", format!("genus-one subcurve {e:?} has level {lev} in Q"));
        }
    }
    collision_axioms(c, k, &mut report, ["Q4", "Q5"]);
    let incident: BTreeSet<usize> = c.elliptic().map(|s| c.singularities()[s].branches.iter().copied().collect()).unwrap_or_default();
    for v in 0..c.num_components() {
        let ok = if incident.contains(&v) {
            mode == Q6Mode::Proxy || c.special_points(v, true) >= 2
        } else {
            component_is_stable(c, v, false)
        };
        if !ok {
            report.push("Q6", format!("component {v} has infinitesimal automorphisms"));
        }
    }
    Ok(report)
}

fn overlap_witness(q: &QSet, k: &SimplicialComplex) -> Option<MarkSet> {
    if do_not_overlap(q, k).unwrap_or(false) {
        return None;
    }
    k.faces().into_iter().find(|&f| q.contains(&Partition::with_large_part(k.n(), f)))
}

/// Level bound m at the elliptic point, levels above m on genus-one
/// subcurves, and Hassett conditions away from the elliptic point.
pub fn is_ma_stable(c: &CurveModel, m: usize, a: &WeightVector) -> Result<bool> {
    if a.len() != c.n() {
        return Err(invalid(format!("curve has {} marks but {} weights were given", c.n(), a.len())));
    }
    if c.arithmetic_genus() != 1 {
        return Ok(false);
    }
    if let Some(s) = c.elliptic() {
        if c.level_of_singularity(s)?.num_parts() > m {
            return Ok(false);
        }
    }
    for e in c.genus_one_subcurves() {
        if c.level_of_subcurve(&e)?.num_parts() <= m {
            return Ok(false);
        }
    }
    if !c.groups().all(|g| a.sum(g) <= BigRational::one()) {
        return Ok(false);
    }
    let incident: BTreeSet<usize> = c.elliptic().map(|s| c.singularities()[s].branches.iter().copied().collect()).unwrap_or_default();
    Ok((0..c.num_components()).filter(|v| !incident.contains(v)).all(|v| hassett_component_ok(c, v, a)))
}

/// a_i = 1/N_i, where N_i is the size of the collision group holding mark i.
pub fn collision_weights(c: &CurveModel) -> WeightVector {
    let mut a = vec![BigRational::one(); c.n()];
    for g in c.groups() {
        for i in g.iter() {
            a[i - 1] = BigRational::new(1.into(), (g.len() as i64).into());
        }
    }
    WeightVector::new(a).expect("1/N lies in (0, 1]")
}

/// Q = partitions with at most m parts; K = {I : Σ_I a ≤ 1, P(I) ∉ Q}.
pub fn ma_to_qk(m: usize, a: &WeightVector) -> Result<(QSet, SimplicialComplex)> {
    let n = a.len();
    let q = QSet::with_at_most_parts(n, m)?;
    let weighted = SimplicialComplex::from_weights(a);
    let faces: Vec<MarkSet> =
        weighted.faces().into_iter().filter(|&f| !q.contains(&Partition::with_large_part(n, f))).collect();
    let k = SimplicialComplex::from_faces(n, &faces)?;
    Ok((q, k))
}

/// Downward closure of every collision group appearing in `models`.
pub fn collision_complex(n: usize, models: &[CurveModel]) -> Result<SimplicialComplex> {
    if let Some(c) = models.iter().find(|c| c.n() != n) {
        return Err(invalid(format!("model on {} marks in a family on {n}", c.n())));
    }
    let groups: Vec<MarkSet> = models.iter().flat_map(|c| c.groups()).collect();
    SimplicialComplex::from_faces(n, &groups)
}
