//! JSON shapes for every exchanged type. Marks are 1-based, vertex and
//! component ids 0-based.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::complexes::SimplicialComplex;
use crate::curves::{CurveModel, MarkedPoint, QSet, Singularity};
use crate::error::{invalid, Result};
use crate::graphs::MarkedGraph;
use crate::marks::{MarkSet, Partition};
use crate::qk::ContractionDatum;
use crate::tropical::{MonoidElement, PLFunction, TropicalCurve};

fn mark_set(n: usize, marks: &[usize]) -> Result<MarkSet> {
    let set = MarkSet::from_marks(n, marks.iter().copied())?;
    if set.len() != marks.len() {
        return Err(invalid(format!("repeated mark in {marks:?}")));
    }
    Ok(set)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexJson {
    pub n: usize,
    pub maximal_faces: Vec<Vec<usize>>,
}

impl From<&SimplicialComplex> for ComplexJson {
    fn from(k: &SimplicialComplex) -> Self {
        ComplexJson { n: k.n(), maximal_faces: k.maximal_faces().into_iter().map(MarkSet::to_vec).collect() }
    }
}

impl ComplexJson {
    pub fn to_complex(&self) -> Result<SimplicialComplex> {
        let faces = self.maximal_faces.iter().map(|f| mark_set(self.n, f)).collect::<Result<Vec<_>>>()?;
        SimplicialComplex::from_faces(self.n, &faces)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexJson {
    pub genus: u32,
    #[serde(default)]
    pub legs: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub vertices: Vec<VertexJson>,
    #[serde(default)]
    pub edges: Vec<[usize; 2]>,
}

impl From<&MarkedGraph> for GraphJson {
    fn from(g: &MarkedGraph) -> Self {
        let vertices = (0..g.num_vertices())
            .map(|v| VertexJson { genus: g.genus(v), legs: g.marks_at(v).to_vec() })
            .collect();
        GraphJson { vertices, edges: g.edges().iter().map(|&(a, b)| [a, b]).collect() }
    }
}

impl GraphJson {
    pub fn to_graph(&self) -> Result<MarkedGraph> {
        let n: usize = self.vertices.iter().map(|v| v.legs.len()).sum();
        let mut legs = vec![usize::MAX; n];
        for (v, vert) in self.vertices.iter().enumerate() {
            for &m in &vert.legs {
                if m == 0 || m > n {
                    return Err(invalid(format!("leg {m} outside 1..={n}")));
                }
                if legs[m - 1] != usize::MAX {
                    return Err(invalid(format!("leg {m} appears twice")));
                }
                legs[m - 1] = v;
            }
        }
        let genera = self.vertices.iter().map(|v| v.genus).collect();
        MarkedGraph::new(genera, self.edges.iter().map(|&[a, b]| (a, b)).collect(), legs)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SingularityJson {
    pub genus: u32,
    pub branches: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointJson {
    pub component: usize,
    pub group: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveJson {
    pub n: usize,
    pub components: Vec<u32>,
    #[serde(default)]
    pub singularities: Vec<SingularityJson>,
    pub points: Vec<PointJson>,
}

impl From<&CurveModel> for CurveJson {
    fn from(c: &CurveModel) -> Self {
        CurveJson {
            n: c.n(),
            components: c.components().to_vec(),
            singularities: c
                .singularities()
                .iter()
                .map(|s| SingularityJson { genus: s.genus, branches: s.branches.clone() })
                .collect(),
            points: c.points().iter().map(|p| PointJson { component: p.component, group: p.group.to_vec() }).collect(),
        }
    }
}

impl CurveJson {
    pub fn to_curve(&self) -> Result<CurveModel> {
        let sings = self.singularities.iter().map(|s| Singularity { genus: s.genus, branches: s.branches.clone() }).collect();
        let points = self
            .points
            .iter()
            .map(|p| Ok(MarkedPoint { component: p.component, group: mark_set(self.n, &p.group)? }))
            .collect::<Result<Vec<_>>>()?;
        CurveModel::new(self.n, self.components.clone(), sings, points)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TropicalJson {
    #[serde(flatten)]
    pub graph: GraphJson,
    pub generators: Vec<String>,
    pub lengths: Vec<Vec<u64>>,
}

impl From<&TropicalCurve> for TropicalJson {
    fn from(t: &TropicalCurve) -> Self {
        TropicalJson {
            graph: t.graph().into(),
            generators: t.generators().to_vec(),
            lengths: t.lengths().iter().map(|l| l.coeffs().to_vec()).collect(),
        }
    }
}

impl TropicalJson {
    pub fn to_curve(&self) -> Result<TropicalCurve> {
        let lengths = self.lengths.iter().map(|l| MonoidElement::from_coeffs(l.clone())).collect();
        TropicalCurve::new(self.graph.to_graph()?, lengths, self.generators.clone())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PLFunctionJson {
    pub values: Vec<Vec<u64>>,
    pub leg_slopes: Vec<u64>,
}

impl From<&PLFunction> for PLFunctionJson {
    fn from(f: &PLFunction) -> Self {
        PLFunctionJson { values: f.values.iter().map(|v| v.coeffs().to_vec()).collect(), leg_slopes: f.leg_slopes.clone() }
    }
}

impl PLFunctionJson {
    pub fn to_function(&self) -> PLFunction {
        PLFunction {
            values: self.values.iter().map(|v| MonoidElement::from_coeffs(v.clone())).collect(),
            leg_slopes: self.leg_slopes.clone(),
        }
    }
}

/// A partition as a list of blocks.
pub type PartitionJson = Vec<Vec<usize>>;

pub fn partition_json(p: &Partition) -> PartitionJson {
    p.blocks().iter().map(|b| b.to_vec()).collect()
}

pub fn partition_from_json(n: usize, blocks: &PartitionJson) -> Result<Partition> {
    Partition::new(n, blocks.iter().map(|b| mark_set(n, b)).collect::<Result<_>>()?)
}

pub fn qset_json(q: &QSet) -> Vec<PartitionJson> {
    q.partitions().map(partition_json).collect()
}

pub fn qset_from_json(n: usize, parts: &[PartitionJson]) -> Result<QSet> {
    QSet::new(n, parts.iter().map(|p| partition_from_json(n, p)).collect::<Result<Vec<_>>>()?)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DatumJson {
    pub rho: Vec<u64>,
    pub mu_support: Vec<usize>,
}

impl From<&ContractionDatum> for DatumJson {
    fn from(d: &ContractionDatum) -> Self {
        DatumJson { rho: d.rho.coeffs().to_vec(), mu_support: d.mu_support().into_iter().collect() }
    }
}

impl DatumJson {
    /// Rebuilds μ on the subdivision of `curve` at ρ from its support.
    pub fn to_datum(&self, curve: &TropicalCurve) -> Result<ContractionDatum> {
        let rho = MonoidElement::from_coeffs(self.rho.clone());
        let sub = curve.subdivide_at(&rho)?;
        let support: BTreeSet<usize> = self.mu_support.iter().copied().collect();
        if let Some(&v) = support.iter().find(|&&v| v >= sub.curve.num_vertices()) {
            return Err(invalid(format!("support vertex {v} is not on the subdivision")));
        }
        Ok(ContractionDatum { rho, mu: sub.curve.tail_function_on(&support)? })
    }
}
