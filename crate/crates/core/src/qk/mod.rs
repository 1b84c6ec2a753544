//! Partitions, layer trees and contraction data in genus one.

mod chain;
mod datum;
mod dictionary;

pub use chain::{chain_to_layer_tree, part_at_radius, PartitionChain};
pub use datum::{contract, datum_level, enumerate_contraction_data, universal_datum, ContractionDatum, TailLocus};
pub use dictionary::{check_layer_relations, check_relations_on, datum_to_qk, LayerData};

use crate::complexes::SimplicialComplex;
use crate::curves::QSet;
use crate::error::{invalid, Result};
use crate::marks::Partition;

/// True iff no face I of K has P(I) in Q.
pub fn do_not_overlap(q: &QSet, k: &SimplicialComplex) -> Result<bool> {
    if q.n() != k.n() {
        return Err(invalid(format!("Q is on {} marks but K is on {}", q.n(), k.n())));
    }
    Ok(k.faces().into_iter().all(|f| !q.contains(&Partition::with_large_part(k.n(), f))))
}
