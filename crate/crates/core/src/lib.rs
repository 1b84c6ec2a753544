//! Collision complexes, stable dual graphs, tropical tail functions and the
//! (Q,K)-stability dictionary for genus-one curves with colliding markings.

pub mod complexes;
pub mod curves;
pub mod error;
pub mod graphs;
pub mod io;
pub mod lp;
pub mod marks;
pub mod qk;
pub mod tropical;

pub use complexes::{SimplicialComplex, WeightVector};
pub use curves::{CurveModel, QSet};
pub use error::{Error, Result};
pub use graphs::MarkedGraph;
pub use marks::{MarkSet, Partition};
pub use tropical::{MonoidElement, PLFunction, TropicalCurve};
