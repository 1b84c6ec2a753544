pub mod complex;
pub mod curve;
pub mod graph;
pub mod qk;
pub mod repro;
pub mod trop;

use std::collections::BTreeSet;

use collider::curves::StabilityReport;
use serde_json::{json, Value};

pub fn ids_text(ids: &BTreeSet<usize>) -> String {
    let v: Vec<String> = ids.iter().map(ToString::to_string).collect();
    format!("{{{}}}", v.join(", "))
}

pub fn report_json(r: &StabilityReport) -> Value {
    let violations: Vec<Value> = r.violations.iter().map(|v| json!({"axiom": v.axiom, "detail": v.detail})).collect();
    json!({"stable": r.is_stable(), "violations": violations})
}
