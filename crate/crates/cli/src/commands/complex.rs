use std::collections::BTreeSet;

use anyhow::{bail, Result};
use collider::complexes::{count_complexes, count_complexes_up_to_iso, count_threshold, count_threshold_up_to_iso, enumerate_complexes, is_threshold};
use collider::io::{partition_json, ComplexJson};
use collider::{SimplicialComplex, WeightVector};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::input;
use crate::{ComplexCmd, ComplexInput, Outcome};

/// Listing stops here; n = 6 has millions of complexes.
const MAX_LISTED_N: usize = 5;

fn load(ci: &ComplexInput) -> Result<SimplicialComplex> {
    match (&ci.input, &ci.k) {
        (Some(src), None) => {
            let k = input::read_json::<ComplexJson>(src)?.to_complex()?;
            if let Some(n) = ci.n.filter(|&n| n != k.n()) {
                bail!("complex is on {} marks, expected {n}", k.n());
            }
            Ok(k)
        }
        (None, Some(s)) => input::complex(s, ci.n),
        _ => bail!("give exactly one of --K and --input"),
    }
}

fn complex_value(k: &SimplicialComplex) -> Value {
    serde_json::to_value(ComplexJson::from(k)).expect("complex serializes")
}

pub fn weights_value(w: &WeightVector) -> Vec<String> {
    w.values().iter().map(ToString::to_string).collect()
}

pub fn run(cmd: ComplexCmd) -> Result<Outcome> {
    match cmd {
        ComplexCmd::Check(ci) => {
            let k = load(&ci)?;
            let mut v = complex_value(&k);
            let nonfaces: Vec<Vec<usize>> = k.minimal_nonfaces().into_iter().map(|f| f.to_vec()).collect();
            v["num_faces"] = json!(k.num_faces());
            v["minimal_nonfaces"] = json!(nonfaces);
            v["at_least_triparted"] = json!(k.is_at_least_triparted());
            let text = format!(
                "complex {k}\nfaces of size ≥ 2: {}\nminimal nonfaces: {}\nat least triparted: {}",
                k.num_faces(),
                k.minimal_nonfaces().iter().map(ToString::to_string).collect::<Vec<_>>().join(" "),
                if k.is_at_least_triparted() { "yes" } else { "no" }
            );
            Ok(Outcome::yes(v, text))
        }
        ComplexCmd::Closure(ci) => {
            let k = load(&ci)?;
            let faces: Vec<Vec<usize>> = k.faces().into_iter().map(|f| f.to_vec()).collect();
            let mut v = complex_value(&k);
            v["faces"] = json!(faces);
            let text = format!("{k}\nfaces: {}", k.faces().iter().map(ToString::to_string).collect::<Vec<_>>().join(" "));
            Ok(Outcome::yes(v, text))
        }
        ComplexCmd::Triparted(ci) => {
            let k = load(&ci)?;
            let small: Vec<_> = k.k_partitions().into_iter().filter(|p| p.num_parts() < 3).collect();
            let holds = small.is_empty();
            let mut v = complex_value(&k);
            v["at_least_triparted"] = json!(holds);
            v["small_k_partitions"] = json!(small.iter().map(partition_json).collect::<Vec<_>>());
            let text = if holds {
                format!("{k} is at least triparted")
            } else {
                let shown: Vec<String> = small.iter().map(ToString::to_string).collect();
                format!("{k} is not at least triparted; K-partitions with fewer than 3 parts: {}", shown.join(" "))
            };
            Ok(Outcome::answer(holds, v, text))
        }
        ComplexCmd::Threshold(ci) => {
            let k = load(&ci)?;
            let mut v = complex_value(&k);
            Ok(match is_threshold(&k) {
                Some(w) => {
                    v["threshold"] = json!(true);
                    v["weights"] = json!(weights_value(&w));
                    Outcome::yes(v, format!("{k} is threshold; weights {w}, collisions allowed up to total weight 1"))
                }
                None => {
                    v["threshold"] = json!(false);
                    Outcome::answer(false, v, format!("{k}: no weight data exists"))
                }
            })
        }
        ComplexCmd::Count { n, upto_iso } => {
            let (c, t) = if upto_iso {
                (count_complexes_up_to_iso(n)?, count_threshold_up_to_iso(n)?)
            } else {
                (count_complexes(n)?, count_threshold(n)?)
            };
            let v = json!({"n": n, "upto_iso": upto_iso, "complexes": c, "threshold": t});
            Ok(Outcome::yes(v, format!("complexes: {c}, threshold: {t}")))
        }
        ComplexCmd::Enumerate { n, triparted_only, upto_iso } => {
            if n > MAX_LISTED_N {
                bail!("listing supports n ≤ {MAX_LISTED_N}; use `complex count` for n = {n}");
            }
            let all = enumerate_complexes(n, triparted_only)?;
            let list: Vec<SimplicialComplex> = if upto_iso {
                let reps: BTreeSet<SimplicialComplex> = all.par_iter().map(SimplicialComplex::canonical_form).collect::<Vec<_>>().into_iter().collect();
                reps.into_iter().collect()
            } else {
                let mut v = all;
                v.sort();
                v
            };
            let v = json!(list.iter().map(ComplexJson::from).collect::<Vec<_>>());
            let text: Vec<String> = list.iter().map(ToString::to_string).collect();
            Ok(Outcome::yes(v, format!("{}\n{} complexes", text.join("\n"), list.len())))
        }
    }
}
