use std::collections::BTreeSet;

use anyhow::{bail, Result};
use collider::curves::{is_hassett_stable, is_k_stable, is_qk_stable_with, Q6Mode};
use collider::io::partition_json;
use collider::WeightVector;
use serde_json::json;

use super::{ids_text, report_json};
use crate::input;
use crate::{CurveCmd, Outcome, Q6};

pub fn run(cmd: CurveCmd) -> Result<Outcome> {
    match cmd {
        CurveCmd::CheckK { input, k } => {
            let c = input::curve(&input)?;
            let k = input::complex(&k, Some(c.n()))?;
            let r = is_k_stable(&c, &k)?;
            Ok(Outcome::answer(r.is_stable(), report_json(&r), format!("K-stability: {r}")))
        }
        CurveCmd::CheckQk { input, q, k, q6 } => {
            let c = input::curve(&input)?;
            let q = input::qset(&q, c.n())?;
            let k = input::complex(&k, Some(c.n()))?;
            let mode = match q6 {
                Q6::Proxy => Q6Mode::Proxy,
                Q6::Strict => Q6Mode::Strict,
            };
            let r = is_qk_stable_with(&c, &q, &k, mode)?;
            Ok(Outcome::answer(r.is_stable(), report_json(&r), format!("(Q,K)-stability: {r}")))
        }
        CurveCmd::CheckHassett { input, weights } => {
            let c = input::curve(&input)?;
            let w = WeightVector::parse(&weights)?;
            if w.len() != c.n() {
                bail!("{} weights for {} marks", w.len(), c.n());
            }
            let holds = is_hassett_stable(&c, &w)?;
            let text = format!("Hassett stability at weights {w}: {}", if holds { "stable" } else { "unstable" });
            Ok(Outcome::answer(holds, json!({"stable": holds}), text))
        }
        CurveCmd::Level { input, subcurve } => {
            let c = input::curve(&input)?;
            if let Some(s) = subcurve {
                let z: BTreeSet<usize> = input::ids(&s)?.into_iter().collect();
                let lev = c.level_of_subcurve(&z)?;
                let v = json!({"subcurve": z, "level": partition_json(&lev)});
                return Ok(Outcome::yes(v, format!("level of subcurve {}: {lev}", ids_text(&z))));
            }
            let mut lines = Vec::new();
            let elliptic = match c.elliptic() {
                Some(s) => {
                    let lev = c.level_of_singularity(s)?;
                    lines.push(format!("elliptic singularity {s}: level {lev}"));
                    json!({"singularity": s, "level": partition_json(&lev)})
                }
                None => {
                    lines.push("no elliptic singularity".into());
                    json!(null)
                }
            };
            let mut subs = Vec::new();
            for z in c.genus_one_subcurves() {
                let lev = c.level_of_subcurve(&z)?;
                lines.push(format!("genus-one subcurve {}: level {lev}", ids_text(&z)));
                subs.push(json!({"subcurve": z, "level": partition_json(&lev)}));
            }
            Ok(Outcome::yes(json!({"elliptic": elliptic, "subcurves": subs}), lines.join("\n")))
        }
    }
}
