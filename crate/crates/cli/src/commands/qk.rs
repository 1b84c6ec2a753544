use anyhow::{bail, Result};
use collider::complexes::enumerate_complexes;
use collider::io::{partition_json, qset_json, ComplexJson, DatumJson};
use collider::qk::{check_layer_relations, contract, datum_level, datum_to_qk, do_not_overlap, universal_datum, LayerData, TailLocus};
use collider::{CurveModel, MarkSet, Partition, QSet, SimplicialComplex, TropicalCurve};
use rayon::prelude::*;
use serde_json::{json, Value};

use super::trop::function_value;
use crate::input;
use crate::{Ctx, Locus, Outcome, QkCmd, QkInput, TropInput};

/// Exhaustive sweeps stop here; n = 5 has far too many pairs.
const MAX_SWEEP_N: usize = 4;

fn load(ti: &TropInput, qk: &QkInput) -> Result<(TropicalCurve, QSet, SimplicialComplex)> {
    let t = input::tropical(ti.input.as_deref(), ti.chain.as_deref())?;
    let n = t.graph().n();
    Ok((t, input::qset(&qk.q, n)?, input::complex(&qk.k, Some(n))?))
}

fn pair(qk: &QkInput, n: usize) -> Result<(QSet, SimplicialComplex)> {
    Ok((input::qset(&qk.q, n)?, input::complex(&qk.k, Some(n))?))
}

/// Every non-overlapping pair on n marks, in a fixed order.
fn all_pairs(n: usize) -> Result<Vec<(QSet, SimplicialComplex)>> {
    if n > MAX_SWEEP_N {
        bail!("exhaustive sweeps support n ≤ {MAX_SWEEP_N}");
    }
    let ks = enumerate_complexes(n, false)?;
    let mut out = Vec::new();
    for q in QSet::all(n)? {
        for k in &ks {
            if do_not_overlap(&q, k)? {
                out.push((q.clone(), k.clone()));
            }
        }
    }
    Ok(out)
}

/// Runs `check` on every pair in parallel; failures come back in pair order.
fn sweep(n: usize, what: &str, check: impl Fn(&QSet, &SimplicialComplex) -> Result<Vec<String>> + Sync) -> Result<Outcome> {
    let pairs = all_pairs(n)?;
    let results: Vec<Result<Vec<String>>> = pairs.par_iter().map(|(q, k)| check(q, k)).collect();
    let mut failures = Vec::new();
    for ((q, k), r) in pairs.iter().zip(results) {
        for msg in r? {
            failures.push(format!("Q = {q}, K = {k}: {msg}"));
        }
    }
    let v = json!({"n": n, "pairs": pairs.len(), "failures": failures});
    let mut text = format!("{what}: {} pairs on {n} marks, {} failures", pairs.len(), failures.len());
    for f in failures.iter().take(10) {
        text.push_str(&format!("\n  {f}"));
    }
    Ok(Outcome::answer(failures.is_empty(), v, text))
}

fn singularity_name(m: usize) -> String {
    match m {
        1 => "elliptic 1-fold (cusp)".into(),
        2 => "elliptic 2-fold (tacnode)".into(),
        _ => format!("elliptic {m}-fold"),
    }
}

fn branches_text(level: &Partition) -> String {
    level.blocks().iter().map(ToString::to_string).collect::<Vec<_>>().join(" | ")
}

/// Whether each face of K ends up at one point; in open mode only tails can be consulted.
fn collision_status(k: &SimplicialComplex, limit: Option<&CurveModel>, tail_marks: &[MarkSet], locus: Locus) -> Vec<(MarkSet, &'static str)> {
    k.faces()
        .into_iter()
        .map(|f| {
            let status = match (locus, limit) {
                (Locus::Closed, Some(c)) => {
                    if c.groups().any(|g| f.is_subset(g)) {
                        "collide"
                    } else {
                        "distinct"
                    }
                }
                _ => {
                    if tail_marks.iter().any(|&m| f.is_subset(m)) {
                        "would collide"
                    } else {
                        "distinct"
                    }
                }
            };
            (f, status)
        })
        .collect()
}

fn locus_name(l: Locus) -> &'static str {
    match l {
        Locus::Closed => "closed",
        Locus::Open => "open",
    }
}

pub fn run(cmd: QkCmd, ctx: &Ctx) -> Result<Outcome> {
    let locus: TailLocus = ctx.locus.into();
    match cmd {
        QkCmd::Overlap { qk, n } => {
            let (q, k) = pair(&qk, n)?;
            let holds = do_not_overlap(&q, &k)?;
            let text = if holds { "Q and K do not overlap" } else { "Q and K overlap" };
            Ok(Outcome::answer(holds, json!({"overlap": !holds}), text))
        }
        QkCmd::Datum { curve, qk } => {
            let (t, q, k) = load(&curve, &qk)?;
            let d = universal_datum(&q, &k, &t, locus)?;
            let sub = d.validate(&t, locus)?;
            let tails: Vec<MarkSet> = d.tail_marks(&t)?.into_iter().collect();
            let level = datum_level(&t, &d)?;
            let mut v = serde_json::to_value(DatumJson::from(&d))?;
            v["rho_shown"] = json!(t.format(&d.rho));
            v["mu"] = function_value(&sub.curve, &d.mu);
            v["tails"] = json!(tails.iter().map(|m| m.to_vec()).collect::<Vec<_>>());
            v["level"] = json!(level.as_ref().map(partition_json));
            let tail_text: Vec<String> = tails.iter().map(|m| format!("{{{m}}}")).collect();
            let text = format!(
                "ρ = {}\nμ tails: {}\nlevel: {}",
                t.format(&d.rho),
                if tail_text.is_empty() { "none".into() } else { tail_text.join(" ") },
                level.map_or("none".into(), |l| l.to_string())
            );
            Ok(Outcome::yes(v, text))
        }
        QkCmd::Limit { curve, qk } => {
            let (t, q, k) = load(&curve, &qk)?;
            let d = universal_datum(&q, &k, &t, locus)?;
            let tails: Vec<MarkSet> = d.tail_marks(&t)?.into_iter().collect();
            let level = datum_level(&t, &d)?;
            let limit = match ctx.locus {
                Locus::Closed => Some(contract(&t, &d, locus)?),
                Locus::Open => None,
            };
            let mut lines = Vec::new();
            let singularity = match (&limit, &level) {
                (Some(c), _) if c.elliptic().is_some() => {
                    let s = c.elliptic().expect("checked");
                    let lev = c.level_of_singularity(s)?;
                    lines.push(format!("{}, branches {}", singularity_name(lev.num_parts()), branches_text(&lev)));
                    json!({"branches": lev.num_parts(), "level": partition_json(&lev)})
                }
                (None, Some(lev)) => {
                    lines.push(format!("{}, branches {}", singularity_name(lev.num_parts()), branches_text(lev)));
                    json!({"branches": lev.num_parts(), "level": partition_json(lev)})
                }
                _ => {
                    lines.push("no elliptic singularity; the core stays a genus-one component".into());
                    Value::Null
                }
            };
            let status = collision_status(&k, limit.as_ref(), &tails, ctx.locus);
            for (f, s) in &status {
                lines.push(format!("{{{f}}}: {s} ({} tail locus)", locus_name(ctx.locus)));
            }
            match &limit {
                Some(c) => lines.push(format!("limit: {c}")),
                None => lines.push("contraction is undefined with the open tail locus".into()),
            }
            let v = json!({
                "tail_locus": locus_name(ctx.locus),
                "rho": t.format(&d.rho),
                "singularity": singularity,
                "collisions": status.iter().map(|(f, s)| json!({"face": f.to_vec(), "status": s})).collect::<Vec<_>>(),
                "limit": limit.as_ref().map(collider::io::CurveJson::from),
            });
            Ok(Outcome::yes(v, lines.join("\n")))
        }
        QkCmd::Relations { qk, n, all } => {
            if all {
                return sweep(n, "relations", |q, k| Ok(check_layer_relations(q, k, locus)?));
            }
            let (q, k) = pair(&qk, n)?;
            let failures = check_layer_relations(&q, &k, locus)?;
            let mut text = format!("{} relation violations", failures.len());
            for f in &failures {
                text.push_str(&format!("\n  {f}"));
            }
            Ok(Outcome::answer(failures.is_empty(), json!({"violations": failures}), text))
        }
        QkCmd::Roundtrip { qk, n, all } => {
            let round = |q: &QSet, k: &SimplicialComplex| -> Result<Vec<String>> {
                let back = datum_to_qk(&LayerData::universal(q, k, locus)?)?;
                Ok(if back == (q.clone(), k.clone()) {
                    Vec::new()
                } else {
                    vec![format!("recovered Q = {}, K = {}", back.0, back.1)]
                })
            };
            if all {
                return sweep(n, "round trip", round);
            }
            let (q, k) = pair(&qk, n)?;
            let data = LayerData::universal(&q, &k, locus)?;
            let (q2, k2) = datum_to_qk(&data)?;
            let holds = q2 == q && k2 == k;
            let v = json!({"Q": qset_json(&q2), "K": ComplexJson::from(&k2), "matches": holds});
            Ok(Outcome::answer(holds, v, format!("recovered Q = {q2}, K = {k2}: {}", if holds { "matches" } else { "differs" })))
        }
    }
}
