use std::collections::BTreeSet;

use anyhow::{anyhow, Result};
use collider::io::{PLFunctionJson, TropicalJson};
use collider::tropical::{pullback_tail_function, VertexOrigin};
use collider::{PLFunction, TropicalCurve};
use serde_json::{json, Value};

use super::ids_text;
use crate::input;
use crate::{Outcome, TropCmd, TropInput};

fn load(t: &TropInput) -> Result<TropicalCurve> {
    input::tropical(t.input.as_deref(), t.chain.as_deref())
}

fn support(s: &str) -> Result<BTreeSet<usize>> {
    Ok(input::ids(s)?.into_iter().collect())
}

pub fn curve_value(t: &TropicalCurve) -> Value {
    serde_json::to_value(TropicalJson::from(t)).expect("curve serializes")
}

pub fn function_value(t: &TropicalCurve, f: &PLFunction) -> Value {
    let shown: Vec<String> = f.values.iter().map(|v| t.format(v)).collect();
    let mut v = serde_json::to_value(PLFunctionJson::from(f)).expect("function serializes");
    v["shown"] = json!(shown);
    v
}

fn function_text(t: &TropicalCurve, f: &PLFunction) -> String {
    f.values.iter().enumerate().map(|(v, x)| format!("v{v} = {}", t.format(x))).collect::<Vec<_>>().join(", ")
}

pub fn run(cmd: TropCmd) -> Result<Outcome> {
    match cmd {
        TropCmd::Lambda(ti) => {
            let t = load(&ti)?;
            let core = t.core();
            let lam = t.lambda()?;
            let aligned = t.is_radially_aligned()?;
            let radii: Vec<String> = if aligned { t.radii()?.iter().map(|r| t.format(r)).collect() } else { Vec::new() };
            let mut v = curve_value(&t);
            v["core"] = json!(core);
            v["lambda"] = function_value(&t, &lam);
            v["radially_aligned"] = json!(aligned);
            v["radii"] = json!(radii);
            let text = format!(
                "core {}\nλ: {}\nradially aligned: {}\nradii: {}",
                ids_text(&core),
                function_text(&t, &lam),
                if aligned { "yes" } else { "no" },
                radii.join(" < ")
            );
            Ok(Outcome::answer(aligned, v, text))
        }
        TropCmd::Subdivide { curve, rho } => {
            let t = load(&curve)?;
            let rho = input::monoid(&rho, &t)?;
            let sub = t.subdivide_at(&rho)?;
            let origin: Vec<Value> = sub
                .origin
                .iter()
                .map(|o| match *o {
                    VertexOrigin::Vertex(v) => json!({"vertex": v}),
                    VertexOrigin::Edge(e) => json!({"edge": e}),
                    VertexOrigin::Leg(m) => json!({"leg": m}),
                })
                .collect();
            let mut v = curve_value(&sub.curve);
            v["inside"] = json!(sub.inside);
            v["closed"] = json!(sub.closed);
            v["origin"] = json!(origin);
            let text = format!(
                "{} vertices, {} edges after subdividing at {}\nλ < ρ: {}\nλ ≤ ρ: {}\nλ: {}",
                sub.curve.num_vertices(),
                sub.curve.graph().edges().len(),
                t.format(&rho),
                ids_text(&sub.inside),
                ids_text(&sub.closed),
                function_text(&sub.curve, &sub.lambda)
            );
            Ok(Outcome::yes(v, text))
        }
        TropCmd::Tailfn { curve, support: s } => {
            let t = load(&curve)?;
            let sup = support(&s)?;
            let tails = t.tails_of_support(&sup)?;
            let mu = t.tail_function(&tails)?;
            let mut v = function_value(&t, &mu);
            v["tails"] = json!(tails.iter().map(|x| x.marks.to_vec()).collect::<Vec<_>>());
            let marks: Vec<String> = tails.iter().map(|x| format!("{{{}}}", x.marks)).collect();
            Ok(Outcome::yes(v, format!("tails {}\nμ: {}", marks.join(" "), function_text(&t, &mu))))
        }
        TropCmd::Multideg { curve, support: s } => {
            let t = load(&curve)?;
            let mu = t.tail_function_on(&support(&s)?)?;
            let deg = t.multidegree(&mu)?;
            let total: i64 = deg.iter().sum();
            let shown: Vec<String> = deg.iter().enumerate().map(|(v, d)| format!("v{v}: {d}")).collect();
            Ok(Outcome::yes(json!({"multidegree": deg, "total": total}), format!("{}\ntotal {total}", shown.join(", "))))
        }
        TropCmd::Facecontract { curve, kill, support: s } => {
            let t = load(&curve)?;
            let kill: BTreeSet<usize> = kill
                .split(',')
                .map(str::trim)
                .filter(|x| !x.is_empty())
                .map(|name| t.generator_index(name).ok_or_else(|| anyhow!("unknown generator {name:?}")))
                .collect::<Result<_>>()?;
            let fc = t.face_contract(&kill)?;
            let mut v = curve_value(&fc.curve);
            v["vertex_map"] = json!(fc.vertex_map);
            let mut text = format!(
                "{} vertices, {} edges, generators {}\nvertex map: {:?}",
                fc.curve.num_vertices(),
                fc.curve.graph().edges().len(),
                fc.curve.generators().join(","),
                fc.vertex_map
            );
            if let Some(s) = s {
                let mu = t.tail_function_on(&support(&s)?)?;
                let pulled = pullback_tail_function(&t, &fc, &mu)?;
                v["restricted"] = function_value(&fc.curve, &pulled);
                text.push_str(&format!("\nrestricted μ: {}", function_text(&fc.curve, &pulled)));
            }
            Ok(Outcome::yes(v, text))
        }
    }
}
