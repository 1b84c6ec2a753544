use anyhow::Result;
use collider::complexes::{count_complexes, count_complexes_up_to_iso, count_threshold, count_threshold_up_to_iso};
use serde_json::json;

use crate::{Ctx, Outcome, QkCmd, QkInput, ReproCmd, TropInput};

const EXAMPLE_CHAIN: &str = "12/34,1/2/34";
const EXAMPLE_K: &str = "12";
/// The tacnode stability condition and the triple-point one.
const EXAMPLE_QS: [(&str, &str); 2] = [("Q1", "1234,12/34"), ("Q2", "1234,12/34,1/234,2/134,1/2/34")];

pub fn run(cmd: ReproCmd, ctx: &Ctx) -> Result<Outcome> {
    match cmd {
        ReproCmd::Table1 { n, upto_iso } => {
            let single = n.is_some();
            let ns: Vec<usize> = n.map_or((2..=5).collect(), |n| vec![n]);
            let mut rows = Vec::new();
            let mut lines = Vec::new();
            for n in ns {
                let (c, t) = if upto_iso {
                    (count_complexes_up_to_iso(n)?, count_threshold_up_to_iso(n)?)
                } else {
                    (count_complexes(n)?, count_threshold(n)?)
                };
                rows.push(json!({"n": n, "complexes": c, "threshold": t}));
                lines.push(if single { format!("complexes: {c}, threshold: {t}") } else { format!("n = {n}: complexes: {c}, threshold: {t}") });
            }
            Ok(Outcome::yes(json!({"upto_iso": upto_iso, "rows": rows}), lines.join("\n")))
        }
        ReproCmd::Example => {
            let mut out = Vec::new();
            let mut text = Vec::new();
            for (name, q) in EXAMPLE_QS {
                let cmd = QkCmd::Limit {
                    curve: TropInput { input: None, chain: Some(EXAMPLE_CHAIN.into()) },
                    qk: QkInput { q: q.into(), k: EXAMPLE_K.into() },
                };
                let o = super::qk::run(cmd, ctx)?;
                text.push(format!("{name} = {{{q}}}, K = {{{EXAMPLE_K}}} on {EXAMPLE_CHAIN}:\n{}", o.text));
                out.push(json!({"name": name, "Q": q, "result": o.json}));
            }
            Ok(Outcome::yes(json!({"chain": EXAMPLE_CHAIN, "K": EXAMPLE_K, "cases": out}), text.join("\n\n")))
        }
    }
}
