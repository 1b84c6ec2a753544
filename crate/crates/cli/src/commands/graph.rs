use anyhow::Result;
use collider::graphs::{enumerate_stable_graphs, rho_k, z_k};
use collider::io::{CurveJson, GraphJson};
use serde_json::json;

use super::ids_text;
use crate::input;
use crate::{GraphCmd, Outcome};

pub fn run(cmd: GraphCmd) -> Result<Outcome> {
    match cmd {
        GraphCmd::Tails { input } => {
            let g = input::graph(&input)?;
            let tails = g.rational_tails();
            let v = json!(tails
                .iter()
                .map(|t| json!({"vertices": t.vertices, "leading_edge": t.leading_edge, "marks": t.marks.to_vec()}))
                .collect::<Vec<_>>());
            let lines: Vec<String> = tails
                .iter()
                .map(|t| format!("vertices {} leading edge {} marks {{{}}}", ids_text(&t.vertices), t.leading_edge, t.marks))
                .collect();
            Ok(Outcome::yes(v, format!("{} rational tails\n{}", tails.len(), lines.join("\n"))))
        }
        GraphCmd::Zk { input, k } => {
            let g = input::graph(&input)?;
            let k = input::complex(&k, Some(g.n()))?;
            let z = z_k(&g, &k)?;
            Ok(Outcome::yes(json!({"vertices": z}), format!("Z_K = {}", ids_text(&z))))
        }
        GraphCmd::Reduce { input, k } => {
            let g = input::graph(&input)?;
            let k = input::complex(&k, Some(g.n()))?;
            let c = rho_k(&g, &k)?;
            Ok(Outcome::yes(serde_json::to_value(CurveJson::from(&c))?, c.to_string()))
        }
        GraphCmd::Enumerate { g, n } => {
            let graphs = enumerate_stable_graphs(g, n)?;
            let v = json!(graphs.iter().map(GraphJson::from).collect::<Vec<_>>());
            let lines: Vec<String> = graphs.iter().map(|x| serde_json::to_string(&GraphJson::from(x)).expect("graph serializes")).collect();
            Ok(Outcome::yes(v, format!("{}\n{} stable graphs", lines.join("\n"), graphs.len())))
        }
    }
}
