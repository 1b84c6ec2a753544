//! Parsing of command-line values and JSON documents.

use std::io::Read;

use anyhow::{anyhow, bail, Context, Result};
use collider::io::{CurveJson, GraphJson, TropicalJson};
use collider::qk::{chain_to_layer_tree, PartitionChain};
use collider::tropical::{MonoidElement, TropicalCurve};
use collider::{CurveModel, MarkedGraph, QSet, SimplicialComplex};
use serde::de::DeserializeOwned;

/// Reads JSON from a path, from stdin for "-", or inline when it starts with '{' or '['.
pub fn read_json<T: DeserializeOwned>(src: &str) -> Result<T> {
    let text = if src.trim_start().starts_with(['{', '[']) {
        src.to_string()
    } else if src == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).context("reading stdin")?;
        s
    } else {
        std::fs::read_to_string(src).with_context(|| format!("reading {src}"))?
    };
    serde_json::from_str(&text).map_err(|e| anyhow!("malformed JSON: {e}"))
}

pub fn graph(src: &str) -> Result<MarkedGraph> {
    Ok(read_json::<GraphJson>(src)?.to_graph()?)
}

pub fn curve(src: &str) -> Result<CurveModel> {
    Ok(read_json::<CurveJson>(src)?.to_curve()?)
}

/// A tropical curve from JSON, or the layer tree of a partition chain.
pub fn tropical(input: Option<&str>, chain: Option<&str>) -> Result<TropicalCurve> {
    match (input, chain) {
        (Some(src), None) => Ok(read_json::<TropicalJson>(src)?.to_curve()?),
        (None, Some(c)) => Ok(chain_to_layer_tree(&PartitionChain::parse(c)?)),
        _ => bail!("give exactly one of --input and --chain"),
    }
}

/// "n:12/34", or a face list such as "12/34" or "12,34" with n known.
pub fn complex(s: &str, n: Option<usize>) -> Result<SimplicialComplex> {
    if s.contains(':') {
        let k = SimplicialComplex::parse(s)?;
        if let Some(n) = n.filter(|&n| n != k.n()) {
            bail!("complex {s:?} is on {} marks, expected {n}", k.n());
        }
        return Ok(k);
    }
    let n = n.ok_or_else(|| anyhow!("the number of marks is unknown; write K as \"n:faces\" or pass --n"))?;
    let sep = if n > 9 || s.contains('/') { '/' } else { ',' };
    let faces = collider::complexes::parse_face_list(s, n, sep)?;
    Ok(SimplicialComplex::from_faces(n, &faces)?)
}

pub fn qset(s: &str, n: usize) -> Result<QSet> {
    Ok(QSet::parse(s, n)?)
}

/// Comma-separated 0-based ids.
pub fn ids(s: &str) -> Result<Vec<usize>> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| t.parse().with_context(|| format!("bad id {t:?}")))
        .collect()
}

/// "0", "e1+2e2" over the curve's generator names, or a coefficient list "1,2".
pub fn monoid(s: &str, curve: &TropicalCurve) -> Result<MonoidElement> {
    let s = s.trim();
    let rank = curve.rank();
    if s == "0" {
        return Ok(MonoidElement::zero(rank));
    }
    if s.chars().all(|c| c.is_ascii_digit() || c == ',' || c.is_whitespace()) {
        let coeffs: Vec<u64> = s.split(',').map(|t| t.trim().parse()).collect::<std::result::Result<_, _>>()?;
        if coeffs.len() != rank {
            bail!("{s:?} has {} coefficients, the curve has {rank} generators", coeffs.len());
        }
        return Ok(MonoidElement::from_coeffs(coeffs));
    }
    let mut coeffs = vec![0u64; rank];
    for term in s.split('+').map(str::trim) {
        let split = term.find(|c: char| !c.is_ascii_digit()).ok_or_else(|| anyhow!("bad term {term:?}"))?;
        let (k, name) = term.split_at(split);
        let k: u64 = if k.is_empty() { 1 } else { k.parse()? };
        let i = curve.generator_index(name).ok_or_else(|| anyhow!("unknown generator {name:?}"))?;
        coeffs[i] += k;
    }
    Ok(MonoidElement::from_coeffs(coeffs))
}
