use std::fs;
use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use serde::Deserialize;
use toric_matroids::catalog::{self, Named};
use toric_matroids::exchange::default_order;
use toric_matroids::lift::Step;
use toric_matroids::oracle::basis_weight;
use toric_matroids::{BinomialSet, Matroid, MonomialOrder};

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct GraphDoc {
    edges: Vec<(usize, usize)>,
}

/// A matroid file, a graph file `{"edges": [[u, v], ...]}`, or a catalog
/// spec (`MK4`, `W3`, `P6`, `Q6`, `u:r,n`).
pub fn load_matroid(source: &str) -> Result<Matroid> {
    let path = Path::new(source);
    if path.is_file() {
        let text = fs::read_to_string(path).with_context(|| format!("reading {source}"))?;
        return parse_matroid_text(&text).with_context(|| format!("in {source}"));
    }
    catalog_spec(source)
}

pub fn parse_matroid_text(text: &str) -> Result<Matroid> {
    let value: serde_json::Value = serde_json::from_str(text).context("not valid JSON")?;
    if value.get("edges").is_some() {
        let doc: GraphDoc = serde_json::from_value(value).context("malformed graph file")?;
        return Ok(catalog::graphic(&doc.edges)?);
    }
    Ok(Matroid::from_json(text)?)
}

fn catalog_spec(spec: &str) -> Result<Matroid> {
    if let Some(params) = spec.strip_prefix("u:").or_else(|| spec.strip_prefix("U:")) {
        let (r, n) = params
            .split_once(',')
            .ok_or_else(|| anyhow!("uniform spec must look like u:r,n, got {spec:?}"))?;
        let r = r.trim().parse().with_context(|| format!("bad rank in {spec:?}"))?;
        let n = n.trim().parse().with_context(|| format!("bad size in {spec:?}"))?;
        return Ok(catalog::uniform(r, n)?);
    }
    match spec.parse::<Named>() {
        Ok(name) => Ok(name.build()),
        Err(_) => bail!("{spec:?} is neither a readable file nor a catalog spec (MK4, W3, P6, Q6, u:r,n)"),
    }
}

pub fn load_set(path: &str) -> Result<BinomialSet> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {path}"))?;
    BinomialSet::from_json(&text).with_context(|| format!("in {path}"))
}

/// `degrevlex`, `lex` or `weight:<file>` over the canonical bases of `m`; a
/// weight file is a JSON array with one non-negative entry per basis,
/// ties broken by degrevlex.
pub fn parse_order(spec: Option<&str>, m: &Matroid) -> Result<MonomialOrder> {
    let base = default_order(m);
    match spec.unwrap_or("degrevlex") {
        "degrevlex" => Ok(base),
        "lex" => Ok(MonomialOrder::lex(base.ranking().to_vec())),
        other => {
            let file = other
                .strip_prefix("weight:")
                .ok_or_else(|| anyhow!("unknown order {other:?}; use degrevlex, lex or weight:<file>"))?;
            let text = fs::read_to_string(file).with_context(|| format!("reading {file}"))?;
            let w: Vec<u64> = serde_json::from_str(&text).with_context(|| format!("weight file {file}"))?;
            if w.len() != m.num_bases() {
                bail!("weight file has {} entries, the matroid has {} bases", w.len(), m.num_bases());
            }
            Ok(base.with_weight(&basis_weight(&w)))
        }
    }
}

/// Comma-separated steps `s<e>` / `p<e>` (or `series:<e>` / `parallel:<e>`).
pub fn parse_steps(text: &str) -> Result<Vec<Step>> {
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| {
            let (kind, at) = match s.split_once(':') {
                Some(parts) => parts,
                None => s.split_at(s.find(|ch: char| ch.is_ascii_digit()).unwrap_or(s.len())),
            };
            let at: usize = at.parse().with_context(|| format!("bad element in step {s:?}"))?;
            match kind {
                "s" | "series" => Ok(Step::series(at)),
                "p" | "parallel" => Ok(Step::parallel(at)),
                _ => bail!("unknown step kind in {s:?}"),
            }
        })
        .collect()
}
