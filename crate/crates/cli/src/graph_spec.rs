//! `name:param` shorthand for builtin graphs, or a path to a graph file.

use std::path::Path;

use anyhow::{bail, Context, Result};
use hodos_core::expanders::{self, LabelledRegularGraph};

const DEFAULT_TRIES: usize = 1000;

/// Resolves a graph spec. `m` is the vertex count the caller needs and is
/// used when the spec leaves it out.
///
/// Accepted forms: `clique_loops`, `complete`, `cycle`, `self_loops` (each
/// with an optional `:m`), `hypercube:d`, `rr:k=4,lam=0.9` (optionally with
/// `m=` and `tries=`; without `lam` the graph is not certified), or a path.
pub fn parse_graph(spec: &str, m: Option<usize>, seed: u64) -> Result<LabelledRegularGraph> {
    let (name, param) = match spec.split_once(':') {
        Some((a, b)) => (a, Some(b)),
        None => (spec, None),
    };
    let size = |param: Option<&str>| -> Result<usize> {
        match param {
            Some(p) => p
                .parse()
                .with_context(|| format!("bad vertex count {p:?} in graph spec {spec:?}")),
            None => m.with_context(|| format!("graph spec {spec:?} needs a vertex count")),
        }
    };
    let g = match name {
        "clique_loops" => expanders::clique_loops(size(param)?)?,
        "complete" => expanders::complete(size(param)?)?,
        "cycle" => expanders::cycle(size(param)?)?,
        "self_loops" => expanders::self_loops(size(param)?)?,
        "hypercube" => {
            let d = match param {
                Some(p) => p.parse().with_context(|| format!("bad dimension {p:?}"))?,
                None => {
                    let m = m.context("hypercube needs a dimension")?;
                    if !m.is_power_of_two() {
                        bail!("hypercube needs a power-of-two vertex count, got {m}");
                    }
                    m.trailing_zeros() as usize
                }
            };
            expanders::hypercube(d)?
        }
        "rr" | "random_regular" => random_regular(spec, param.unwrap_or(""), m, seed)?,
        _ => {
            let path = Path::new(spec);
            if !path.exists() {
                bail!("unknown graph spec {spec:?}");
            }
            let text = std::fs::read_to_string(path)
                .with_context(|| format!("reading {}", path.display()))?;
            LabelledRegularGraph::from_text(&text)
                .with_context(|| format!("parsing {}", path.display()))?
        }
    };
    if let Some(m) = m {
        if g.num_vertices() != m {
            bail!(
                "graph {spec:?} has {} vertices, expected {m}",
                g.num_vertices()
            );
        }
    }
    Ok(g)
}

fn random_regular(
    spec: &str,
    params: &str,
    m: Option<usize>,
    seed: u64,
) -> Result<LabelledRegularGraph> {
    let mut k = None;
    let mut lam = None;
    let mut tries = DEFAULT_TRIES;
    let mut m = m;
    for kv in params.split(',').filter(|s| !s.is_empty()) {
        let (key, value) = kv
            .split_once('=')
            .with_context(|| format!("expected key=value in graph spec {spec:?}, got {kv:?}"))?;
        let bad = || format!("bad value for {key} in graph spec {spec:?}");
        match key {
            "k" => k = Some(value.parse::<usize>().with_context(bad)?),
            "lam" => lam = Some(value.parse::<f64>().with_context(bad)?),
            "m" => m = Some(value.parse::<usize>().with_context(bad)?),
            "tries" => tries = value.parse().with_context(bad)?,
            _ => bail!("unknown key {key:?} in graph spec {spec:?}"),
        }
    }
    let k = k.with_context(|| format!("graph spec {spec:?} needs k="))?;
    let m = m.with_context(|| format!("graph spec {spec:?} needs a vertex count"))?;
    Ok(match lam {
        Some(target) => expanders::certify_random_regular(m, k, target, tries, seed)?.graph,
        None => expanders::random_regular(m, k, seed)?,
    })
}
