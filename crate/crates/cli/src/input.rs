use std::path::Path;

use anyhow::{bail, Context, Result};
use clap::ValueEnum;
use dpdp_core::catalog::{read_edge_list, read_graph6_lines};
use dpdp_core::subdivision::Alpha;
use dpdp_core::Multigraph;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    /// graph6, one graph per line
    G6,
    /// edge list: `n m` then `u v` per edge
    El,
}

impl Format {
    pub fn resolve(explicit: Option<Format>, path: &Path) -> Result<Format> {
        if let Some(f) = explicit {
            return Ok(f);
        }
        match path.extension().and_then(|e| e.to_str()) {
            Some("g6" | "graph6") => Ok(Format::G6),
            Some("el" | "edges" | "txt") => Ok(Format::El),
            _ => bail!("cannot infer the format of {}; pass --format g6|el", path.display()),
        }
    }
}

pub fn read_graphs(path: &Path, format: Option<Format>) -> Result<Vec<Multigraph>> {
    let format = Format::resolve(format, path)?;
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let graphs = match format {
        Format::G6 => read_graph6_lines(&text)?,
        Format::El => vec![read_edge_list(&text)?],
    };
    Ok(graphs)
}

/// Exactly one graph from the file.
pub fn read_graph(path: &Path, format: Option<Format>) -> Result<Multigraph> {
    let mut graphs = read_graphs(path, format)?;
    match graphs.len() {
        1 => Ok(graphs.pop().expect("length checked")),
        0 => bail!("{} contains no graph", path.display()),
        k => bail!("{} contains {k} graphs; this command takes one", path.display()),
    }
}

/// `leaf:count,leaf:count`; unlisted leaves keep multiplicity 1.
pub fn parse_alpha(spec: &str) -> Result<Alpha> {
    let mut alpha = Alpha::new();
    for entry in spec.split(',').map(str::trim).filter(|e| !e.is_empty()) {
        let (leaf, count) = entry
            .split_once(':')
            .with_context(|| format!("alpha entry `{entry}` is not `leaf:count`"))?;
        let leaf: usize = leaf.trim().parse().with_context(|| format!("bad leaf id in `{entry}`"))?;
        let count: usize = count.trim().parse().with_context(|| format!("bad count in `{entry}`"))?;
        if alpha.insert(leaf, count).is_some() {
            bail!("leaf {leaf} listed twice in alpha");
        }
    }
    Ok(alpha)
}
