//! Named graph families, small-graph enumeration and file formats.

mod enumeration;
mod graph6;
mod io;
mod trees;

pub use enumeration::{
    are_isomorphic, canonical_form, enumerate_connected_multigraphs, enumerate_connected_simple,
    CanonicalForm, MAX_MULTIGRAPH_EDGES, MAX_SIMPLE_ORDER,
};
pub use graph6::{read_graph6, read_graph6_lines, write_graph6};
pub use io::{read_edge_list, write_edge_list};
pub use trees::{enumerate_trees, random_tree, tree_code};

use serde::{Deserialize, Serialize};

use crate::error::CatalogError;
use crate::graph::Multigraph;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum GraphFamily {
    Path { n: usize },
    /// `m = 1` is a loop, `m = 2` a double edge.
    Cycle { m: usize },
    Complete { n: usize },
    CompleteBipartite { a: usize, b: usize },
    /// `K_{1,k}` with centre 0.
    Star { k: usize },
    /// Adjacent centres 0 and 1 carrying `r` and `s` leaves.
    DoubleStar { r: usize, s: usize },
    /// `pendants[v]` pendant edges at each vertex `v` of `base`.
    Corona { base: Multigraph, pendants: Vec<usize> },
}

pub fn make(family: &GraphFamily) -> Result<Multigraph, CatalogError> {
    let invalid = |family: &'static str, reason: &str| CatalogError::InvalidParameters {
        family,
        reason: reason.to_string(),
    };
    match family {
        GraphFamily::Path { n } if *n == 0 => Err(invalid("path", "n must be at least 1")),
        GraphFamily::Path { n } => Ok(path(*n)),
        GraphFamily::Cycle { m } if *m == 0 => Err(invalid("cycle", "m must be at least 1")),
        GraphFamily::Cycle { m } => Ok(cycle(*m)),
        GraphFamily::Complete { n } if *n == 0 => Err(invalid("complete", "n must be at least 1")),
        GraphFamily::Complete { n } => Ok(complete(*n)),
        GraphFamily::CompleteBipartite { a, b } if *a == 0 || *b == 0 => {
            Err(invalid("complete_bipartite", "both sides must be nonempty"))
        }
        GraphFamily::CompleteBipartite { a, b } => Ok(complete_bipartite(*a, *b)),
        GraphFamily::Star { k } if *k == 0 => Err(invalid("star", "k must be at least 1")),
        GraphFamily::Star { k } => Ok(star(*k)),
        GraphFamily::DoubleStar { r, s } if *r == 0 || *s == 0 => {
            Err(invalid("double_star", "r and s must be at least 1"))
        }
        GraphFamily::DoubleStar { r, s } => Ok(double_star(*r, *s)),
        GraphFamily::Corona { base, pendants } => generalized_corona(base, pendants),
    }
}

fn build(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Multigraph {
    Multigraph::new(n, edges).expect("family generators stay in range")
}

/// `P_n`: edges `{i, i+1}`.
pub fn path(n: usize) -> Multigraph {
    build(n, (1..n).map(|i| (i - 1, i)))
}

/// `C_m`: edges `{i, (i+1) mod m}`. Panics for `m = 0`.
pub fn cycle(m: usize) -> Multigraph {
    assert!(m >= 1, "cycle needs at least one vertex");
    build(m, (0..m).map(|i| (i, (i + 1) % m)))
}

pub fn complete(n: usize) -> Multigraph {
    build(n, (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))))
}

/// Sides `0..a` and `a..a+b`.
pub fn complete_bipartite(a: usize, b: usize) -> Multigraph {
    build(a + b, (0..a).flat_map(|i| (a..a + b).map(move |j| (i, j))))
}

pub fn star(k: usize) -> Multigraph {
    build(k + 1, (1..=k).map(|i| (0, i)))
}

pub fn double_star(r: usize, s: usize) -> Multigraph {
    let edges = std::iter::once((0, 1))
        .chain((0..r).map(|i| (0, 2 + i)))
        .chain((0..s).map(|i| (1, 2 + r + i)));
    build(2 + r + s, edges)
}

/// `F ∘ K₁`: one pendant edge at every vertex.
pub fn corona(base: &Multigraph) -> Multigraph {
    generalized_corona(base, &vec![1; base.vertex_count()]).expect("one pendant per vertex is valid")
}

/// Base vertices keep their ids; pendant vertices follow in base-vertex order.
pub fn generalized_corona(base: &Multigraph, pendants: &[usize]) -> Result<Multigraph, CatalogError> {
    if pendants.len() != base.vertex_count() {
        return Err(CatalogError::InvalidParameters {
            family: "corona",
            reason: format!("{} pendant counts for {} vertices", pendants.len(), base.vertex_count()),
        });
    }
    if let Some(v) = pendants.iter().position(|&c| c == 0) {
        return Err(CatalogError::InvalidParameters {
            family: "corona",
            reason: format!("vertex {v} needs at least one pendant"),
        });
    }
    let mut edges: Vec<(usize, usize)> = base.edges().iter().map(|r| (r.u, r.v)).collect();
    let mut next = base.vertex_count();
    for (v, &count) in pendants.iter().enumerate() {
        for _ in 0..count {
            edges.push((v, next));
            next += 1;
        }
    }
    Ok(build(next, edges))
}
