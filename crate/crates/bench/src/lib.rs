//! Shared inputs for the benchmarks.

use dpdp_core::catalog::{cycle, enumerate_connected_multigraphs, path};
use dpdp_core::subdivision::{build_s2, Alpha};
use dpdp_core::Multigraph;

/// `S₂(H)` for every connected multigraph `H` with at most `max_edges` edges.
pub fn s2_sweep(max_edges: usize) -> Vec<(Multigraph, Multigraph)> {
    enumerate_connected_multigraphs(max_edges)
        .expect("bound is within the catalog")
        .into_iter()
        .map(|h| {
            let (g, _) = build_s2(&h, &Alpha::new()).expect("catalog graphs have no isolated vertices");
            (h, g)
        })
        .collect()
}

pub fn cycles(lengths: &[usize]) -> Vec<Multigraph> {
    lengths.iter().map(|&n| cycle(n)).collect()
}

pub fn paths(lengths: &[usize]) -> Vec<Multigraph> {
    lengths.iter().map(|&n| path(n)).collect()
}
