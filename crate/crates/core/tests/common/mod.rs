//! Brute-force reference implementations shared by the integration tests.
//! They favour obviousness over speed and reuse nothing from the engines
//! beyond the graph container.

#![allow(dead_code)]

use dpdp_core::graph::{Multigraph, VertexId};

/// Vertices of `g` adjacent to `v`, excluding `v` itself.
fn proper_neighbors(g: &Multigraph, v: VertexId) -> Vec<VertexId> {
    g.edges()
        .iter()
        .filter(|r| !r.is_loop() && (r.u == v || r.v == v))
        .map(|r| if r.u == v { r.v } else { r.u })
        .collect()
}

pub fn dominates(g: &Multigraph, mask: u64) -> bool {
    (0..g.vertex_count())
        .filter(|&v| mask & (1 << v) == 0)
        .all(|v| proper_neighbors(g, v).iter().any(|&u| mask & (1 << u) != 0))
}

/// Tries every way to pair off the members of `mask` along non-loop edges.
pub fn has_perfect_pairing(g: &Multigraph, mask: u64) -> bool {
    if mask == 0 {
        return true;
    }
    let first = mask.trailing_zeros() as usize;
    proper_neighbors(g, first)
        .into_iter()
        .filter(|&u| mask & (1 << u) != 0)
        .any(|u| has_perfect_pairing(g, mask & !(1 << first) & !(1 << u)))
}

/// All `(D, P)` partitions, as `P` masks, over the full `2ⁿ` space.
pub fn dp_partitions(g: &Multigraph) -> Vec<u64> {
    let n = g.vertex_count();
    assert!(n < 24, "oracle is exponential");
    let full: u64 = (1 << n) - 1;
    (0..=full)
        .filter(|&p| {
            let d = full & !p;
            dominates(g, d) && dominates(g, p) && has_perfect_pairing(g, p)
        })
        .collect()
}

pub fn is_dpdp(g: &Multigraph) -> bool {
    let n = g.vertex_count();
    let full: u64 = (1 << n) - 1;
    (0..=full).any(|p| {
        let d = full & !p;
        dominates(g, d) && dominates(g, p) && has_perfect_pairing(g, p)
    })
}

pub fn mask_of(items: impl IntoIterator<Item = VertexId>) -> u64 {
    items.into_iter().fold(0, |m, v| m | (1 << v))
}

/// Connected vertex sets `S` of a tree, `|S| ≥ 2`, in which every vertex has
/// exactly one neighbour outside `S` and that neighbour is not a leaf.
pub fn good_subtree_sets(t: &Multigraph) -> Vec<Vec<VertexId>> {
    let n = t.vertex_count();
    let mut out = Vec::new();
    for mask in 1u64..(1 << n) {
        if mask.count_ones() < 2 {
            continue;
        }
        let s: Vec<VertexId> = (0..n).filter(|&v| mask & (1 << v) != 0).collect();
        let ok = s.iter().all(|&x| {
            let outside: Vec<VertexId> = proper_neighbors(t, x)
                .into_iter()
                .filter(|&u| mask & (1 << u) == 0)
                .collect();
            outside.len() == 1 && proper_neighbors(t, outside[0]).len() >= 2
        });
        if ok && induces_connected(t, mask) {
            out.push(s);
        }
    }
    out
}

pub fn induces_connected(g: &Multigraph, mask: u64) -> bool {
    let start = mask.trailing_zeros() as usize;
    let mut seen = 1u64 << start;
    let mut stack = vec![start];
    while let Some(x) = stack.pop() {
        for u in proper_neighbors(g, x) {
            if mask & (1 << u) != 0 && seen & (1 << u) == 0 {
                seen |= 1 << u;
                stack.push(u);
            }
        }
    }
    seen == mask
}

/// `S₂(H)` written out directly: edge `uv` becomes `u a b v`, a loop at `u`
/// the triangle `u a b`, and each leaf `ℓ` of `H` is replaced by `α(ℓ)`
/// pendant copies hanging from the subdivision vertex next to it. Vertex ids
/// are arbitrary; compare up to isomorphism.
pub fn s2_by_hand(h: &Multigraph, alpha: impl Fn(VertexId) -> usize) -> Multigraph {
    let n = h.vertex_count();
    let is_leaf = |v: VertexId| h.degree(v) == 1;
    let mut next = n;
    let mut edges = Vec::new();
    for r in h.edges() {
        let (a, b) = (next, next + 1);
        next += 2;
        edges.push((a, b));
        for (end, sub) in [(r.u, a), (r.v, b)] {
            if is_leaf(end) {
                for _ in 0..alpha(end) {
                    edges.push((sub, next));
                    next += 1;
                }
            } else {
                edges.push((end, sub));
            }
        }
    }
    // drop the ids that belonged to leaves by compacting
    let used: Vec<bool> = {
        let mut u = vec![false; next];
        for &(a, b) in &edges {
            u[a] = true;
            u[b] = true;
        }
        u
    };
    let mut new_id = vec![usize::MAX; next];
    let mut count = 0;
    for v in 0..next {
        if used[v] {
            new_id[v] = count;
            count += 1;
        }
    }
    Multigraph::new(count, edges.into_iter().map(|(a, b)| (new_id[a], new_id[b]))).unwrap()
}
