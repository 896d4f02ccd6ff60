use std::collections::BTreeMap;

use crate::error::CatalogError;
use crate::graph::{Multigraph, VertexId};

pub const MAX_SIMPLE_ORDER: usize = 7;
pub const MAX_MULTIGRAPH_EDGES: usize = 5;

/// Isomorphism-invariant code and the relabelled graph realising it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalForm {
    /// `n` followed by the upper triangle (diagonal = loop counts) of the
    /// multiplicity matrix, row by row.
    pub code: Vec<u8>,
    pub graph: Multigraph,
}

/// Individualisation-refinement: colour refinement splits the vertices into
/// isomorphism-invariant cells; the first non-singleton cell is split by
/// trying each of its vertices in turn until every cell is a singleton. The
/// code is the least one over all discrete colourings reached.
pub fn canonical_form(g: &Multigraph) -> CanonicalForm {
    let n = g.vertex_count();
    let mut mult = vec![vec![0u8; n]; n];
    for r in g.edges() {
        let count = u8::try_from(g.multiplicity(r.u, r.v)).expect("multiplicity fits in a byte");
        mult[r.u][r.v] = count;
        mult[r.v][r.u] = count;
    }
    let initial: Vec<(usize, usize)> = (0..n).map(|v| (g.loop_count(v), g.degree(v))).collect();
    let colours = refine(g, &mult, rank(&initial));
    let mut best: Option<(Vec<u8>, Vec<VertexId>)> = None;
    search(g, &mult, colours, &mut best);
    let (code, order) = best.unwrap_or_else(|| (vec![0], Vec::new()));

    let mut position = vec![0; n];
    for (i, &v) in order.iter().enumerate() {
        position[v] = i;
    }
    let mut edges: Vec<(VertexId, VertexId)> = g
        .edges()
        .iter()
        .map(|r| {
            let (a, b) = (position[r.u], position[r.v]);
            (a.min(b), a.max(b))
        })
        .collect();
    edges.sort_unstable();
    CanonicalForm {
        code,
        graph: Multigraph::new(n, edges).expect("relabelling preserves range"),
    }
}

fn cell_count(colours: &[usize]) -> usize {
    colours.iter().max().map_or(0, |c| c + 1)
}

/// Splits cells by the colour multiset of each vertex's neighbourhood until
/// stable. New colours sort after the old colour, so cell order is kept.
fn refine(g: &Multigraph, mult: &[Vec<u8>], mut colours: Vec<usize>) -> Vec<usize> {
    let n = g.vertex_count();
    loop {
        let signatures: Vec<(usize, Vec<(usize, u8)>)> = (0..n)
            .map(|v| {
                let mut sig: Vec<(usize, u8)> = g
                    .neighbors(v)
                    .iter()
                    .filter(|&&u| u != v)
                    .map(|&u| (colours[u], mult[v][u]))
                    .collect();
                sig.sort_unstable();
                (colours[v], sig)
            })
            .collect();
        let next = rank(&signatures);
        let stable = cell_count(&next) == cell_count(&colours);
        colours = next;
        if stable {
            return colours;
        }
    }
}

fn rank<T: Ord + Clone>(keys: &[T]) -> Vec<usize> {
    let mut distinct: Vec<T> = keys.to_vec();
    distinct.sort();
    distinct.dedup();
    keys.iter()
        .map(|k| distinct.binary_search(k).expect("key is present"))
        .collect()
}

fn search(g: &Multigraph, mult: &[Vec<u8>], colours: Vec<usize>, best: &mut Option<(Vec<u8>, Vec<VertexId>)>) {
    let n = colours.len();
    if cell_count(&colours) == n {
        let mut order = vec![0; n];
        for (v, &c) in colours.iter().enumerate() {
            order[c] = v;
        }
        let code = code_for(mult, &order);
        if best.as_ref().is_none_or(|(b, _)| code < *b) {
            *best = Some((code, order));
        }
        return;
    }
    let mut sizes = vec![0usize; cell_count(&colours)];
    for &c in &colours {
        sizes[c] += 1;
    }
    let target = sizes.iter().position(|&s| s > 1).expect("some cell is not a singleton");
    let mut tried: Vec<VertexId> = Vec::new();
    for v in (0..n).filter(|&v| colours[v] == target) {
        // swapping twins is an automorphism, so their branches agree
        if tried.iter().any(|&u| are_twins(mult, u, v)) {
            continue;
        }
        tried.push(v);
        let keys: Vec<(usize, bool)> = (0..n).map(|u| (colours[u], u != v)).collect();
        search(g, mult, refine(g, mult, rank(&keys)), best);
    }
}

fn are_twins(mult: &[Vec<u8>], u: VertexId, v: VertexId) -> bool {
    mult[u][u] == mult[v][v] && (0..mult.len()).all(|x| x == u || x == v || mult[u][x] == mult[v][x])
}

fn code_for(mult: &[Vec<u8>], order: &[VertexId]) -> Vec<u8> {
    let n = order.len();
    let mut code = Vec::with_capacity(1 + n * (n + 1) / 2);
    code.push(u8::try_from(n).expect("order fits in a byte"));
    for i in 0..n {
        for j in i..n {
            code.push(mult[order[i]][order[j]]);
        }
    }
    code
}

pub fn are_isomorphic(a: &Multigraph, b: &Multigraph) -> bool {
    a.vertex_count() == b.vertex_count()
        && a.edge_count() == b.edge_count()
        && canonical_form(a).code == canonical_form(b).code
}

/// Connected simple graphs on `n` vertices, one per isomorphism class, in
/// canonical-code order. Built by adding a vertex with a nonempty
/// neighbourhood to each graph on `n − 1` vertices.
pub fn enumerate_connected_simple(n: usize) -> Result<Vec<Multigraph>, CatalogError> {
    if !(1..=MAX_SIMPLE_ORDER).contains(&n) {
        return Err(CatalogError::OutOfRange(n));
    }
    let mut level: BTreeMap<Vec<u8>, Multigraph> = BTreeMap::new();
    let k1 = canonical_form(&Multigraph::edgeless(1));
    level.insert(k1.code, k1.graph);
    for k in 2..=n {
        let mut next = BTreeMap::new();
        for g in level.values() {
            let base: Vec<(VertexId, VertexId)> = g.edges().iter().map(|r| (r.u, r.v)).collect();
            for mask in 1u32..(1 << (k - 1)) {
                let mut edges = base.clone();
                edges.extend((0..k - 1).filter(|i| mask & (1 << i) != 0).map(|i| (i, k - 1)));
                let c = canonical_form(&Multigraph::new(k, edges).expect("new vertex is in range"));
                next.entry(c.code).or_insert(c.graph);
            }
        }
        level = next;
    }
    Ok(level.into_values().collect())
}

/// Connected multigraphs (loops and parallel edges allowed) with between 1
/// and `max_edges` edges, one per isomorphism class, ordered by edge count
/// and then canonical code. Each level adds a loop, a parallel or new edge
/// between existing vertices, or a pendant edge to a new vertex.
pub fn enumerate_connected_multigraphs(max_edges: usize) -> Result<Vec<Multigraph>, CatalogError> {
    if max_edges > MAX_MULTIGRAPH_EDGES {
        return Err(CatalogError::OutOfRange(max_edges));
    }
    let mut out = Vec::new();
    let mut level: BTreeMap<Vec<u8>, Multigraph> = BTreeMap::new();
    for seed in [
        Multigraph::new(1, [(0, 0)]).expect("loop"),
        Multigraph::new(2, [(0, 1)]).expect("edge"),
    ] {
        let c = canonical_form(&seed);
        level.insert(c.code, c.graph);
    }
    for m in 1..=max_edges {
        if m > 1 {
            let mut next = BTreeMap::new();
            for g in level.values() {
                let n = g.vertex_count();
                let base: Vec<(VertexId, VertexId)> = g.edges().iter().map(|r| (r.u, r.v)).collect();
                let mut candidates = Vec::new();
                for u in 0..n {
                    for v in u..n {
                        let mut edges = base.clone();
                        edges.push((u, v));
                        candidates.push(Multigraph::new(n, edges).expect("in range"));
                    }
                    let mut edges = base.clone();
                    edges.push((u, n));
                    candidates.push(Multigraph::new(n + 1, edges).expect("in range"));
                }
                for c in candidates {
                    let c = canonical_form(&c);
                    next.entry(c.code).or_insert(c.graph);
                }
            }
            level = next;
        }
        out.extend(level.values().cloned());
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{complete, cycle, path, star};

    #[test]
    fn canonical_form_is_label_invariant() {
        let a = Multigraph::new(4, [(0, 1), (1, 2), (2, 3), (3, 3)]).unwrap();
        let b = Multigraph::new(4, [(3, 2), (2, 1), (1, 0), (0, 0)]).unwrap();
        assert_eq!(canonical_form(&a), canonical_form(&b));
        assert!(are_isomorphic(&a, &b));
        assert!(!are_isomorphic(&path(4), &star(3)));
    }

    #[test]
    fn canonical_graph_is_isomorphic_copy() {
        for g in [cycle(5), complete(4), path(6), cycle(2)] {
            let c = canonical_form(&g);
            assert_eq!(canonical_form(&c.graph).code, c.code);
            assert_eq!(c.graph.edge_count(), g.edge_count());
        }
    }

    #[test]
    fn simple_counts() {
        let counts: Vec<usize> = (1..=6).map(|n| enumerate_connected_simple(n).unwrap().len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 6, 21, 112]);
        assert!(enumerate_connected_simple(0).is_err());
        assert!(enumerate_connected_simple(8).is_err());
    }

    #[test]
    fn multigraph_small_levels() {
        assert_eq!(enumerate_connected_multigraphs(1).unwrap().len(), 2);
        let two = enumerate_connected_multigraphs(2).unwrap();
        assert_eq!(two.len(), 6);
        let expected = [
            Multigraph::new(2, [(0, 1), (0, 1)]).unwrap(),
            path(3),
            Multigraph::new(2, [(0, 1), (1, 1)]).unwrap(),
            Multigraph::new(1, [(0, 0), (0, 0)]).unwrap(),
        ];
        for g in &expected {
            assert!(two.iter().any(|h| are_isomorphic(g, h)), "{g:?}");
        }
        assert!(two.iter().all(|g| !g.has_isolated_vertex() && g.is_connected()));
        assert!(enumerate_connected_multigraphs(6).is_err());
    }
}
