//! Good subgraphs: certificates, exhaustive search, the edge-removal
//! reduction they induce on `S₂(H)`, and the tree specialisation.
//!
//! A certificate names a subgraph `Q` of `H`, an edge set `E` with
//! `E_Q⁻ ⊆ E ⊆ E_H ∖ E_Q`, an orientation of `E`, and one oriented path per
//! vertex of `Q` such that the paths partition the arcs and satisfy the three
//! degree conditions:
//!
//! 1. a vertex `v` of `Q` starts exactly one path, `d⁺(v) = 1` and
//!    `d⁻(v) = d_H(v) − d_Q(v) − 1`;
//! 2. an inner path vertex `x` has `d⁺(x) = 1` and `d⁻(x) = d_H(x) − 1`;
//! 3. a path end `x` has `d⁻(x) < d_H(x)`.
//!
//! Degrees count loops twice; an oriented loop adds one to each of `d⁺` and
//! `d⁻`. Paths visit distinct vertices, except that the last arc may return
//! to a vertex already on the path (a loop is the shortest such arc).

use std::collections::{BTreeMap, BTreeSet};

use itertools::Itertools;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::domination::{is_dp_pair, DpPair};
use crate::error::GoodSubgraphError;
use crate::graph::{EdgeId, Multigraph, VertexId, VertexSet};
use crate::subdivision::{build_s2, Alpha, EdgeSide, S2Labeling};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GoodSubgraphCertificate {
    pub q_vertices: BTreeSet<VertexId>,
    pub q_edges: BTreeSet<EdgeId>,
    pub e_set: BTreeSet<EdgeId>,
    /// Orientation of each edge of `E` as `(tail, head)`.
    pub arcs: BTreeMap<EdgeId, (VertexId, VertexId)>,
    /// The path starting at each vertex of `Q`, as a sequence of arcs.
    pub paths: BTreeMap<VertexId, Vec<EdgeId>>,
}

impl GoodSubgraphCertificate {
    /// Head of the last arc of the path starting at `v`.
    pub fn path_end(&self, v: VertexId) -> Option<VertexId> {
        let last = self.paths.get(&v)?.last()?;
        self.arcs.get(last).map(|&(_, head)| head)
    }
}

/// First clause a certificate fails.
#[derive(Clone, Debug, PartialEq, Eq, Error, Serialize, Deserialize)]
#[serde(tag = "clause", rename_all = "snake_case")]
pub enum Violation {
    #[error("Q is empty")]
    EmptyQ,
    #[error("vertex {vertex} of Q is isolated in Q")]
    QIsolatedVertex { vertex: VertexId },
    #[error("edge {edge} of Q has an endpoint outside Q")]
    QEdgeOutsideQ { edge: EdgeId },
    #[error("edge {edge} is incident with Q but missing from E")]
    BoundaryEdgeMissing { edge: EdgeId },
    #[error("edge {edge} belongs to both Q and E")]
    EdgeInQ { edge: EdgeId },
    #[error("arc set does not match E at edge {edge}")]
    ArcSetMismatch { edge: EdgeId },
    #[error("arc on edge {edge} is not an orientation of it")]
    NotAnOrientation { edge: EdgeId },
    #[error("condition (1) fails at vertex {vertex}")]
    Condition1 { vertex: VertexId },
    #[error("paths are not indexed by the vertices of Q (vertex {vertex})")]
    PathIndexMismatch { vertex: VertexId },
    #[error("path of {start} is broken at position {position}")]
    PathBroken { start: VertexId, position: usize },
    #[error("path of {start} repeats vertex {vertex}")]
    PathRepeatsVertex { start: VertexId, vertex: VertexId },
    #[error("arc {edge} is used by more than one path")]
    ArcReused { edge: EdgeId },
    #[error("arc {edge} is not covered by any path")]
    ArcUncovered { edge: EdgeId },
    #[error("condition (2) fails at inner vertex {vertex}")]
    Condition2 { vertex: VertexId },
    #[error("condition (3) fails at end vertex {vertex}")]
    Condition3 { vertex: VertexId },
}

/// `E_Q⁻`: edges outside `Q` incident with a vertex of `Q`.
pub fn edge_boundary(h: &Multigraph, q_edges: &BTreeSet<EdgeId>) -> BTreeSet<EdgeId> {
    let q_vertices = vertices_of(h, q_edges);
    h.edges()
        .iter()
        .filter(|r| !q_edges.contains(&r.id))
        .filter(|r| q_vertices.contains(&r.u) || q_vertices.contains(&r.v))
        .map(|r| r.id)
        .collect()
}

fn vertices_of(h: &Multigraph, edges: &BTreeSet<EdgeId>) -> BTreeSet<VertexId> {
    edges
        .iter()
        .flat_map(|&e| {
            let r = h.edge(e);
            [r.u, r.v]
        })
        .collect()
}

fn q_degree(h: &Multigraph, q_edges: &BTreeSet<EdgeId>, v: VertexId) -> usize {
    h.incident_edges(v)
        .iter()
        .filter(|e| q_edges.contains(e))
        .map(|&e| if h.edge(e).is_loop() { 2 } else { 1 })
        .sum()
}

pub fn is_good_certificate(h: &Multigraph, cert: &GoodSubgraphCertificate) -> bool {
    verify_good_certificate(h, cert).is_ok()
}

/// Checks every clause of the definition; the error names the first one
/// that fails.
pub fn verify_good_certificate(
    h: &Multigraph,
    cert: &GoodSubgraphCertificate,
) -> Result<(), GoodSubgraphError> {
    let n = h.vertex_count();
    let m = h.edge_count();
    let all_vertices = cert
        .q_vertices
        .iter()
        .chain(cert.paths.keys())
        .chain(cert.arcs.values().flat_map(|(a, b)| [a, b]));
    for &v in all_vertices {
        if v >= n {
            return Err(GoodSubgraphError::BadVertex(v));
        }
    }
    let all_edges = cert
        .q_edges
        .iter()
        .chain(&cert.e_set)
        .chain(cert.arcs.keys())
        .chain(cert.paths.values().flatten());
    for &e in all_edges {
        if e >= m {
            return Err(GoodSubgraphError::BadEdge(e));
        }
    }
    check_clauses(h, cert).map_err(GoodSubgraphError::Rejected)
}

fn check_clauses(h: &Multigraph, cert: &GoodSubgraphCertificate) -> Result<(), Violation> {
    let n = h.vertex_count();
    if cert.q_vertices.is_empty() {
        return Err(Violation::EmptyQ);
    }
    for &e in &cert.q_edges {
        let r = h.edge(e);
        if !cert.q_vertices.contains(&r.u) || !cert.q_vertices.contains(&r.v) {
            return Err(Violation::QEdgeOutsideQ { edge: e });
        }
    }
    for &v in &cert.q_vertices {
        if q_degree(h, &cert.q_edges, v) == 0 {
            return Err(Violation::QIsolatedVertex { vertex: v });
        }
    }
    for e in edge_boundary(h, &cert.q_edges) {
        if !cert.e_set.contains(&e) {
            return Err(Violation::BoundaryEdgeMissing { edge: e });
        }
    }
    if let Some(&e) = cert.e_set.intersection(&cert.q_edges).next() {
        return Err(Violation::EdgeInQ { edge: e });
    }
    for e in cert.e_set.iter().chain(cert.arcs.keys()) {
        if cert.e_set.contains(e) != cert.arcs.contains_key(e) {
            return Err(Violation::ArcSetMismatch { edge: *e });
        }
    }
    let mut out_deg = vec![0usize; n];
    let mut in_deg = vec![0usize; n];
    for (&e, &(tail, head)) in &cert.arcs {
        let r = h.edge(e);
        if !((r.u == tail && r.v == head) || (r.v == tail && r.u == head)) {
            return Err(Violation::NotAnOrientation { edge: e });
        }
        out_deg[tail] += 1;
        in_deg[head] += 1;
    }
    for &v in &cert.q_vertices {
        let expected_in = h.degree(v).checked_sub(q_degree(h, &cert.q_edges, v) + 1);
        if out_deg[v] != 1 || Some(in_deg[v]) != expected_in {
            return Err(Violation::Condition1 { vertex: v });
        }
    }
    for v in cert.q_vertices.iter().chain(cert.paths.keys()) {
        if cert.q_vertices.contains(v) != cert.paths.contains_key(v) {
            return Err(Violation::PathIndexMismatch { vertex: *v });
        }
    }

    let mut used = BTreeSet::new();
    let mut inner = BTreeSet::new();
    let mut ends = BTreeSet::new();
    for (&start, path) in &cert.paths {
        if path.is_empty() {
            return Err(Violation::PathBroken { start, position: 0 });
        }
        let mut at = start;
        let mut seen = vec![start];
        for (i, &e) in path.iter().enumerate() {
            let Some(&(tail, head)) = cert.arcs.get(&e) else {
                return Err(Violation::PathBroken { start, position: i });
            };
            if tail != at {
                return Err(Violation::PathBroken { start, position: i });
            }
            if !used.insert(e) {
                return Err(Violation::ArcReused { edge: e });
            }
            if i > 0 {
                inner.insert(at);
            }
            // only the last arc may return to a vertex already on the path
            if seen.contains(&head) && i + 1 != path.len() {
                return Err(Violation::PathRepeatsVertex { start, vertex: head });
            }
            seen.push(head);
            at = head;
        }
        ends.insert(at);
    }
    if let Some(&e) = cert.arcs.keys().find(|e| !used.contains(e)) {
        return Err(Violation::ArcUncovered { edge: e });
    }
    for &x in &inner {
        if out_deg[x] != 1 || in_deg[x] + 1 != h.degree(x) {
            return Err(Violation::Condition2 { vertex: x });
        }
    }
    for &x in &ends {
        if in_deg[x] >= h.degree(x) {
            return Err(Violation::Condition3 { vertex: x });
        }
    }
    Ok(())
}

/// Searches for a good subgraph. Candidate subgraphs use only vertices that
/// are neither leaves nor supports; they are tried by edge count, connected
/// before disconnected, then lexicographically.
pub fn find_good_subgraph(h: &Multigraph) -> Option<GoodSubgraphCertificate> {
    if h.has_isolated_vertex() {
        return None;
    }
    let excluded = h.leaves().union(&h.supports());
    let candidates: Vec<EdgeId> = h
        .edges()
        .iter()
        .filter(|r| !excluded.contains(r.u) && !excluded.contains(r.v))
        .map(|r| r.id)
        .collect();
    for k in 1..=candidates.len() {
        for want_connected in [true, false] {
            for combo in candidates.iter().copied().combinations(k) {
                let q: BTreeSet<EdgeId> = combo.into_iter().collect();
                if is_connected_edge_set(h, &q) != want_connected {
                    continue;
                }
                if let Some(cert) = find_certificate_for(h, &q) {
                    return Some(cert);
                }
            }
        }
    }
    None
}

/// Every good subgraph found by exhaustive search over candidate edge sets,
/// each with one certificate.
pub fn all_good_subgraphs(h: &Multigraph) -> Vec<GoodSubgraphCertificate> {
    if h.has_isolated_vertex() {
        return Vec::new();
    }
    let excluded = h.leaves().union(&h.supports());
    let candidates: Vec<EdgeId> = h
        .edges()
        .iter()
        .filter(|r| !excluded.contains(r.u) && !excluded.contains(r.v))
        .map(|r| r.id)
        .collect();
    candidates
        .iter()
        .copied()
        .powerset()
        .filter(|s| !s.is_empty())
        .filter_map(|s| find_certificate_for(h, &s.into_iter().collect()))
        .collect()
}

fn is_connected_edge_set(h: &Multigraph, edges: &BTreeSet<EdgeId>) -> bool {
    let verts: Vec<VertexId> = vertices_of(h, edges).into_iter().collect();
    if verts.len() <= 1 {
        return true;
    }
    let mut parent: BTreeMap<VertexId, VertexId> = verts.iter().map(|&v| (v, v)).collect();
    fn find(p: &mut BTreeMap<VertexId, VertexId>, x: VertexId) -> VertexId {
        let mut r = x;
        while p[&r] != r {
            r = p[&r];
        }
        p.insert(x, r);
        r
    }
    for &e in edges {
        let r = h.edge(e);
        let (a, b) = (find(&mut parent, r.u), find(&mut parent, r.v));
        if a != b {
            parent.insert(a, b);
        }
    }
    let root = find(&mut parent, verts[0]);
    verts.iter().all(|&v| find(&mut parent, v) == root)
}

/// Searches orientations and path families for a fixed `Q` (given by its
/// edges). Paths are grown depth-first with arcs tried in edge-id order.
pub fn find_certificate_for(h: &Multigraph, q_edges: &BTreeSet<EdgeId>) -> Option<GoodSubgraphCertificate> {
    if q_edges.is_empty() || q_edges.iter().any(|&e| e >= h.edge_count()) {
        return None;
    }
    let q_vertices = vertices_of(h, q_edges);
    let mut in_q_edge = vec![false; h.edge_count()];
    for &e in q_edges {
        in_q_edge[e] = true;
    }
    // every vertex of Q needs an arc to leave by
    for &v in &q_vertices {
        if h.incident_edges(v).iter().all(|&e| in_q_edge[e]) {
            return None;
        }
    }
    let mut in_q = vec![false; h.vertex_count()];
    for &v in &q_vertices {
        in_q[v] = true;
    }
    let mut search = PathSearch {
        h,
        q_edges,
        q_order: q_vertices.iter().copied().collect(),
        in_q,
        in_q_edge,
        is_leaf: h.vertices().map(|v| h.degree(v) == 1).collect(),
        orient: vec![None; h.edge_count()],
        out_arc: vec![None; h.vertex_count()],
        paths: vec![Vec::new(); q_vertices.len()],
        found: None,
    };
    search.start(0);
    search.found
}

struct PathSearch<'a> {
    h: &'a Multigraph,
    q_edges: &'a BTreeSet<EdgeId>,
    q_order: Vec<VertexId>,
    in_q: Vec<bool>,
    in_q_edge: Vec<bool>,
    is_leaf: Vec<bool>,
    orient: Vec<Option<(VertexId, VertexId)>>,
    out_arc: Vec<Option<EdgeId>>,
    paths: Vec<Vec<EdgeId>>,
    found: Option<GoodSubgraphCertificate>,
}

impl PathSearch<'_> {
    fn start(&mut self, qi: usize) -> bool {
        if qi == self.q_order.len() {
            return self.finish();
        }
        let v = self.q_order[qi];
        let mut visited = vec![v];
        self.extend(qi, v, &mut visited)
    }

    /// `x` is the current end of path `qi` and must leave by a fresh arc.
    fn extend(&mut self, qi: usize, x: VertexId, visited: &mut Vec<VertexId>) -> bool {
        let h = self.h;
        for &e in h.incident_edges(x) {
            if self.in_q_edge[e] || self.orient[e].is_some() {
                continue;
            }
            let y = h.edge(e).other(x);
            let closes = y == x || visited.contains(&y);
            self.orient[e] = Some((x, y));
            self.out_arc[x] = Some(e);
            self.paths[qi].push(e);
            if self.remaining_edges_orientable(x) {
                if self.start(qi + 1) {
                    return true;
                }
                if !closes && !self.in_q[y] && self.out_arc[y].is_none() && !self.is_leaf[y] {
                    visited.push(y);
                    if self.extend(qi, y, visited) {
                        return true;
                    }
                    visited.pop();
                }
            }
            self.paths[qi].pop();
            self.out_arc[x] = None;
            self.orient[e] = None;
        }
        false
    }

    /// Once `x` has its out-arc, every other non-Q edge at `x` must become an
    /// in-arc, so its far endpoint must still be free to leave along it.
    fn remaining_edges_orientable(&self, x: VertexId) -> bool {
        let h = self.h;
        h.incident_edges(x).iter().all(|&f| {
            if self.in_q_edge[f] || self.orient[f].is_some() {
                return true;
            }
            let z = h.edge(f).other(x);
            z != x && self.out_arc[z].is_none() && !self.is_leaf[z]
        })
    }

    fn finish(&mut self) -> bool {
        let h = self.h;
        for v in h.vertices() {
            let has_in = h
                .incident_edges(v)
                .iter()
                .any(|&e| matches!(self.orient[e], Some((_, head)) if head == v));
            if self.out_arc[v].is_some() {
                let all_oriented = h
                    .incident_edges(v)
                    .iter()
                    .all(|&e| self.in_q_edge[e] || self.orient[e].is_some());
                if !all_oriented {
                    return false;
                }
            } else if has_in && h.incident_edges(v).iter().all(|&e| self.orient[e].is_some()) {
                return false;
            }
        }
        let arcs: BTreeMap<EdgeId, (VertexId, VertexId)> = self
            .orient
            .iter()
            .enumerate()
            .filter_map(|(e, o)| o.map(|a| (e, a)))
            .collect();
        let cert = GoodSubgraphCertificate {
            q_vertices: self.q_order.iter().copied().collect(),
            q_edges: self.q_edges.clone(),
            e_set: arcs.keys().copied().collect(),
            arcs,
            paths: self
                .q_order
                .iter()
                .copied()
                .zip(self.paths.iter().cloned())
                .collect(),
        };
        if is_good_certificate(h, &cert) {
            self.found = Some(cert);
            true
        } else {
            false
        }
    }
}

/// Edge removals and DP-pair that witness non-minimality of `S₂(H)`.
///
/// Edge ids refer to `S₂(H)` as produced by [`build_s2`] with the same `α`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionPlan {
    pub removed_edges: BTreeSet<EdgeId>,
    pub d_prime: VertexSet,
    pub p_prime: VertexSet,
    pub matching: Vec<EdgeId>,
}

impl ReductionPlan {
    /// `S₂(H)` minus the removed edges, with the old-to-new edge id map.
    pub fn reduced_graph(&self, s2: &Multigraph) -> (Multigraph, Vec<Option<EdgeId>>) {
        let removed: Vec<EdgeId> = self.removed_edges.iter().copied().collect();
        s2.delete_edges(&removed)
    }

    /// The plan's pair with the matching renumbered for the reduced graph.
    pub fn pair_in_reduced(&self, map: &[Option<EdgeId>]) -> Option<DpPair> {
        let matching = self
            .matching
            .iter()
            .map(|&e| map.get(e).copied().flatten())
            .collect::<Option<Vec<_>>>()?;
        Some(DpPair {
            d: self.d_prime.clone(),
            p: self.p_prime.clone(),
            matching,
        })
    }

    /// The removed set is nonempty and the pair verifies in the reduced graph.
    pub fn verifies(&self, s2: &Multigraph) -> bool {
        if self.removed_edges.is_empty() || self.removed_edges.iter().any(|&e| e >= s2.edge_count()) {
            return false;
        }
        let (reduced, map) = self.reduced_graph(s2);
        self.pair_in_reduced(&map)
            .is_some_and(|pair| is_dp_pair(&reduced, &pair))
    }
}

/// Builds the spanning subgraph of `S₂(H)` and its DP-pair from a verified
/// good-subgraph certificate: drop the middle edge of every `Q`-edge gadget
/// and the edge entering the head of the last arc of every path.
pub fn reduce_via_good_subgraph(
    h: &Multigraph,
    alpha: &Alpha,
    cert: &GoodSubgraphCertificate,
) -> Result<ReductionPlan, GoodSubgraphError> {
    verify_good_certificate(h, cert)?;
    let (s2, lab) = build_s2(h, alpha)?;
    let plan = reduction_plan(h, &lab, cert)?;
    if !plan.verifies(&s2) {
        return Err(GoodSubgraphError::ReductionFailed(
            "pair does not verify in the reduced graph".into(),
        ));
    }
    Ok(plan)
}

fn reduction_plan(
    h: &Multigraph,
    lab: &S2Labeling,
    cert: &GoodSubgraphCertificate,
) -> Result<ReductionPlan, GoodSubgraphError> {
    let n2 = lab.vertex_count();
    // side of the gadget next to `x`
    let side_at = |e: EdgeId, x: VertexId, as_tail: bool| -> EdgeSide {
        let r = h.edge(e);
        if r.is_loop() {
            if as_tail {
                EdgeSide::First
            } else {
                EdgeSide::Second
            }
        } else if r.u == x {
            EdgeSide::First
        } else {
            EdgeSide::Second
        }
    };
    let single_attach = |e: EdgeId, side: EdgeSide| -> Result<EdgeId, GoodSubgraphError> {
        match lab.attach_edges(e, side).as_slice() {
            [only] => Ok(*only),
            _ => Err(GoodSubgraphError::ReductionFailed(format!(
                "arc on edge {e} touches a leaf of the base graph"
            ))),
        }
    };

    let mut removed = BTreeSet::new();
    for &e in &cert.q_edges {
        removed.insert(lab.middle_edge(e));
    }
    for path in cert.paths.values() {
        let last = *path.last().expect("verified paths are nonempty");
        let (_, head) = cert.arcs[&last];
        removed.insert(single_attach(last, side_at(last, head, false))?);
    }

    let tails: BTreeSet<VertexId> = cert.arcs.values().map(|&(t, _)| t).collect();
    let mut d = VertexSet::empty(n2);
    let mut p = VertexSet::empty(n2);
    let mut matching = Vec::new();
    for v in h.vertices() {
        for rep in lab.representatives(v) {
            if tails.contains(&v) {
                p.insert(rep);
            } else {
                d.insert(rep);
            }
        }
    }
    for (&e, &(tail, head)) in &cert.arcs {
        let tail_side = side_at(e, tail, true);
        let head_side = side_at(e, head, false);
        p.insert(lab.new_vertex(e, tail_side));
        d.insert(lab.new_vertex(e, head_side));
        matching.push(single_attach(e, tail_side)?);
    }
    for &e in &cert.q_edges {
        d.insert(lab.new_vertex(e, EdgeSide::First));
        d.insert(lab.new_vertex(e, EdgeSide::Second));
    }
    for r in h.edges() {
        if !tails.contains(&r.u) && !tails.contains(&r.v) {
            p.insert(lab.new_vertex(r.id, EdgeSide::First));
            p.insert(lab.new_vertex(r.id, EdgeSide::Second));
            matching.push(lab.middle_edge(r.id));
        }
    }
    if !d.is_disjoint(&p) || d.len() + p.len() != n2 {
        return Err(GoodSubgraphError::ReductionFailed(
            "D' and P' do not partition the vertex set".into(),
        ));
    }
    matching.sort_unstable();
    Ok(ReductionPlan {
        removed_edges: removed,
        d_prime: d,
        p_prime: p,
        matching,
    })
}

/// A connected vertex set `S` of a tree, `|S| ≥ 2`, in which every vertex has
/// exactly one neighbour outside `S` and every such neighbour is not a leaf.
/// These are the vertex sets of the good subtrees. Each possible top vertex
/// yields at most one candidate; the least of them as a sorted list is
/// returned.
pub fn tree_find_good_subtree(h: &Multigraph) -> Result<Option<Vec<VertexId>>, GoodSubgraphError> {
    if !h.is_tree() || h.has_loops() {
        return Err(GoodSubgraphError::NotATree);
    }
    let n = h.vertex_count();
    if n < 3 {
        return Ok(None);
    }
    let order = h.bfs_order();
    let mut parent = vec![None; n];
    let mut children: Vec<Vec<VertexId>> = vec![Vec::new(); n];
    let mut seen = vec![false; n];
    seen[order[0]] = true;
    for &x in &order {
        for &y in h.neighbors(x) {
            if !seen[y] {
                seen[y] = true;
                parent[y] = Some(x);
                children[x].push(y);
            }
        }
    }
    let non_leaf = |v: VertexId| h.degree(v) >= 2;

    // down[x]: x has its parent inside S and all but one child (a non-leaf)
    // inside S; excluded[x] is that child.
    let mut down = vec![false; n];
    let mut excluded = vec![None; n];
    for &x in order.iter().rev() {
        excluded[x] = pick_excluded(&children[x], &down, non_leaf);
        down[x] = excluded[x].is_some();
    }

    let collect = |top: VertexId, skip: Option<VertexId>| -> Vec<VertexId> {
        let mut out = vec![top];
        let mut stack: Vec<VertexId> = children[top].iter().copied().filter(|&c| Some(c) != skip).collect();
        while let Some(x) = stack.pop() {
            out.push(x);
            stack.extend(children[x].iter().copied().filter(|&c| Some(c) != excluded[x]));
        }
        out.sort_unstable();
        out
    };

    let mut best: Option<Vec<VertexId>> = None;
    for &t in &order {
        let candidate = match parent[t] {
            Some(p) => {
                let ok = non_leaf(p) && !children[t].is_empty() && children[t].iter().all(|&c| down[c]);
                ok.then(|| collect(t, None))
            }
            None => {
                let skip = pick_excluded(&children[t], &down, non_leaf);
                match skip {
                    Some(c) if children[t].len() >= 2 => Some(collect(t, Some(c))),
                    _ => None,
                }
            }
        };
        if let Some(s) = candidate {
            if best.as_ref().is_none_or(|b| s < *b) {
                best = Some(s);
            }
        }
    }
    Ok(best)
}

fn pick_excluded(children: &[VertexId], down: &[bool], non_leaf: impl Fn(VertexId) -> bool) -> Option<VertexId> {
    let bad: Vec<VertexId> = children.iter().copied().filter(|&c| !down[c]).collect();
    match bad.as_slice() {
        [] => children.iter().copied().filter(|&c| non_leaf(c)).min(),
        [c] if non_leaf(*c) => Some(*c),
        _ => None,
    }
}

/// The certificate of a good subtree on vertex set `s`: each vertex leaves
/// along the one edge to its outside neighbour, and those arcs are the paths.
pub fn subtree_certificate(h: &Multigraph, s: &[VertexId]) -> GoodSubgraphCertificate {
    let q_vertices: BTreeSet<VertexId> = s.iter().copied().collect();
    let mut q_edges = BTreeSet::new();
    let mut arcs = BTreeMap::new();
    let mut paths = BTreeMap::new();
    for r in h.edges() {
        match (q_vertices.contains(&r.u), q_vertices.contains(&r.v)) {
            (true, true) => {
                q_edges.insert(r.id);
            }
            (true, false) => {
                arcs.insert(r.id, (r.u, r.v));
                paths.entry(r.u).or_insert_with(Vec::new).push(r.id);
            }
            (false, true) => {
                arcs.insert(r.id, (r.v, r.u));
                paths.entry(r.v).or_insert_with(Vec::new).push(r.id);
            }
            (false, false) => {}
        }
    }
    GoodSubgraphCertificate {
        q_vertices,
        q_edges,
        e_set: arcs.keys().copied().collect(),
        arcs,
        paths,
    }
}

/// For a good subgraph `Q` of a forest, finds a component of `Q` that is good
/// on its own. Returns its index (components ordered by smallest vertex) and a
/// certificate for it.
pub fn forest_good_decomposition_check(
    h: &Multigraph,
    cert: &GoodSubgraphCertificate,
) -> Result<(usize, GoodSubgraphCertificate), GoodSubgraphError> {
    if !h.is_forest() {
        return Err(GoodSubgraphError::NotAForest);
    }
    verify_good_certificate(h, cert)?;
    let components = q_components(h, cert);
    for (i, (verts, edges)) in components.iter().enumerate() {
        let restricted = restrict_certificate(cert, verts, edges);
        if is_good_certificate(h, &restricted) {
            return Ok((i, restricted));
        }
    }
    for (i, (_, edges)) in components.iter().enumerate() {
        if let Some(c) = find_certificate_for(h, edges) {
            return Ok((i, c));
        }
    }
    Err(GoodSubgraphError::NoGoodComponent)
}

/// Components of `Q` as (vertex set, edge set), ordered by smallest vertex.
pub fn q_components(
    h: &Multigraph,
    cert: &GoodSubgraphCertificate,
) -> Vec<(BTreeSet<VertexId>, BTreeSet<EdgeId>)> {
    let mut remaining: BTreeSet<VertexId> = cert.q_vertices.clone();
    let mut out = Vec::new();
    while let Some(&s) = remaining.iter().next() {
        let mut verts = BTreeSet::from([s]);
        let mut edges = BTreeSet::new();
        let mut stack = vec![s];
        while let Some(x) = stack.pop() {
            for &e in h.incident_edges(x) {
                if cert.q_edges.contains(&e) {
                    edges.insert(e);
                    let y = h.edge(e).other(x);
                    if verts.insert(y) {
                        stack.push(y);
                    }
                }
            }
        }
        for v in &verts {
            remaining.remove(v);
        }
        out.push((verts, edges));
    }
    out
}

fn restrict_certificate(
    cert: &GoodSubgraphCertificate,
    verts: &BTreeSet<VertexId>,
    edges: &BTreeSet<EdgeId>,
) -> GoodSubgraphCertificate {
    let paths: BTreeMap<VertexId, Vec<EdgeId>> = cert
        .paths
        .iter()
        .filter(|(v, _)| verts.contains(v))
        .map(|(&v, p)| (v, p.clone()))
        .collect();
    let arcs: BTreeMap<EdgeId, (VertexId, VertexId)> = paths
        .values()
        .flatten()
        .map(|&e| (e, cert.arcs[&e]))
        .collect();
    GoodSubgraphCertificate {
        q_vertices: verts.clone(),
        q_edges: edges.clone(),
        e_set: arcs.keys().copied().collect(),
        arcs,
        paths,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::subdivision::build_s2;

    fn path(n: usize) -> Multigraph {
        Multigraph::new(n, (1..n).map(|i| (i - 1, i))).unwrap()
    }

    fn cycle(n: usize) -> Multigraph {
        Multigraph::new(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    fn set<T: Ord + Copy>(items: &[T]) -> BTreeSet<T> {
        items.iter().copied().collect()
    }

    /// P6 = 0-..-5 with Q the middle edge (edge 2 joins 2 and 3).
    fn p6_certificate(arc_12: (usize, usize)) -> GoodSubgraphCertificate {
        GoodSubgraphCertificate {
            q_vertices: set(&[2, 3]),
            q_edges: set(&[2]),
            e_set: set(&[1, 3]),
            arcs: BTreeMap::from([(1, arc_12), (3, (3, 4))]),
            paths: BTreeMap::from([(2, vec![1]), (3, vec![3])]),
        }
    }

    #[test]
    fn boundary_examples() {
        assert_eq!(edge_boundary(&path(6), &set(&[2])), set(&[1, 3]));
        assert!(edge_boundary(&path(6), &set(&[0, 1, 2, 3, 4])).is_empty());
        let k3 = cycle(3); // edges 0-1, 1-2, 2-0
        assert_eq!(edge_boundary(&k3, &set(&[0])), set(&[1, 2]));
    }

    #[test]
    fn verify_p6_certificate() {
        assert_eq!(verify_good_certificate(&path(6), &p6_certificate((2, 1))), Ok(()));
        assert_eq!(
            verify_good_certificate(&path(6), &p6_certificate((1, 2))),
            Err(GoodSubgraphError::Rejected(Violation::Condition1 { vertex: 2 }))
        );
    }

    #[test]
    fn verify_rejects_leaf_end() {
        let cert = GoodSubgraphCertificate {
            q_vertices: set(&[1, 2]),
            q_edges: set(&[1]),
            e_set: set(&[0, 2]),
            arcs: BTreeMap::from([(0, (1, 0)), (2, (2, 3))]),
            paths: BTreeMap::from([(1, vec![0]), (2, vec![2])]),
        };
        assert_eq!(
            verify_good_certificate(&path(4), &cert),
            Err(GoodSubgraphError::Rejected(Violation::Condition3 { vertex: 0 }))
        );
    }

    #[test]
    fn verify_reports_malformed_ids() {
        let mut cert = p6_certificate((2, 1));
        cert.q_edges.insert(99);
        assert_eq!(verify_good_certificate(&path(6), &cert), Err(GoodSubgraphError::BadEdge(99)));
    }

    #[test]
    fn verify_rejects_missing_boundary_and_stray_arcs() {
        let mut cert = p6_certificate((2, 1));
        cert.e_set.remove(&3);
        assert_eq!(
            verify_good_certificate(&path(6), &cert),
            Err(GoodSubgraphError::Rejected(Violation::BoundaryEdgeMissing { edge: 3 }))
        );
        let mut cert = p6_certificate((2, 1));
        cert.e_set.insert(4);
        cert.arcs.insert(4, (4, 5));
        assert!(matches!(
            verify_good_certificate(&path(6), &cert),
            Err(GoodSubgraphError::Rejected(_))
        ));
    }

    #[test]
    fn search_examples() {
        assert!(find_good_subgraph(&path(4)).is_none());
        let cert = find_good_subgraph(&path(6)).unwrap();
        assert_eq!(cert.q_edges, set(&[2]));
        // corona of P3
        let corona = Multigraph::new(6, [(0, 1), (1, 2), (0, 3), (1, 4), (2, 5)]).unwrap();
        assert!(find_good_subgraph(&corona).is_none());
    }

    #[test]
    fn small_cycles_have_no_good_subgraph() {
        for m in 1..=3 {
            assert!(find_good_subgraph(&cycle(m)).is_none(), "C{m}");
        }
        assert!(find_good_subgraph(&cycle(4)).is_some());
    }

    #[test]
    fn double_loop_is_good_via_terminal_loop() {
        let h = Multigraph::new(1, [(0, 0), (0, 0)]).unwrap();
        let cert = find_good_subgraph(&h).unwrap();
        assert_eq!(cert.q_edges, set(&[0]));
        assert_eq!(cert.arcs[&1], (0, 0));
    }

    #[test]
    fn last_arc_may_return_to_path_start() {
        // 0 = 2 = 1: the path of 2 must be 2 -> 1 -> 2
        let h = Multigraph::new(3, [(0, 2), (0, 2), (1, 2), (1, 2)]).unwrap();
        let cert = find_good_subgraph(&h).unwrap();
        assert!(cert.paths.values().any(|p| p.len() == 2));
        let plan = reduce_via_good_subgraph(&h, &Alpha::new(), &cert).unwrap();
        assert!(plan.verifies(&build_s2(&h, &Alpha::new()).unwrap().0));

        let mut bad = cert.clone();
        let long = bad.paths.values_mut().find(|p| p.len() == 2).unwrap();
        long.reverse();
        assert!(!is_good_certificate(&h, &bad));
    }

    #[test]
    fn reduction_on_p6_and_c4() {
        for h in [path(6), cycle(4)] {
            let cert = find_good_subgraph(&h).unwrap();
            let plan = reduce_via_good_subgraph(&h, &Alpha::new(), &cert).unwrap();
            let (s2, _) = build_s2(&h, &Alpha::new()).unwrap();
            assert!(plan.verifies(&s2));
            let (reduced, _) = plan.reduced_graph(&s2);
            assert!(reduced.edge_count() < s2.edge_count());
        }
    }

    #[test]
    fn reduction_with_empty_h0() {
        // two loops at one vertex: every vertex of H leaves by an arc
        let h = Multigraph::new(1, [(0, 0), (0, 0)]).unwrap();
        let cert = find_good_subgraph(&h).unwrap();
        let plan = reduce_via_good_subgraph(&h, &Alpha::new(), &cert).unwrap();
        let (s2, _) = build_s2(&h, &Alpha::new()).unwrap();
        assert!(plan.verifies(&s2));
        assert_eq!(plan.matching.len(), 1);
    }

    #[test]
    fn reduction_rejects_bad_certificate() {
        let bad = p6_certificate((1, 2));
        assert!(reduce_via_good_subgraph(&path(6), &Alpha::new(), &bad).is_err());
    }

    #[test]
    fn tree_examples() {
        let star = Multigraph::new(4, [(0, 1), (0, 2), (0, 3)]).unwrap();
        assert_eq!(tree_find_good_subtree(&star).unwrap(), None);
        assert_eq!(tree_find_good_subtree(&path(6)).unwrap(), Some(vec![2, 3]));
        assert_eq!(tree_find_good_subtree(&path(7)).unwrap(), Some(vec![2, 3]));
        assert_eq!(tree_find_good_subtree(&cycle(4)), Err(GoodSubgraphError::NotATree));
    }

    #[test]
    fn subtree_certificate_verifies() {
        let cert = subtree_certificate(&path(7), &[2, 3]);
        assert!(is_good_certificate(&path(7), &cert));
    }

    #[test]
    fn forest_decomposition() {
        // spine 0..=11 with two P6-style gadgets: Q = {2-3} and {8-9}
        let h = path(12);
        let q = set(&[2, 8]);
        let cert = find_certificate_for(&h, &q).unwrap();
        let (idx, comp) = forest_good_decomposition_check(&h, &cert).unwrap();
        assert!(idx < 2);
        assert!(is_good_certificate(&h, &comp));

        let single = find_good_subgraph(&path(6)).unwrap();
        assert_eq!(forest_good_decomposition_check(&path(6), &single).unwrap().0, 0);
    }
}
