//! The 2-subdivision graph `S₂(H)` and its inverse.
//!
//! Every edge `e = uv` of `H` becomes a path `u, u_e, v_e, v`; every loop at
//! `v` becomes a triangle `v, v_e¹, v_e²`; every leaf `v` of `H` is replaced by
//! `α(v)` copies, each adjacent to the subdivision vertex next to it. Every
//! vertex of the result carries a provenance tag, so inversion can be checked
//! by rebuilding and comparing tagged edges instead of testing isomorphism.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use crate::domination::DpPair;
use crate::error::SubdivisionError;
use crate::graph::{EdgeId, Multigraph, VertexId, VertexSet};

/// Leaf multiplicities keyed by leaf vertex of the base graph. Leaves that are
/// not listed default to 1.
pub type Alpha = BTreeMap<VertexId, usize>;

/// Which endpoint of a base edge a subdivision vertex sits next to: `First`
/// for the edge's `u`, `Second` for its `v`. For a loop both sides attach to
/// the same vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EdgeSide {
    First,
    Second,
}

impl EdgeSide {
    pub fn index(self) -> usize {
        match self {
            EdgeSide::First => 1,
            EdgeSide::Second => 2,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum VertexTag {
    /// A non-leaf vertex of the base graph.
    Old { vertex: VertexId },
    /// Subdivision vertex of a base edge.
    New { edge: EdgeId, side: EdgeSide },
    /// Copy `index` (1-based) of a leaf of the base graph.
    LeafCopy { leaf: VertexId, index: usize },
}

impl VertexTag {
    pub fn is_new(&self) -> bool {
        matches!(self, VertexTag::New { .. })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum EdgeTag {
    /// `u_e v_e`, the middle edge of the gadget of base edge `edge`.
    Middle { edge: EdgeId },
    /// Joins the `side` subdivision vertex of `edge` to its base endpoint;
    /// `copy` is set when that endpoint is a leaf.
    Attach {
        edge: EdgeId,
        side: EdgeSide,
        copy: Option<usize>,
    },
}

/// Base graph, leaf multiplicities and full provenance for a 2-subdivision graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct S2Labeling {
    pub base: Multigraph,
    pub alpha: Alpha,
    /// Tag of each vertex of the subdivided graph.
    pub tags: Vec<VertexTag>,
    /// Tag of each edge of the subdivided graph.
    pub edge_tags: Vec<EdgeTag>,
}

impl S2Labeling {
    pub fn vertex_count(&self) -> usize {
        self.tags.len()
    }

    /// `Vᵒ`: old vertices and leaf copies.
    pub fn old_vertices(&self) -> VertexSet {
        VertexSet::from_iter_in(
            self.tags.len(),
            self.tags
                .iter()
                .enumerate()
                .filter(|(_, t)| !t.is_new())
                .map(|(i, _)| i),
        )
    }

    /// `Vⁿ`: subdivision vertices.
    pub fn new_vertices(&self) -> VertexSet {
        VertexSet::from_iter_in(
            self.tags.len(),
            self.tags
                .iter()
                .enumerate()
                .filter(|(_, t)| t.is_new())
                .map(|(i, _)| i),
        )
    }

    pub fn vertex_of(&self, tag: VertexTag) -> Option<VertexId> {
        self.tags.iter().position(|t| *t == tag)
    }

    pub fn new_vertex(&self, edge: EdgeId, side: EdgeSide) -> VertexId {
        self.vertex_of(VertexTag::New { edge, side })
            .expect("every base edge has two subdivision vertices")
    }

    pub fn edge_of(&self, tag: EdgeTag) -> Option<EdgeId> {
        self.edge_tags.iter().position(|t| *t == tag)
    }

    pub fn middle_edge(&self, edge: EdgeId) -> EdgeId {
        self.edge_of(EdgeTag::Middle { edge })
            .expect("every base edge has a middle edge")
    }

    /// Edges joining the `side` subdivision vertex of `edge` to the
    /// representative(s) of its base endpoint.
    pub fn attach_edges(&self, edge: EdgeId, side: EdgeSide) -> Vec<EdgeId> {
        self.edge_tags
            .iter()
            .enumerate()
            .filter(|(_, t)| matches!(t, EdgeTag::Attach { edge: e, side: s, .. } if *e == edge && *s == side))
            .map(|(i, _)| i)
            .collect()
    }

    /// The vertices standing for base vertex `v`: itself if it is not a leaf,
    /// otherwise its `α(v)` copies.
    pub fn representatives(&self, v: VertexId) -> Vec<VertexId> {
        self.tags
            .iter()
            .enumerate()
            .filter(|(_, t)| match t {
                VertexTag::Old { vertex } => *vertex == v,
                VertexTag::LeafCopy { leaf, .. } => *leaf == v,
                VertexTag::New { .. } => false,
            })
            .map(|(i, _)| i)
            .collect()
    }
}

/// Builds `S₂(H)` with respect to `alpha` (unlisted leaves get 1).
///
/// Vertex numbering: base vertices in id order (a non-leaf contributes one
/// vertex, a leaf its copies), followed by the two subdivision vertices of each
/// base edge in edge order.
pub fn build_s2(h: &Multigraph, alpha: &Alpha) -> Result<(Multigraph, S2Labeling), SubdivisionError> {
    if let Some(&v) = h.isolated_vertices().first() {
        return Err(SubdivisionError::IsolatedVertex(v));
    }
    let leaves = h.leaves();
    for (&v, &a) in alpha {
        if v >= h.vertex_count() || !leaves.contains(v) {
            return Err(SubdivisionError::NotALeaf(v));
        }
        if a < 1 {
            return Err(SubdivisionError::MultiplicityTooSmall { vertex: v, value: a });
        }
    }
    let full_alpha: Alpha = leaves
        .iter()
        .map(|v| (v, alpha.get(&v).copied().unwrap_or(1)))
        .collect();

    let mut tags = Vec::new();
    // representatives of each base vertex
    let mut reps: Vec<Vec<VertexId>> = vec![Vec::new(); h.vertex_count()];
    for v in h.vertices() {
        if leaves.contains(v) {
            for index in 1..=full_alpha[&v] {
                reps[v].push(tags.len());
                tags.push(VertexTag::LeafCopy { leaf: v, index });
            }
        } else {
            reps[v].push(tags.len());
            tags.push(VertexTag::Old { vertex: v });
        }
    }
    let mut pairs = Vec::new();
    let mut edge_tags = Vec::new();
    for r in h.edges() {
        let first = tags.len();
        tags.push(VertexTag::New {
            edge: r.id,
            side: EdgeSide::First,
        });
        let second = tags.len();
        tags.push(VertexTag::New {
            edge: r.id,
            side: EdgeSide::Second,
        });
        pairs.push((first, second));
        edge_tags.push(EdgeTag::Middle { edge: r.id });
        for (side, sub, end) in [(EdgeSide::First, first, r.u), (EdgeSide::Second, second, r.v)] {
            let is_leaf = leaves.contains(end);
            for (i, &rep) in reps[end].iter().enumerate() {
                pairs.push((sub, rep));
                edge_tags.push(EdgeTag::Attach {
                    edge: r.id,
                    side,
                    copy: is_leaf.then_some(i + 1),
                });
            }
        }
    }
    let g = Multigraph::new(tags.len(), pairs).expect("constructed endpoints are in range");
    let lab = S2Labeling {
        base: h.clone(),
        alpha: full_alpha,
        tags,
        edge_tags,
    };
    Ok((g, lab))
}

/// `(Vᵒ, Vⁿ)` with the middle edges as the matching.
pub fn canonical_dp_pair(lab: &S2Labeling) -> DpPair {
    let matching = (0..lab.base.edge_count()).map(|e| lab.middle_edge(e)).collect();
    DpPair {
        d: lab.old_vertices(),
        p: lab.new_vertices(),
        matching,
    }
}

pub fn is_2_subdivision(g: &Multigraph) -> bool {
    invert_s2(g).is_some()
}

/// Recovers `(H, α)` and a labeling under which `build_s2(H, α)` reproduces
/// `g` edge for edge, or `None` when `g` is not a 2-subdivision graph.
///
/// Leaves of `g` are exactly the leaf copies and their supports the
/// subdivision vertices next to base leaves; every other vertex of degree at
/// least 3 is old. The remaining degree-2 chains are resolved by search, old
/// before new in vertex order, so the lexicographically least tagging wins.
pub fn invert_s2(g: &Multigraph) -> Option<S2Labeling> {
    if !g.is_simple() || g.has_isolated_vertex() {
        return None;
    }
    let mut search = InvertSearch::new(g)?;
    let mut result = None;
    search.branch(0, &mut |kinds| {
        result = assemble_labeling(g, kinds);
        result.is_none()
    });
    result
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Kind {
    Unset,
    Old,
    New,
}

struct InvertSearch<'g> {
    g: &'g Multigraph,
    is_leaf: Vec<bool>,
    kind: Vec<Kind>,
    trail: Vec<VertexId>,
    queue: Vec<VertexId>,
}

impl<'g> InvertSearch<'g> {
    fn new(g: &'g Multigraph) -> Option<Self> {
        let n = g.vertex_count();
        let is_leaf: Vec<bool> = g.vertices().map(|v| g.degree(v) == 1).collect();
        let mut s = InvertSearch {
            g,
            is_leaf,
            kind: vec![Kind::Unset; n],
            trail: Vec::new(),
            queue: Vec::new(),
        };
        for v in g.vertices() {
            let support = g.neighbors(v).iter().any(|&u| s.is_leaf[u]);
            let want = if s.is_leaf[v] {
                if support {
                    return None;
                }
                Some(Kind::Old)
            } else if support {
                Some(Kind::New)
            } else if g.degree(v) >= 3 {
                Some(Kind::Old)
            } else {
                None
            };
            if let Some(k) = want {
                if !s.assign(v, k) {
                    return None;
                }
            }
        }
        if !s.propagate() {
            return None;
        }
        Some(s)
    }

    fn assign(&mut self, v: VertexId, k: Kind) -> bool {
        match self.kind[v] {
            Kind::Unset => {
                self.kind[v] = k;
                self.trail.push(v);
                self.queue.push(v);
                self.queue.extend_from_slice(self.g.neighbors(v));
                true
            }
            existing => existing == k,
        }
    }

    fn undo_to(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let v = self.trail.pop().unwrap();
            self.kind[v] = Kind::Unset;
        }
        self.queue.clear();
    }

    fn propagate(&mut self) -> bool {
        while let Some(w) = self.queue.pop() {
            if !self.check(w) {
                self.queue.clear();
                return false;
            }
        }
        true
    }

    /// Local rules at `w`; forces neighbours where they are determined.
    fn check(&mut self, w: VertexId) -> bool {
        let g = self.g;
        let nb = g.neighbors(w);
        match self.kind[w] {
            Kind::Unset => true,
            // old vertices are independent
            Kind::Old => nb.iter().all(|&u| self.assign(u, Kind::New)),
            Kind::New => {
                let new_nb: Vec<_> = nb.iter().copied().filter(|&u| self.kind[u] == Kind::New).collect();
                if new_nb.len() > 1 {
                    return false;
                }
                let leaf_nb = nb.iter().filter(|&&u| self.is_leaf[u]).count();
                if leaf_nb > 0 {
                    // a support: its only non-leaf neighbour is its partner
                    let others: Vec<_> = nb.iter().copied().filter(|&u| !self.is_leaf[u]).collect();
                    if others.len() != 1 {
                        return false;
                    }
                    return self.assign(others[0], Kind::New);
                }
                // one partner and one old attachment
                if nb.len() != 2 {
                    return false;
                }
                let (a, b) = (nb[0], nb[1]);
                match (self.kind[a], self.kind[b]) {
                    (Kind::New, Kind::New) => false,
                    (Kind::Old, Kind::Old) => false,
                    (Kind::New, _) => self.assign(b, Kind::Old),
                    (_, Kind::New) => self.assign(a, Kind::Old),
                    (Kind::Old, _) => self.assign(b, Kind::New),
                    (_, Kind::Old) => self.assign(a, Kind::New),
                    _ => true,
                }
            }
        }
    }

    fn branch(&mut self, mut v: VertexId, sink: &mut dyn FnMut(&[Kind]) -> bool) -> bool {
        while v < self.kind.len() && self.kind[v] != Kind::Unset {
            v += 1;
        }
        if v == self.kind.len() {
            return sink(&self.kind);
        }
        for k in [Kind::Old, Kind::New] {
            let mark = self.trail.len();
            let keep_going = if self.assign(v, k) && self.propagate() {
                self.branch(v + 1, sink)
            } else {
                true
            };
            self.undo_to(mark);
            if !keep_going {
                return false;
            }
        }
        true
    }
}

/// Turns a complete old/new assignment into a labeling, or `None` when it
/// does not describe a 2-subdivision graph.
fn assemble_labeling(g: &Multigraph, kinds: &[Kind]) -> Option<S2Labeling> {
    let n = g.vertex_count();
    let is_leaf = |v: VertexId| g.degree(v) == 1;
    // base vertex per representative key
    #[derive(Clone, Copy)]
    enum Anchor {
        Old(VertexId),
        Support(VertexId),
    }
    let mut partner = vec![usize::MAX; n];
    let mut anchor = vec![None; n];
    for x in g.vertices().filter(|&x| kinds[x] == Kind::New) {
        let nb = g.neighbors(x);
        let news: Vec<_> = nb.iter().copied().filter(|&u| kinds[u] == Kind::New).collect();
        if news.len() != 1 {
            return None;
        }
        partner[x] = news[0];
        let olds: Vec<_> = nb.iter().copied().filter(|&u| kinds[u] == Kind::Old).collect();
        if olds.is_empty() {
            return None;
        }
        if olds.iter().all(|&u| is_leaf(u)) {
            anchor[x] = Some(Anchor::Support(x));
        } else if olds.len() == 1 {
            anchor[x] = Some(Anchor::Old(olds[0]));
        } else {
            return None;
        }
    }
    for v in g.vertices().filter(|&v| kinds[v] == Kind::Old) {
        if g.neighbors(v).iter().any(|&u| kinds[u] != Kind::New) {
            return None;
        }
    }

    // base vertices, ordered by their smallest representative
    let mut keyed: Vec<(VertexId, Anchor)> = Vec::new();
    for v in g.vertices() {
        if kinds[v] == Kind::Old && !is_leaf(v) {
            keyed.push((v, Anchor::Old(v)));
        }
        if kinds[v] == Kind::New && matches!(anchor[v], Some(Anchor::Support(_))) {
            let first_leaf = g.neighbors(v).iter().copied().find(|&u| is_leaf(u))?;
            keyed.push((first_leaf, Anchor::Support(v)));
        }
    }
    keyed.sort_by_key(|&(k, _)| k);
    let mut base_of_old = HashMap::new();
    let mut base_of_support = HashMap::new();
    for (i, &(_, a)) in keyed.iter().enumerate() {
        match a {
            Anchor::Old(v) => base_of_old.insert(v, i),
            Anchor::Support(s) => base_of_support.insert(s, i),
        };
    }
    let base_vertex = |x: VertexId| -> usize {
        match anchor[x].unwrap() {
            Anchor::Old(v) => base_of_old[&v],
            Anchor::Support(s) => base_of_support[&s],
        }
    };

    // one base edge per subdivision pair, ordered by smaller member
    let mut base_edges = Vec::new();
    let mut first_of_pair = Vec::new();
    for x in g.vertices() {
        if kinds[x] == Kind::New && x < partner[x] {
            let y = partner[x];
            if partner[y] != x {
                return None;
            }
            let (bx, by) = (base_vertex(x), base_vertex(y));
            // a pair hanging off one old vertex is a loop; both ends must then
            // attach to that vertex
            base_edges.push((bx, by));
            first_of_pair.push(x);
        }
    }
    let base = Multigraph::new(keyed.len(), base_edges.iter().copied()).ok()?;
    if base.has_isolated_vertex() {
        return None;
    }
    let base_leaves = base.leaves();
    let mut alpha = Alpha::new();
    for (&s, &b) in &base_of_support {
        if !base_leaves.contains(b) {
            return None;
        }
        alpha.insert(b, g.neighbors(s).iter().filter(|&&u| is_leaf(u)).count());
    }
    for (&v, &b) in &base_of_old {
        if base_leaves.contains(b) || base.degree(b) != g.degree(v) {
            return None;
        }
    }

    let mut tags = vec![None; n];
    for (e, &x) in first_of_pair.iter().enumerate() {
        tags[x] = Some(VertexTag::New {
            edge: e,
            side: EdgeSide::First,
        });
        tags[partner[x]] = Some(VertexTag::New {
            edge: e,
            side: EdgeSide::Second,
        });
    }
    for (&v, &b) in &base_of_old {
        tags[v] = Some(VertexTag::Old { vertex: b });
    }
    for (&s, &b) in &base_of_support {
        let mut leaves: Vec<_> = g.neighbors(s).iter().copied().filter(|&u| is_leaf(u)).collect();
        leaves.sort_unstable();
        for (i, u) in leaves.into_iter().enumerate() {
            tags[u] = Some(VertexTag::LeafCopy { leaf: b, index: i + 1 });
        }
    }
    let tags: Vec<VertexTag> = tags.into_iter().collect::<Option<_>>()?;

    // rebuild and compare tagged edge multisets
    let (rebuilt, rlab) = build_s2(&base, &alpha).ok()?;
    if rebuilt.vertex_count() != n || rebuilt.edge_count() != g.edge_count() {
        return None;
    }
    let index_of: HashMap<VertexTag, VertexId> = tags.iter().enumerate().map(|(i, t)| (*t, i)).collect();
    let mut expected: Vec<(VertexId, VertexId)> = Vec::new();
    let mut tag_for_pair: HashMap<(VertexId, VertexId), Vec<EdgeTag>> = HashMap::new();
    for r in rebuilt.edges() {
        let a = *index_of.get(&rlab.tags[r.u])?;
        let b = *index_of.get(&rlab.tags[r.v])?;
        let key = (a.min(b), a.max(b));
        expected.push(key);
        tag_for_pair.entry(key).or_default().push(rlab.edge_tags[r.id]);
    }
    let mut actual = g.normalized_edges();
    expected.sort_unstable();
    actual.sort_unstable();
    if expected != actual {
        return None;
    }
    let edge_tags = g
        .edges()
        .iter()
        .map(|r| {
            let key = (r.u.min(r.v), r.u.max(r.v));
            tag_for_pair.get_mut(&key).and_then(Vec::pop)
        })
        .collect::<Option<Vec<_>>>()?;
    Some(S2Labeling {
        base,
        alpha,
        tags,
        edge_tags,
    })
}
