//! Finite multigraphs with loops and parallel edges.
//!
//! Vertices are dense ids `0..n`; edges carry stable ids `0..m` in insertion
//! order. A loop contributes 2 to the degree of its vertex, and a vertex with a
//! loop is a member of its own neighbourhood.

use std::collections::VecDeque;
use std::fmt;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::GraphError;

pub type VertexId = usize;
pub type EdgeId = usize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct EdgeRecord {
    pub id: EdgeId,
    pub u: VertexId,
    pub v: VertexId,
}

impl EdgeRecord {
    pub fn is_loop(&self) -> bool {
        self.u == self.v
    }

    /// The endpoint opposite to `x`. For a loop this is `x` itself.
    pub fn other(&self, x: VertexId) -> VertexId {
        if self.u == x {
            self.v
        } else {
            debug_assert_eq!(self.v, x);
            self.u
        }
    }

    pub fn touches(&self, x: VertexId) -> bool {
        self.u == x || self.v == x
    }
}

/// A subset of the vertex range `0..n` of some host graph.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VertexSet {
    bits: FixedBitSet,
}

impl VertexSet {
    pub fn empty(n: usize) -> Self {
        Self {
            bits: FixedBitSet::with_capacity(n),
        }
    }

    pub fn full(n: usize) -> Self {
        let mut bits = FixedBitSet::with_capacity(n);
        bits.insert_range(..);
        Self { bits }
    }

    pub fn from_iter_in(n: usize, items: impl IntoIterator<Item = VertexId>) -> Self {
        let mut s = Self::empty(n);
        for v in items {
            s.insert(v);
        }
        s
    }

    /// Size of the underlying vertex range.
    pub fn universe(&self) -> usize {
        self.bits.len()
    }

    pub fn insert(&mut self, v: VertexId) {
        assert!(v < self.universe(), "vertex {v} outside 0..{}", self.universe());
        self.bits.insert(v);
    }

    pub fn remove(&mut self, v: VertexId) {
        if v < self.universe() {
            self.bits.set(v, false);
        }
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.bits.contains(v)
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_clear()
    }

    /// Members in ascending order.
    pub fn iter(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.bits.ones()
    }

    pub fn to_vec(&self) -> Vec<VertexId> {
        self.iter().collect()
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        let mut bits = self.bits.clone();
        bits.union_with(&other.bits);
        VertexSet { bits }
    }

    pub fn intersection(&self, other: &VertexSet) -> VertexSet {
        let mut bits = self.bits.clone();
        bits.intersect_with(&other.bits);
        VertexSet { bits }
    }

    pub fn difference(&self, other: &VertexSet) -> VertexSet {
        let mut bits = self.bits.clone();
        bits.difference_with(&other.bits);
        VertexSet { bits }
    }

    pub fn complement(&self) -> VertexSet {
        let mut bits = self.bits.clone();
        bits.toggle_range(..);
        VertexSet { bits }
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.bits.is_subset(&other.bits)
    }

    pub fn is_disjoint(&self, other: &VertexSet) -> bool {
        self.bits.is_disjoint(&other.bits)
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// Serialized as the ascending array of members; the universe is implied by
/// the host graph.
impl Serialize for VertexSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_seq(self.iter())
    }
}

impl<'de> Deserialize<'de> for VertexSet {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let items = Vec::<VertexId>::deserialize(deserializer)?;
        let n = items.iter().max().map_or(0, |&m| m + 1);
        Ok(VertexSet::from_iter_in(n, items))
    }
}

/// Immutable multigraph.
///
/// Serializes as `{"n": .., "edges": [[u, v, id], ..]}`.
#[derive(Clone, PartialEq, Eq)]
pub struct Multigraph {
    n: usize,
    edges: Vec<EdgeRecord>,
    incidence: Vec<Vec<EdgeId>>,
    // distinct neighbours, ascending; contains v iff v carries a loop
    adjacency: Vec<Vec<VertexId>>,
}

impl fmt::Debug for Multigraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Multigraph(n={}, edges=[", self.n)?;
        for (i, e) in self.edges.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}-{}", e.u, e.v)?;
        }
        write!(f, "])")
    }
}

#[derive(Serialize, Deserialize)]
struct MultigraphRepr {
    n: usize,
    edges: Vec<(VertexId, VertexId, EdgeId)>,
}

impl Serialize for Multigraph {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        MultigraphRepr {
            n: self.n,
            edges: self.edges.iter().map(|r| (r.u, r.v, r.id)).collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Multigraph {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let repr = MultigraphRepr::deserialize(deserializer)?;
        let mut edges = repr.edges;
        edges.sort_by_key(|&(_, _, id)| id);
        if edges.iter().enumerate().any(|(i, &(_, _, id))| i != id) {
            return Err(serde::de::Error::custom("edge ids must be 0..m"));
        }
        Multigraph::new(repr.n, edges.into_iter().map(|(u, v, _)| (u, v)))
            .map_err(serde::de::Error::custom)
    }
}

impl Multigraph {
    pub fn new<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (VertexId, VertexId)>,
    {
        let mut records = Vec::new();
        for (id, (u, v)) in edges.into_iter().enumerate() {
            if u >= n || v >= n {
                return Err(GraphError::EndpointOutOfRange { edge: id, u, v, n });
            }
            records.push(EdgeRecord { id, u, v });
        }
        Ok(Self::from_records(n, records))
    }

    /// Graph with `n` vertices and no edges.
    pub fn edgeless(n: usize) -> Self {
        Self::from_records(n, Vec::new())
    }

    fn from_records(n: usize, edges: Vec<EdgeRecord>) -> Self {
        let mut incidence = vec![Vec::new(); n];
        let mut adjacency = vec![Vec::new(); n];
        for e in &edges {
            incidence[e.u].push(e.id);
            adjacency[e.u].push(e.v);
            if !e.is_loop() {
                incidence[e.v].push(e.id);
                adjacency[e.v].push(e.u);
            }
        }
        for list in &mut adjacency {
            list.sort_unstable();
            list.dedup();
        }
        Self {
            n,
            edges,
            incidence,
            adjacency,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> std::ops::Range<VertexId> {
        0..self.n
    }

    pub fn edges(&self) -> &[EdgeRecord] {
        &self.edges
    }

    pub fn edge(&self, e: EdgeId) -> &EdgeRecord {
        &self.edges[e]
    }

    /// Edge ids incident with `v`, ascending. A loop appears once.
    pub fn incident_edges(&self, v: VertexId) -> &[EdgeId] {
        &self.incidence[v]
    }

    /// Distinct neighbours of `v` in ascending order, `v` included iff it has a loop.
    pub fn neighbors(&self, v: VertexId) -> &[VertexId] {
        &self.adjacency[v]
    }

    /// Incidence count, loops weighted 2.
    pub fn degree(&self, v: VertexId) -> usize {
        self.incidence[v]
            .iter()
            .map(|&e| if self.edges[e].is_loop() { 2 } else { 1 })
            .sum()
    }

    pub fn max_degree(&self) -> usize {
        self.vertices().map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn loop_count(&self, v: VertexId) -> usize {
        self.incidence[v]
            .iter()
            .filter(|&&e| self.edges[e].is_loop())
            .count()
    }

    /// Number of parallel edges joining `u` and `v` (loops when `u == v`).
    pub fn multiplicity(&self, u: VertexId, v: VertexId) -> usize {
        self.incidence[u]
            .iter()
            .filter(|&&e| {
                let r = &self.edges[e];
                (r.u == u && r.v == v) || (r.u == v && r.v == u)
            })
            .count()
    }

    pub fn has_loops(&self) -> bool {
        self.edges.iter().any(EdgeRecord::is_loop)
    }

    /// No loops and no parallel edges.
    pub fn is_simple(&self) -> bool {
        !self.has_loops()
            && self
                .vertices()
                .all(|v| self.adjacency[v].len() == self.incidence[v].len())
    }

    pub fn isolated_vertices(&self) -> Vec<VertexId> {
        self.vertices().filter(|&v| self.incidence[v].is_empty()).collect()
    }

    pub fn has_isolated_vertex(&self) -> bool {
        self.vertices().any(|v| self.incidence[v].is_empty())
    }

    pub fn neighborhood(&self, v: VertexId) -> VertexSet {
        VertexSet::from_iter_in(self.n, self.adjacency[v].iter().copied())
    }

    /// `N(X)`: union of the open neighbourhoods of the members of `x`.
    pub fn open_neighborhood_of(&self, x: &VertexSet) -> VertexSet {
        let mut out = VertexSet::empty(self.n);
        for v in x.iter() {
            for &u in &self.adjacency[v] {
                out.insert(u);
            }
        }
        out
    }

    /// `N[X] = N(X) ∪ X`.
    pub fn closed_neighborhood(&self, x: &VertexSet) -> VertexSet {
        self.open_neighborhood_of(x).union(x)
    }

    pub fn leaves(&self) -> VertexSet {
        VertexSet::from_iter_in(self.n, self.vertices().filter(|&v| self.degree(v) == 1))
    }

    /// Number of leaves adjacent to `v`.
    pub fn leaf_neighbor_count(&self, v: VertexId) -> usize {
        self.adjacency[v]
            .iter()
            .filter(|&&u| self.degree(u) == 1)
            .count()
    }

    pub fn supports(&self) -> VertexSet {
        VertexSet::from_iter_in(
            self.n,
            self.vertices().filter(|&v| self.leaf_neighbor_count(v) >= 1),
        )
    }

    pub fn strong_supports(&self) -> VertexSet {
        VertexSet::from_iter_in(
            self.n,
            self.vertices().filter(|&v| self.leaf_neighbor_count(v) >= 2),
        )
    }

    pub fn weak_supports(&self) -> VertexSet {
        VertexSet::from_iter_in(
            self.n,
            self.vertices().filter(|&v| self.leaf_neighbor_count(v) == 1),
        )
    }

    /// Removes edge `e`. Returns the new graph and a map from old edge ids to
    /// new ones (`None` for the removed edge). Vertex ids are unchanged.
    pub fn delete_edge(&self, e: EdgeId) -> Result<(Multigraph, Vec<Option<EdgeId>>), GraphError> {
        if e >= self.edges.len() {
            return Err(GraphError::UnknownEdge(e));
        }
        Ok(self.delete_edges(&[e]))
    }

    /// Removes every listed edge; unknown ids are ignored.
    pub fn delete_edges(&self, removed: &[EdgeId]) -> (Multigraph, Vec<Option<EdgeId>>) {
        let mut map = Vec::with_capacity(self.edges.len());
        let mut kept = Vec::new();
        for r in &self.edges {
            if removed.contains(&r.id) {
                map.push(None);
            } else {
                map.push(Some(kept.len()));
                kept.push(EdgeRecord {
                    id: kept.len(),
                    u: r.u,
                    v: r.v,
                });
            }
        }
        (Self::from_records(self.n, kept), map)
    }

    /// A copy with one more edge `u-v`, which receives id `m`.
    pub fn with_edge(&self, u: VertexId, v: VertexId) -> Result<Multigraph, GraphError> {
        if u >= self.n || v >= self.n {
            return Err(GraphError::EndpointOutOfRange {
                edge: self.edges.len(),
                u,
                v,
                n: self.n,
            });
        }
        let mut records = self.edges.clone();
        records.push(EdgeRecord {
            id: records.len(),
            u,
            v,
        });
        Ok(Self::from_records(self.n, records))
    }

    /// Subgraph keeping every vertex and only the listed edges (renumbered in
    /// the given order).
    pub fn spanning_subgraph(&self, keep: &[EdgeId]) -> Multigraph {
        let records = keep
            .iter()
            .enumerate()
            .map(|(id, &e)| EdgeRecord {
                id,
                u: self.edges[e].u,
                v: self.edges[e].v,
            })
            .collect();
        Self::from_records(self.n, records)
    }

    /// Subgraph induced by `keep`, vertices renumbered in ascending order.
    /// Returns the graph and the new-to-old vertex map.
    pub fn induced_subgraph(&self, keep: &VertexSet) -> (Multigraph, Vec<VertexId>) {
        let order = keep.to_vec();
        let mut index = vec![usize::MAX; self.n];
        for (i, &v) in order.iter().enumerate() {
            index[v] = i;
        }
        let pairs: Vec<_> = self
            .edges
            .iter()
            .filter(|r| keep.contains(r.u) && keep.contains(r.v))
            .map(|r| (index[r.u], index[r.v]))
            .collect();
        let g = Multigraph::new(order.len(), pairs).expect("renumbered endpoints are in range");
        (g, order)
    }

    /// Connected components as ascending vertex lists, ordered by smallest member.
    pub fn connected_components(&self) -> Vec<Vec<VertexId>> {
        let mut seen = vec![false; self.n];
        let mut components = Vec::new();
        for s in self.vertices() {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut queue = VecDeque::from([s]);
            while let Some(x) = queue.pop_front() {
                for &y in &self.adjacency[x] {
                    if !seen[y] {
                        seen[y] = true;
                        comp.push(y);
                        queue.push_back(y);
                    }
                }
            }
            comp.sort_unstable();
            components.push(comp);
        }
        components
    }

    pub fn is_connected(&self) -> bool {
        self.connected_components().len() <= 1
    }

    /// BFS distance, `None` when unreachable.
    pub fn distance(&self, u: VertexId, v: VertexId) -> Option<usize> {
        self.bfs_distances(u)[v]
    }

    pub fn bfs_distances(&self, source: VertexId) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.n];
        dist[source] = Some(0);
        let mut queue = VecDeque::from([source]);
        while let Some(x) = queue.pop_front() {
            let dx = dist[x].unwrap();
            for &y in &self.adjacency[x] {
                if dist[y].is_none() {
                    dist[y] = Some(dx + 1);
                    queue.push_back(y);
                }
            }
        }
        dist
    }

    /// Vertices in breadth-first order, restarting from the smallest unvisited
    /// vertex for each component.
    pub fn bfs_order(&self) -> Vec<VertexId> {
        let mut seen = vec![false; self.n];
        let mut order = Vec::with_capacity(self.n);
        for s in self.vertices() {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut queue = VecDeque::from([s]);
            while let Some(x) = queue.pop_front() {
                order.push(x);
                for &y in &self.adjacency[x] {
                    if !seen[y] {
                        seen[y] = true;
                        queue.push_back(y);
                    }
                }
            }
        }
        order
    }

    /// Edge multiset as sorted `(min, max)` pairs; equal for graphs that
    /// differ only in edge order.
    pub fn normalized_edges(&self) -> Vec<(VertexId, VertexId)> {
        let mut pairs: Vec<_> = self
            .edges
            .iter()
            .map(|r| (r.u.min(r.v), r.u.max(r.v)))
            .collect();
        pairs.sort_unstable();
        pairs
    }

    pub fn same_edges_as(&self, other: &Multigraph) -> bool {
        self.n == other.n && self.normalized_edges() == other.normalized_edges()
    }

    /// Connected, 2-regular, loopless: a cycle `C_n` with `n ≥ 3`, or `C_2`
    /// when `n = 2` (two parallel edges). `C_1` is a single loop.
    pub fn is_cycle(&self) -> bool {
        self.n >= 1
            && self.is_connected()
            && self.vertices().all(|v| self.degree(v) == 2)
    }

    /// Connected tree-shaped path `P_n`.
    pub fn is_path(&self) -> bool {
        if self.n == 0 || self.edges.len() + 1 != self.n || !self.is_connected() {
            return false;
        }
        self.n == 1 || self.vertices().all(|v| (1..=2).contains(&self.degree(v)))
    }

    pub fn is_tree(&self) -> bool {
        self.n >= 1 && self.edges.len() + 1 == self.n && self.is_connected()
    }

    pub fn is_forest(&self) -> bool {
        self.connected_components().len() + self.edges.len() == self.n && !self.has_loops()
    }
}
