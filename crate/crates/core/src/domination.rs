//! Dominating sets, paired-dominating sets and DP-pairs.
//!
//! A DP-pair is a partition `(D, P)` of the vertex set where `D` dominates the
//! graph and `P` dominates it while inducing a subgraph with a perfect
//! matching. The exact search assigns vertices to `D` or `P` depth-first with
//! unit propagation of the local domination requirements; the matching on `P`
//! is checked once an assignment is complete.

use std::collections::HashSet;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::graph::{EdgeId, Multigraph, VertexId, VertexSet};

/// A DP-pair together with a perfect matching of `G[P]` as its witness.
///
/// Two pairs are the same pair iff their `(D, P)` partitions agree; the
/// matching is a certificate, not part of the identity.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DpPair {
    pub d: VertexSet,
    pub p: VertexSet,
    pub matching: Vec<EdgeId>,
}

impl PartialEq for DpPair {
    fn eq(&self, other: &Self) -> bool {
        self.d == other.d && self.p == other.p
    }
}

impl Eq for DpPair {}

/// Every vertex outside `s` has a neighbour in `s`.
pub fn is_dominating(g: &Multigraph, s: &VertexSet) -> bool {
    g.vertices()
        .filter(|&v| !s.contains(v))
        .all(|v| g.neighbors(v).iter().any(|&u| u != v && s.contains(u)))
}

/// A perfect matching of the subgraph induced by `s`, as edge ids, or `None`.
///
/// Backtracking on the lowest unmatched vertex with a memo of unmatched sets
/// already shown to be infeasible.
pub fn has_perfect_matching_on(g: &Multigraph, s: &VertexSet) -> Option<Vec<EdgeId>> {
    if s.len() % 2 == 1 {
        return None;
    }
    let mut unmatched = FixedBitSet::with_capacity(g.vertex_count());
    for v in s.iter() {
        unmatched.insert(v);
    }
    let mut failed = HashSet::new();
    let mut chosen = Vec::with_capacity(s.len() / 2);
    if match_rec(g, &mut unmatched, &mut failed, &mut chosen) {
        chosen.sort_unstable();
        Some(chosen)
    } else {
        None
    }
}

fn match_rec(
    g: &Multigraph,
    unmatched: &mut FixedBitSet,
    failed: &mut HashSet<FixedBitSet>,
    chosen: &mut Vec<EdgeId>,
) -> bool {
    let Some(v) = unmatched.ones().next() else {
        return true;
    };
    if failed.contains(unmatched) {
        return false;
    }
    unmatched.set(v, false);
    let mut tried = Vec::new();
    for &e in g.incident_edges(v) {
        let u = g.edge(e).other(v);
        if u == v || !unmatched.contains(u) || tried.contains(&u) {
            continue;
        }
        tried.push(u);
        unmatched.set(u, false);
        chosen.push(e);
        if match_rec(g, unmatched, failed, chosen) {
            return true;
        }
        chosen.pop();
        unmatched.insert(u);
    }
    unmatched.insert(v);
    failed.insert(unmatched.clone());
    false
}

pub fn is_paired_dominating(g: &Multigraph, s: &VertexSet) -> bool {
    is_dominating(g, s) && has_perfect_matching_on(g, s).is_some()
}

/// Checks every DP-pair invariant literally against `g`, including the
/// supplied matching.
pub fn is_dp_pair(g: &Multigraph, pair: &DpPair) -> bool {
    let n = g.vertex_count();
    let in_range = |s: &VertexSet| s.iter().all(|v| v < n);
    if !in_range(&pair.d) || !in_range(&pair.p) {
        return false;
    }
    if !pair.d.is_disjoint(&pair.p) || pair.d.len() + pair.p.len() != n {
        return false;
    }
    if pair.p.len() % 2 == 1 {
        return false;
    }
    if !is_dominating(g, &pair.d) || !is_dominating(g, &pair.p) {
        return false;
    }
    let mut covered = vec![false; n];
    for &e in &pair.matching {
        if e >= g.edge_count() {
            return false;
        }
        let r = g.edge(e);
        if r.is_loop() || !pair.p.contains(r.u) || !pair.p.contains(r.v) {
            return false;
        }
        if covered[r.u] || covered[r.v] {
            return false;
        }
        covered[r.u] = true;
        covered[r.v] = true;
    }
    pair.p.iter().all(|v| covered[v])
}

pub fn find_dp_pair(g: &Multigraph) -> Option<DpPair> {
    let mut found = None;
    PairSearch::run(g, |pair| {
        found = Some(pair);
        false
    });
    found
}

pub fn is_dpdp(g: &Multigraph) -> bool {
    find_dp_pair(g).is_some()
}

/// Distinct DP-pairs (by partition), at most `cap`, in search order.
pub fn enumerate_dp_pairs(g: &Multigraph, cap: usize) -> Vec<DpPair> {
    let mut out = Vec::new();
    if cap == 0 {
        return out;
    }
    PairSearch::run(g, |pair| {
        out.push(pair);
        out.len() < cap
    });
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Side {
    Unset,
    D,
    P,
}

struct PairSearch<'g> {
    g: &'g Multigraph,
    // distinct neighbours, self excluded
    nb: Vec<Vec<VertexId>>,
    order: Vec<VertexId>,
    side: Vec<Side>,
    trail: Vec<VertexId>,
    queue: Vec<VertexId>,
    queued: Vec<bool>,
}

impl<'g> PairSearch<'g> {
    /// Drives the search, handing each verified pair to `sink` until it
    /// returns `false`.
    fn run(g: &'g Multigraph, mut sink: impl FnMut(DpPair) -> bool) {
        let n = g.vertex_count();
        if g.has_isolated_vertex() {
            return;
        }
        let nb: Vec<Vec<VertexId>> = g
            .vertices()
            .map(|v| g.neighbors(v).iter().copied().filter(|&u| u != v).collect())
            .collect();
        let mut search = PairSearch {
            g,
            nb,
            order: g.bfs_order(),
            side: vec![Side::Unset; n],
            trail: Vec::new(),
            queue: Vec::new(),
            queued: vec![false; n],
        };
        // leaves go to D, supports to P
        let leaves = g.leaves();
        let supports = g.supports();
        if !leaves.is_disjoint(&supports) {
            return;
        }
        for v in leaves.iter() {
            search.set(v, Side::D);
        }
        for v in supports.iter() {
            search.set(v, Side::P);
        }
        for v in g.vertices() {
            search.enqueue(v);
        }
        if !search.propagate() {
            return;
        }
        search.branch(0, &mut sink);
    }

    fn set(&mut self, v: VertexId, s: Side) {
        debug_assert_eq!(self.side[v], Side::Unset);
        self.side[v] = s;
        self.trail.push(v);
    }

    fn enqueue(&mut self, v: VertexId) {
        if !self.queued[v] {
            self.queued[v] = true;
            self.queue.push(v);
        }
    }

    fn assign(&mut self, v: VertexId, s: Side) {
        self.set(v, s);
        self.enqueue(v);
        for i in 0..self.nb[v].len() {
            let u = self.nb[v][i];
            self.enqueue(u);
        }
    }

    fn undo_to(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let v = self.trail.pop().unwrap();
            self.side[v] = Side::Unset;
        }
    }

    fn clear_queue(&mut self) {
        for v in self.queue.drain(..) {
            self.queued[v] = false;
        }
    }

    /// Applies forced assignments until fixpoint; `false` on contradiction.
    fn propagate(&mut self) -> bool {
        while let Some(w) = self.queue.pop() {
            self.queued[w] = false;
            let (mut d, mut p, mut unset, mut last_unset) = (0, 0, 0, usize::MAX);
            for &u in &self.nb[w] {
                match self.side[u] {
                    Side::D => d += 1,
                    Side::P => p += 1,
                    Side::Unset => {
                        unset += 1;
                        last_unset = u;
                    }
                }
            }
            let forced = match self.side[w] {
                // D needs a P neighbour
                Side::D => {
                    if p > 0 {
                        None
                    } else if unset == 0 {
                        self.clear_queue();
                        return false;
                    } else if unset == 1 {
                        Some((last_unset, Side::P))
                    } else {
                        None
                    }
                }
                // P needs a D neighbour and a P partner
                Side::P => {
                    let need_d = d == 0;
                    let need_p = p == 0;
                    if (need_d || need_p) && unset == 0 || (need_d && need_p && unset < 2) {
                        self.clear_queue();
                        return false;
                    }
                    if need_d && !need_p && unset == 1 {
                        Some((last_unset, Side::D))
                    } else if need_p && !need_d && unset == 1 {
                        Some((last_unset, Side::P))
                    } else {
                        None
                    }
                }
                Side::Unset => {
                    let can_d = p + unset >= 1;
                    let can_p = (d >= 1 && p >= 1)
                        || (d >= 1 && unset >= 1)
                        || (p >= 1 && unset >= 1)
                        || unset >= 2;
                    match (can_d, can_p) {
                        (false, false) => {
                            self.clear_queue();
                            return false;
                        }
                        (false, true) => Some((w, Side::P)),
                        (true, false) => Some((w, Side::D)),
                        (true, true) => None,
                    }
                }
            };
            if let Some((v, s)) = forced {
                self.assign(v, s);
            }
        }
        true
    }

    fn branch(&mut self, mut pos: usize, sink: &mut impl FnMut(DpPair) -> bool) -> bool {
        while pos < self.order.len() && self.side[self.order[pos]] != Side::Unset {
            pos += 1;
        }
        if pos == self.order.len() {
            return self.complete(sink);
        }
        let v = self.order[pos];
        for s in [Side::D, Side::P] {
            let mark = self.trail.len();
            self.assign(v, s);
            let keep_going = if self.propagate() {
                self.branch(pos + 1, sink)
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

    fn complete(&mut self, sink: &mut impl FnMut(DpPair) -> bool) -> bool {
        let n = self.g.vertex_count();
        let d = VertexSet::from_iter_in(n, (0..n).filter(|&v| self.side[v] == Side::D));
        let p = VertexSet::from_iter_in(n, (0..n).filter(|&v| self.side[v] == Side::P));
        let Some(matching) = has_perfect_matching_on(self.g, &p) else {
            return true;
        };
        let pair = DpPair { d, p, matching };
        assert!(is_dp_pair(self.g, &pair), "search produced an invalid pair");
        debug_assert!(self.g.leaves().is_subset(&pair.d));
        debug_assert!(self.g.supports().is_subset(&pair.p));
        sink(pair)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(n: usize) -> Multigraph {
        Multigraph::new(n, (1..n).map(|i| (i - 1, i))).unwrap()
    }

    fn cycle(n: usize) -> Multigraph {
        Multigraph::new(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    fn complete(n: usize) -> Multigraph {
        let mut edges = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                edges.push((i, j));
            }
        }
        Multigraph::new(n, edges).unwrap()
    }

    fn set(n: usize, items: &[usize]) -> VertexSet {
        VertexSet::from_iter_in(n, items.iter().copied())
    }

    #[test]
    fn domination_examples() {
        let k3 = complete(3);
        for v in 0..3 {
            assert!(is_dominating(&k3, &set(3, &[v])));
        }
        assert!(!is_dominating(&path(4), &set(4, &[0])));
        assert!(is_dominating(&path(4), &VertexSet::full(4)));
    }

    #[test]
    fn loop_does_not_self_dominate() {
        let c1 = cycle(1);
        assert!(!is_dominating(&c1, &VertexSet::empty(1)));
    }

    #[test]
    fn matching_examples() {
        let p4 = path(4);
        assert_eq!(has_perfect_matching_on(&p4, &set(4, &[1, 2])), Some(vec![1]));
        assert_eq!(has_perfect_matching_on(&p4, &set(4, &[0, 1, 2])), None);
        let c6 = cycle(6);
        let m = has_perfect_matching_on(&c6, &VertexSet::full(6)).unwrap();
        assert_eq!(m.len(), 3);
        // loops never match
        let g = Multigraph::new(2, [(0, 0), (1, 1)]).unwrap();
        assert_eq!(has_perfect_matching_on(&g, &VertexSet::full(2)), None);
    }

    #[test]
    fn dp_pair_examples() {
        let pair = DpPair {
            d: set(4, &[0, 3]),
            p: set(4, &[1, 2]),
            matching: vec![1],
        };
        assert!(is_dp_pair(&path(4), &pair));

        let k3 = DpPair {
            d: set(3, &[0]),
            p: set(3, &[1, 2]),
            matching: vec![2],
        };
        assert!(is_dp_pair(&complete(3), &k3));
        assert!(find_dp_pair(&cycle(5)).is_none());
    }

    #[test]
    fn dp_pair_rejects_bad_matching() {
        let bad = DpPair {
            d: set(4, &[0, 3]),
            p: set(4, &[1, 2]),
            matching: vec![0],
        };
        assert!(!is_dp_pair(&path(4), &bad));
        let missing = DpPair {
            d: set(4, &[0, 3]),
            p: set(4, &[1, 2]),
            matching: vec![],
        };
        assert!(!is_dp_pair(&path(4), &missing));
    }

    #[test]
    fn path_and_cycle_tables() {
        for n in 1..=20 {
            let expected = ![1, 2, 3, 5, 6, 9].contains(&n);
            assert_eq!(is_dpdp(&path(n)), expected, "P_{n}");
        }
        for n in 3..=20 {
            assert_eq!(is_dpdp(&cycle(n)), n != 5, "C_{n}");
        }
        assert!(is_dpdp(&complete(4)));
    }

    #[test]
    fn enumeration_examples() {
        let pairs = enumerate_dp_pairs(&path(4), 10);
        assert_eq!(pairs.len(), 1);
        assert_eq!(pairs[0].d.to_vec(), vec![0, 3]);
        assert_eq!(enumerate_dp_pairs(&complete(3), 10).len(), 3);
        assert!(enumerate_dp_pairs(&cycle(5), 10).is_empty());
        assert_eq!(enumerate_dp_pairs(&complete(3), 2).len(), 2);
    }

    #[test]
    fn isolated_vertex_is_never_dpdp() {
        let g = Multigraph::new(4, [(0, 1), (1, 2), (0, 2)]).unwrap();
        assert!(!is_dpdp(&g));
        assert!(!is_dpdp(&Multigraph::edgeless(1)));
    }

    #[test]
    fn empty_graph_is_vacuously_dpdp() {
        let pair = find_dp_pair(&Multigraph::edgeless(0)).unwrap();
        assert!(pair.d.is_empty() && pair.p.is_empty());
    }
}
