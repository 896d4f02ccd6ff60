//! Minimal DPDP graphs: the edge-deletion test, greedy extraction of a
//! minimal spanning subgraph, and cross-validation of the three equivalent
//! characterizations on 2-subdivision graphs.

use serde::{Deserialize, Serialize};

use crate::domination::{enumerate_dp_pairs, is_dpdp, DpPair};
use crate::error::MinimalityError;
use crate::goodsub::{find_good_subgraph, reduce_via_good_subgraph, GoodSubgraphCertificate, ReductionPlan};
use crate::graph::{EdgeId, Multigraph, VertexId};
use crate::subdivision::{build_s2, canonical_dp_pair, invert_s2, Alpha, S2Labeling};

/// DPDP, and no single-edge deletion is. By supergraph monotonicity this is
/// the same as having no proper spanning DPDP subgraph.
pub fn is_minimal_by_deletion(g: &Multigraph) -> bool {
    is_dpdp(g)
        && (0..g.edge_count()).all(|e| {
            let (smaller, _) = g.delete_edges(&[e]);
            !is_dpdp(&smaller)
        })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinimalSubgraph {
    pub graph: Multigraph,
    /// Ids in the input graph of the edges that survive.
    pub kept_edges: Vec<EdgeId>,
}

/// Deletes edges in id order whenever the rest stays DPDP. One pass suffices:
/// an edge that cannot be removed at some point cannot be removed later.
pub fn minimal_spanning_dpdp_subgraph(g: &Multigraph) -> Option<MinimalSubgraph> {
    if !is_dpdp(g) {
        return None;
    }
    let mut kept: Vec<EdgeId> = (0..g.edge_count()).collect();
    for e in 0..g.edge_count() {
        let trial: Vec<EdgeId> = kept.iter().copied().filter(|&f| f != e).collect();
        if is_dpdp(&g.spanning_subgraph(&trial)) {
            kept = trial;
        }
    }
    Some(MinimalSubgraph {
        graph: g.spanning_subgraph(&kept),
        kept_edges: kept,
    })
}

/// Adjacent degree-2 vertices `x, y` with single further neighbours `x′, y′`
/// that both have a neighbour outside `{x, y}`. Returns `(x, y, x′, y′)`.
pub fn check_reducible_pattern(h: &Multigraph) -> Option<(VertexId, VertexId, VertexId, VertexId)> {
    let other_neighbor = |a: VertexId, b: VertexId| -> Option<VertexId> {
        match h.neighbors(a) {
            [p, q] if *p == b => Some(*q),
            [p, q] if *q == b => Some(*p),
            _ => None,
        }
    };
    let reaches_out = |z: VertexId, x: VertexId, y: VertexId| h.neighbors(z).iter().any(|&w| w != x && w != y);
    for x in h.vertices() {
        if h.degree(x) != 2 || h.loop_count(x) > 0 {
            continue;
        }
        for &y in h.neighbors(x) {
            if y == x || h.degree(y) != 2 || h.loop_count(y) > 0 {
                continue;
            }
            let (Some(xp), Some(yp)) = (other_neighbor(x, y), other_neighbor(y, x)) else {
                continue;
            };
            if reaches_out(xp, x, y) && reaches_out(yp, x, y) {
                return Some((x, y, xp, yp));
            }
        }
    }
    None
}

/// `G` connected and of order at least 3, the setting in which the three
/// characterizations are equivalent.
pub fn characterization_applies(g: &Multigraph) -> bool {
    g.vertex_count() >= 3 && g.is_connected()
}

/// Connected, 2-regular, with 3, 6 or 9 vertices.
pub fn is_exceptional_cycle(g: &Multigraph) -> bool {
    matches!(g.vertex_count(), 3 | 6 | 9) && g.is_cycle()
}

/// The unique-pair characterization for `G = S₂(H)`: the canonical pair is
/// the only one, or `G` is one of the exceptional cycles.
pub fn unique_canonical_pair(g: &Multigraph, lab: &S2Labeling) -> bool {
    if is_exceptional_cycle(g) {
        return true;
    }
    let pairs = enumerate_dp_pairs(g, 2);
    pairs.len() == 1 && pairs[0] == canonical_dp_pair(lab)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinimalityReport {
    pub is_dpdp: bool,
    pub minimal_by_deletion: bool,
    /// `(H, α)` with its labeling when `G` is a 2-subdivision graph.
    pub inversion: Option<S2Labeling>,
    /// A good subgraph of the recovered `H`, if any.
    pub good_subgraph: Option<GoodSubgraphCertificate>,
    /// Number of DP-pairs, counted up to 2.
    pub dp_pair_count_capped: usize,
    pub characterization_applies: bool,
    /// Always true when the characterization does not apply.
    pub verdicts_consistent: bool,
}

/// Runs every engine on `G`.
pub fn classify(g: &Multigraph) -> MinimalityReport {
    let is_dpdp = is_dpdp(g);
    let minimal_by_deletion = is_dpdp && is_minimal_by_deletion(g);
    let inversion = invert_s2(g);
    let good_subgraph = inversion.as_ref().and_then(|lab| find_good_subgraph(&lab.base));
    let dp_pair_count_capped = enumerate_dp_pairs(g, 2).len();
    let applies = characterization_applies(g);
    let verdicts_consistent = !applies || {
        let by_pairs = inversion.as_ref().is_some_and(|lab| unique_canonical_pair(g, lab));
        let by_goodsub = inversion.is_some() && good_subgraph.is_none();
        minimal_by_deletion == by_pairs && by_pairs == by_goodsub
    };
    MinimalityReport {
        is_dpdp,
        minimal_by_deletion,
        inversion,
        good_subgraph,
        dp_pair_count_capped,
        characterization_applies: applies,
        verdicts_consistent,
    }
}

/// Outcome of cross-validating the three characterizations on `S₂(H)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct XcheckReport {
    /// Minimal by the deletion test.
    pub minimal_by_deletion: bool,
    /// The canonical pair is unique, or `S₂(H)` is an exceptional cycle.
    pub unique_pair: bool,
    /// `H` has no good subgraph.
    pub no_good_subgraph: bool,
    pub good_subgraph: Option<GoodSubgraphCertificate>,
    /// The reduction built from the good subgraph, if one was found.
    pub reduction: Option<ReductionPlan>,
    pub reducible_pattern: Option<(VertexId, VertexId, VertexId, VertexId)>,
    /// No structural property of minimal graphs is violated.
    pub posterior_ok: bool,
    pub consistent: bool,
}

/// Cross-validates the characterizations on `S₂(H)` with `α ≡ 1`.
pub fn xcheck(h: &Multigraph) -> Result<XcheckReport, MinimalityError> {
    xcheck_with_alpha(h, &Alpha::new())
}

pub fn xcheck_with_alpha(h: &Multigraph, alpha: &Alpha) -> Result<XcheckReport, MinimalityError> {
    if let Some(&v) = h.isolated_vertices().first() {
        return Err(MinimalityError::IsolatedVertex(v));
    }
    if !h.is_connected() {
        return Err(MinimalityError::Disconnected);
    }
    let (g, lab) = build_s2(h, alpha)?;
    let minimal_by_deletion = is_minimal_by_deletion(&g);
    let unique_pair = unique_canonical_pair(&g, &lab);
    let good_subgraph = find_good_subgraph(h);
    let no_good_subgraph = good_subgraph.is_none();

    let mut consistent = minimal_by_deletion == unique_pair && unique_pair == no_good_subgraph;
    let reduction = match &good_subgraph {
        Some(cert) => match reduce_via_good_subgraph(h, alpha, cert) {
            Ok(plan) => Some(plan),
            Err(_) => {
                consistent = false;
                None
            }
        },
        None => None,
    };
    let reducible_pattern = check_reducible_pattern(h);
    if reducible_pattern.is_some() && minimal_by_deletion {
        consistent = false;
    }
    let posterior_ok = !minimal_by_deletion || posterior_properties_hold(&g, POSTERIOR_PAIR_CAP);
    consistent &= posterior_ok;
    Ok(XcheckReport {
        minimal_by_deletion,
        unique_pair,
        no_good_subgraph,
        good_subgraph,
        reduction,
        reducible_pattern,
        posterior_ok,
        consistent,
    })
}

/// Bound on the number of DP-pairs inspected by the posterior checks.
pub const POSTERIOR_PAIR_CAP: usize = 64;

/// Structural properties every DP-pair of a minimal DPDP graph has: `D` is a
/// maximal independent set, `G[P]` is 1-regular, and each `P` vertex has
/// exactly one neighbour outside `P` or only leaves outside `P`.
pub fn pair_has_minimal_structure(g: &Multigraph, pair: &DpPair) -> bool {
    let d = &pair.d;
    let p = &pair.p;
    let independent = d.iter().all(|v| g.neighbors(v).iter().all(|&u| !d.contains(u)));
    let maximal = p.iter().all(|v| g.neighbors(v).iter().any(|&u| u != v && d.contains(u)));
    let one_regular = p.iter().all(|v| {
        let inside: usize = g
            .incident_edges(v)
            .iter()
            .map(|&e| {
                let r = g.edge(e);
                if r.is_loop() {
                    2
                } else {
                    usize::from(p.contains(r.other(v)))
                }
            })
            .sum();
        inside == 1
    });
    let leaves = g.leaves();
    let outside_ok = p.iter().all(|v| {
        let outside: Vec<VertexId> = g.neighbors(v).iter().copied().filter(|&u| !p.contains(u)).collect();
        outside.len() == 1 || (!outside.is_empty() && outside.iter().all(|&u| leaves.contains(u)))
    });
    independent && maximal && one_regular && outside_ok
}

/// [`pair_has_minimal_structure`] for up to `cap` DP-pairs of `g`.
pub fn posterior_properties_hold(g: &Multigraph, cap: usize) -> bool {
    enumerate_dp_pairs(g, cap)
        .iter()
        .all(|pair| pair_has_minimal_structure(g, pair))
}
