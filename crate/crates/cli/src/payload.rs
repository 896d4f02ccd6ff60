//! JSON shapes. Vertex sets are ascending arrays and edges `[u, v, id]`
//! triples so that certificates can be checked without this crate.

use std::collections::BTreeMap;

use dpdp_core::goodsub::{GoodSubgraphCertificate, ReductionPlan};
use dpdp_core::{DpPair, EdgeId, Multigraph, VertexId};
use serde::Serialize;

pub type EdgeTriple = [usize; 3];

#[derive(Serialize)]
pub struct Verdict<T: Serialize> {
    pub command: &'static str,
    pub input: String,
    pub result: T,
    pub engine_version: &'static str,
}

pub fn triple(g: &Multigraph, e: EdgeId) -> EdgeTriple {
    let r = g.edge(e);
    [r.u, r.v, r.id]
}

pub fn triples(g: &Multigraph, ids: impl IntoIterator<Item = EdgeId>) -> Vec<EdgeTriple> {
    let mut out: Vec<EdgeTriple> = ids.into_iter().map(|e| triple(g, e)).collect();
    out.sort_unstable_by_key(|t| t[2]);
    out
}

#[derive(Serialize)]
pub struct GraphJson {
    pub n: usize,
    pub edges: Vec<EdgeTriple>,
}

impl GraphJson {
    pub fn new(g: &Multigraph) -> Self {
        Self {
            n: g.vertex_count(),
            edges: triples(g, 0..g.edge_count()),
        }
    }
}

#[derive(Serialize)]
pub struct PairJson {
    pub d: Vec<VertexId>,
    pub p: Vec<VertexId>,
    pub matching: Vec<EdgeTriple>,
}

impl PairJson {
    /// `g` is the graph the matching's edge ids refer to.
    pub fn new(g: &Multigraph, pair: &DpPair) -> Self {
        Self {
            d: pair.d.to_vec(),
            p: pair.p.to_vec(),
            matching: triples(g, pair.matching.iter().copied()),
        }
    }
}

#[derive(Serialize)]
pub struct CertificateJson {
    pub q_vertices: Vec<VertexId>,
    pub q_edges: Vec<EdgeTriple>,
    pub e_set: Vec<EdgeTriple>,
    /// `[tail, head, id]`
    pub arcs: Vec<EdgeTriple>,
    /// Arc ids of the path starting at each vertex of Q.
    pub paths: BTreeMap<VertexId, Vec<EdgeId>>,
}

impl CertificateJson {
    pub fn new(h: &Multigraph, cert: &GoodSubgraphCertificate) -> Self {
        Self {
            q_vertices: cert.q_vertices.iter().copied().collect(),
            q_edges: triples(h, cert.q_edges.iter().copied()),
            e_set: triples(h, cert.e_set.iter().copied()),
            arcs: cert.arcs.iter().map(|(&e, &(t, hd))| [t, hd, e]).collect(),
            paths: cert.paths.clone(),
        }
    }
}

#[derive(Serialize)]
pub struct ReductionJson {
    /// Edges of S₂(H) removed by the reduction.
    pub removed_edges: Vec<EdgeTriple>,
    pub d: Vec<VertexId>,
    pub p: Vec<VertexId>,
    /// Matching of the pair, with ids of S₂(H).
    pub matching: Vec<EdgeTriple>,
}

impl ReductionJson {
    pub fn new(s2: &Multigraph, plan: &ReductionPlan) -> Self {
        Self {
            removed_edges: triples(s2, plan.removed_edges.iter().copied()),
            d: plan.d_prime.to_vec(),
            p: plan.p_prime.to_vec(),
            matching: triples(s2, plan.matching.iter().copied()),
        }
    }
}
