//! Engines against brute-force references and against each other.

mod common;

use dpdp_core::catalog::{
    are_isomorphic, cycle, enumerate_connected_multigraphs, enumerate_connected_simple, path, star,
};
use dpdp_core::goodsub::{find_good_subgraph, is_good_certificate};
use dpdp_core::minimality::{is_minimal_by_deletion, minimal_spanning_dpdp_subgraph, xcheck};
use dpdp_core::subdivision::{build_s2, invert_s2, is_2_subdivision, Alpha};
use dpdp_core::{is_dpdp, Multigraph};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn sweep_graphs() -> Vec<Multigraph> {
    enumerate_connected_multigraphs(5).unwrap()
}

fn random_alpha(h: &Multigraph, rng: &mut impl Rng) -> Alpha {
    h.leaves().iter().map(|v| (v, rng.gen_range(1..=3))).collect()
}

#[test]
fn s2_matches_direct_construction() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for h in sweep_graphs() {
        let alpha = random_alpha(&h, &mut rng);
        let (g, _) = build_s2(&h, &alpha).unwrap();
        let by_hand = common::s2_by_hand(&h, |v| alpha.get(&v).copied().unwrap_or(1));
        assert!(are_isomorphic(&g, &by_hand), "{h:?} {alpha:?}");
    }
}

#[test]
fn inversion_recovers_base_graph() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for h in sweep_graphs() {
        let alpha = random_alpha(&h, &mut rng);
        let (g, _) = build_s2(&h, &alpha).unwrap();
        let lab = invert_s2(&g).unwrap_or_else(|| panic!("{h:?} not recognised"));
        assert!(are_isomorphic(&lab.base, &h), "{h:?} came back as {:?}", lab.base);
        let mut want: Vec<usize> = h.leaves().iter().map(|v| alpha.get(&v).copied().unwrap_or(1)).collect();
        let mut got: Vec<usize> = lab.base.leaves().iter().map(|v| lab.alpha.get(&v).copied().unwrap_or(1)).collect();
        want.sort_unstable();
        got.sort_unstable();
        assert_eq!(want, got, "{h:?}");
        let (rebuilt, _) = build_s2(&lab.base, &lab.alpha).unwrap();
        assert_eq!(rebuilt, g);
    }
}

#[test]
fn subdivided_paths_are_recognised() {
    for n in 1..=22 {
        assert_eq!(is_2_subdivision(&path(n)), n >= 4 && n % 3 == 1, "P{n}");
    }
    for n in 3..=15 {
        assert_eq!(is_2_subdivision(&cycle(n)), n % 3 == 0, "C{n}");
    }
    assert!(!is_2_subdivision(&star(3)));
}

#[test]
fn deletion_test_matches_oracle() {
    for n in 2..=6 {
        for g in enumerate_connected_simple(n).unwrap() {
            let oracle = common::is_dpdp(&g)
                && (0..g.edge_count()).all(|e| !common::is_dpdp(&g.delete_edges(&[e]).0));
            assert_eq!(is_minimal_by_deletion(&g), oracle, "{g:?}");
        }
    }
}

#[test]
fn greedy_extraction_is_minimal_and_spanning() {
    for n in 2..=6 {
        for g in enumerate_connected_simple(n).unwrap() {
            match minimal_spanning_dpdp_subgraph(&g) {
                None => assert!(!is_dpdp(&g)),
                Some(r) => {
                    assert_eq!(r.graph.vertex_count(), g.vertex_count());
                    assert!(is_minimal_by_deletion(&r.graph), "{g:?}");
                    for (i, &e) in r.kept_edges.iter().enumerate() {
                        let (a, b) = (g.edge(e), r.graph.edge(i));
                        assert_eq!((a.u, a.v), (b.u, b.v));
                    }
                }
            }
        }
    }
    let r = minimal_spanning_dpdp_subgraph(&cycle(12)).unwrap();
    let mut sizes: Vec<usize> = r.graph.connected_components().iter().map(Vec::len).collect();
    sizes.sort_unstable();
    assert_eq!(sizes, vec![4, 4, 4]);
}

#[test]
fn three_way_agreement_on_small_simple_graphs() {
    for n in 2..=6 {
        for h in enumerate_connected_simple(n).unwrap() {
            let r = xcheck(&h).unwrap();
            assert!(r.consistent, "{h:?}: {r:?}");
        }
    }
}

#[test]
fn certificates_avoid_leaves_and_supports() {
    let mut graphs = sweep_graphs();
    for n in 2..=6 {
        graphs.extend(enumerate_connected_simple(n).unwrap());
    }
    for h in graphs {
        if let Some(cert) = find_good_subgraph(&h) {
            assert!(is_good_certificate(&h, &cert));
            let marked = h.leaves().union(&h.supports());
            assert!(cert.q_vertices.iter().all(|&v| !marked.contains(v)), "{h:?}");
        }
    }
}

#[test]
fn multigraph_counts_match_independent_brute_force() {
    // per-edge-count class sizes from scripts/multigraph_counts.py
    let all = enumerate_connected_multigraphs(5).unwrap();
    let per_level: Vec<usize> = (1..=5).map(|m| all.iter().filter(|g| g.edge_count() == m).count()).collect();
    assert_eq!(per_level, vec![2, 4, 11, 30, 95]);
}
