//! Randomised invariants.

mod common;

use dpdp_core::catalog::{canonical_form, read_edge_list, read_graph6, write_edge_list, write_graph6};
use dpdp_core::domination::{find_dp_pair, is_dp_pair};
use dpdp_core::subdivision::{build_s2, invert_s2, Alpha};
use dpdp_core::{is_dpdp, Multigraph};
use proptest::prelude::*;

fn simple_graph(max_n: usize) -> impl Strategy<Value = Multigraph> {
    (1..=max_n).prop_flat_map(|n| {
        let pairs = n * (n - 1) / 2;
        proptest::collection::vec(any::<bool>(), pairs).prop_map(move |bits| {
            let mut edges = Vec::new();
            let mut k = 0;
            for j in 1..n {
                for i in 0..j {
                    if bits[k] {
                        edges.push((i, j));
                    }
                    k += 1;
                }
            }
            Multigraph::new(n, edges).unwrap()
        })
    })
}

fn multigraph(max_n: usize, max_m: usize) -> impl Strategy<Value = Multigraph> {
    (1..=max_n).prop_flat_map(move |n| {
        proptest::collection::vec((0..n, 0..n), 0..=max_m).prop_map(move |edges| Multigraph::new(n, edges).unwrap())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn handshake(g in multigraph(8, 14)) {
        let total: usize = g.vertices().map(|v| g.degree(v)).sum();
        prop_assert_eq!(total, 2 * g.edge_count());
    }

    #[test]
    fn adding_an_edge_preserves_dpdp(g in simple_graph(10), u in 0usize..10, v in 0usize..10) {
        let n = g.vertex_count();
        let (u, v) = (u % n, v % n);
        if is_dpdp(&g) {
            prop_assert!(is_dpdp(&g.with_edge(u, v).unwrap()));
        }
    }

    #[test]
    fn found_pairs_verify_and_match_oracle(g in multigraph(11, 16)) {
        let found = find_dp_pair(&g);
        if let Some(pair) = &found {
            prop_assert!(is_dp_pair(&g, pair));
        }
        prop_assert_eq!(found.is_some(), common::is_dpdp(&g));
    }

    #[test]
    fn graph6_round_trip(g in simple_graph(20)) {
        let text = write_graph6(&g).unwrap();
        prop_assert!(read_graph6(&text).unwrap().same_edges_as(&g));
    }

    #[test]
    fn edge_list_round_trip(g in multigraph(9, 15)) {
        prop_assert_eq!(read_edge_list(&write_edge_list(&g)).unwrap(), g);
    }

    #[test]
    fn canonical_form_ignores_labels(g in multigraph(7, 10), seed in any::<u64>()) {
        let n = g.vertex_count();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut s = seed;
        for i in (1..n).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            perm.swap(i, (s >> 33) as usize % (i + 1));
        }
        let relabelled = Multigraph::new(n, g.edges().iter().map(|r| (perm[r.v], perm[r.u]))).unwrap();
        prop_assert_eq!(canonical_form(&g).code, canonical_form(&relabelled).code);
    }

    #[test]
    fn s2_size_and_inversion(h in multigraph(5, 6), extra in proptest::collection::vec(1usize..4, 5)) {
        prop_assume!(!h.has_isolated_vertex());
        let leaves = h.leaves();
        let alpha: Alpha = leaves.iter().map(|v| (v, extra[v])).collect();
        let (g, lab) = build_s2(&h, &alpha).unwrap();
        let copies: usize = leaves.iter().map(|v| alpha[&v]).sum();
        prop_assert_eq!(g.vertex_count(), h.vertex_count() - leaves.len() + copies + 2 * h.edge_count());
        prop_assert!(lab.new_vertices().iter().all(|v| g.degree(v) >= 2));
        let back = invert_s2(&g).expect("2-subdivision graphs are recognised");
        prop_assert_eq!(build_s2(&back.base, &back.alpha).unwrap().0, g);
    }
}
