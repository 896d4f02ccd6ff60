use std::collections::BTreeMap;

use rand::Rng;

use crate::graph::{Multigraph, VertexId};

/// AHU string of a tree rooted at its centre; for two centres the smaller
/// of the two rootings. Equal iff the trees are isomorphic.
pub fn tree_code(t: &Multigraph) -> String {
    let n = t.vertex_count();
    if n <= 1 {
        return "()".repeat(n);
    }
    let mut degree: Vec<usize> = t.vertices().map(|v| t.degree(v)).collect();
    let mut layer: Vec<VertexId> = t.vertices().filter(|&v| degree[v] == 1).collect();
    let mut remaining = n;
    while remaining > 2 {
        remaining -= layer.len();
        let mut next = Vec::new();
        for &leaf in &layer {
            degree[leaf] = 0;
            for &u in t.neighbors(leaf) {
                if degree[u] > 0 {
                    degree[u] -= 1;
                    if degree[u] == 1 {
                        next.push(u);
                    }
                }
            }
        }
        layer = next;
    }
    layer
        .iter()
        .map(|&c| rooted_code(t, c, None))
        .min()
        .expect("a tree has a centre")
}

fn rooted_code(t: &Multigraph, v: VertexId, parent: Option<VertexId>) -> String {
    let mut children: Vec<String> = t
        .neighbors(v)
        .iter()
        .filter(|&&u| Some(u) != parent)
        .map(|&u| rooted_code(t, u, Some(v)))
        .collect();
    children.sort_unstable();
    format!("({})", children.concat())
}

/// Unlabelled trees on `n` vertices, one per isomorphism class, ordered by
/// their [`tree_code`].
pub fn enumerate_trees(n: usize) -> Vec<Multigraph> {
    if n == 0 {
        return Vec::new();
    }
    let mut level: BTreeMap<String, Multigraph> = BTreeMap::new();
    let single = Multigraph::edgeless(1);
    level.insert(tree_code(&single), single);
    for k in 2..=n {
        let mut next = BTreeMap::new();
        for t in level.values() {
            for v in 0..k - 1 {
                let mut edges: Vec<_> = t.edges().iter().map(|r| (r.u, r.v)).collect();
                edges.push((v, k - 1));
                let grown = Multigraph::new(k, edges).expect("new leaf is in range");
                next.entry(tree_code(&grown)).or_insert(grown);
            }
        }
        level = next;
    }
    level.into_values().collect()
}

/// Uniformly random labelled tree on `n` vertices from a random Prüfer
/// sequence.
pub fn random_tree<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Multigraph {
    if n <= 1 {
        return Multigraph::edgeless(n);
    }
    let seq: Vec<VertexId> = (0..n - 2).map(|_| rng.gen_range(0..n)).collect();
    let mut degree = vec![1usize; n];
    for &x in &seq {
        degree[x] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    for &x in &seq {
        let leaf = (0..n).find(|&v| degree[v] == 1).expect("a leaf remains");
        edges.push((leaf.min(x), leaf.max(x)));
        degree[leaf] -= 1;
        degree[x] -= 1;
    }
    let rest: Vec<VertexId> = (0..n).filter(|&v| degree[v] == 1).collect();
    edges.push((rest[0], rest[1]));
    Multigraph::new(n, edges).expect("Prüfer decoding stays in range")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{path, star};
    use rand::SeedableRng;

    #[test]
    fn tree_counts() {
        let counts: Vec<usize> = (1..=10).map(|n| enumerate_trees(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 1, 2, 3, 6, 11, 23, 47, 106]);
    }

    #[test]
    fn codes_separate_paths_and_stars() {
        assert_ne!(tree_code(&path(4)), tree_code(&star(3)));
        let relabelled = Multigraph::new(4, [(2, 0), (0, 3), (3, 1)]).unwrap();
        assert_eq!(tree_code(&path(4)), tree_code(&relabelled));
    }

    #[test]
    fn random_trees_are_trees() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(7);
        for n in 1..=14 {
            let t = random_tree(n, &mut rng);
            assert!(t.is_tree(), "{t:?}");
        }
    }
}
