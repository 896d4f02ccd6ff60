"""Count connected multigraphs (loops and parallel edges allowed, no isolated
vertices) with exactly k edges, up to isomorphism, by brute force."""

import itertools
import sys

import networkx as nx


def count(k):
    seen = set()
    for n in range(1, k + 2):
        pairs = [(i, j) for i in range(n) for j in range(i, n)]
        perms = list(itertools.permutations(range(n)))
        for edges in itertools.combinations_with_replacement(pairs, k):
            if {v for e in edges for v in e} != set(range(n)):
                continue
            g = nx.MultiGraph()
            g.add_nodes_from(range(n))
            g.add_edges_from(edges)
            if not nx.is_connected(g):
                continue
            key = min(
                tuple(sorted(tuple(sorted((p[u], p[v]))) for u, v in edges))
                for p in perms
            )
            seen.add((n, key))
    return len(seen)


if __name__ == "__main__":
    top = int(sys.argv[1]) if len(sys.argv) > 1 else 5
    counts = [count(k) for k in range(1, top + 1)]
    print("per edge count:", counts)
    print("cumulative:", list(itertools.accumulate(counts)))
