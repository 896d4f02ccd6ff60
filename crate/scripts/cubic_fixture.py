"""Write all connected cubic graphs on 4, 6, 8 and 10 vertices in graph6,
one per line, collected by sampling random regular graphs until the known
class counts are reached."""

import random
import sys

import networkx as nx

EXPECTED = {4: 1, 6: 2, 8: 5, 10: 19}


def classes(n, want, rng):
    found = []
    attempts = 0
    while len(found) < want:
        attempts += 1
        if attempts > 2_000_000:
            raise SystemExit(f"gave up on n={n} with {len(found)} classes")
        g = nx.random_regular_graph(3, n, seed=rng.randrange(2**32))
        if not nx.is_connected(g):
            continue
        if any(nx.is_isomorphic(g, h) for h in found):
            continue
        found.append(nx.convert_node_labels_to_integers(g))
    return found


def main(path):
    rng = random.Random(20240601)
    lines = []
    for n, want in EXPECTED.items():
        graphs = classes(n, want, rng)
        codes = sorted(nx.to_graph6_bytes(g, header=False).decode().strip() for g in graphs)
        lines.extend(codes)
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")
    print(f"wrote {len(lines)} graphs to {path}")


if __name__ == "__main__":
    main(sys.argv[1])
