"""Write the bundled graph6 catalog of random 3-connected simple graphs.

networkx does both the sampling and the connectivity filter, so the catalog
is independent of the toolkit's own 3-connectivity test.
"""
import argparse
import random

import networkx as nx


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--out", default="src/detpairs/data/catalog3c.g6")
    ap.add_argument("--count", type=int, default=1200)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    rng = random.Random(args.seed)
    seen, lines = set(), []
    while len(lines) < args.count:
        n = rng.randint(5, 10)
        lo, hi = max(3 * n // 2 + n % 2, 9), min(n * (n - 1) // 2, 20)
        if lo > hi:
            continue
        g = nx.gnm_random_graph(n, rng.randint(lo, hi), seed=rng.randrange(2**32))
        if nx.node_connectivity(g) < 3:
            continue
        line = nx.to_graph6_bytes(g, header=False).decode().strip()
        if line not in seen:
            seen.add(line)
            lines.append(line)
    with open(args.out, "w") as fh:
        fh.write("\n".join(lines) + "\n")


if __name__ == "__main__":
    main()
