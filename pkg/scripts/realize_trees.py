"""Which small trees are m-graphs? Exhaustive over unlabeled trees up to a size bound."""

import argparse

import networkx as nx

from mgraph.realization import realize_tree
from mgraph.trees import TreeSpec


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-vertices", type=int, default=12)
    args = ap.parse_args()
    for n in range(2, args.max_vertices + 1):
        found, total = [], 0
        for t in nx.nonisomorphic_trees(n):
            total += 1
            real = realize_tree(TreeSpec(n, tuple(sorted((min(e), max(e)) for e in t.edges()))))
            if real is not None:
                found.append(f"{real.spec} k={real.k}")
        print(f"n={n:3d}: {len(found)}/{total} realizable  {', '.join(found)}")


if __name__ == "__main__":
    main()
