"""How often the leaf-fixing bijection fails, and whether the tree-guided one always succeeds."""

import argparse

from mgraph.isomorphism import check_leaf_fixing_map
from mgraph.sweep import isomorphism_sweep


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-n", type=int, default=512)
    ap.add_argument("--max-m", type=int, default=512)
    ap.add_argument("--max-order", type=int, default=512)
    ap.add_argument("--show", type=int, default=15)
    args = ap.parse_args()

    checks = isomorphism_sweep(args.max_n, args.max_m, args.max_order)
    for cyclic in (True, False):
        rows = [c for c in checks if (" x " not in c.group) == cyclic]
        bad = [c for c in rows if not c.leaf_map_ok]
        print(f"{'cyclic' if cyclic else 'products'}: {len(rows)} cases, leaf map fails {len(bad)}, "
              f"tree-guided fails {sum(not c.repaired_ok for c in rows)}")

    print("\nfirst cyclic failures (distinct residues):")
    seen = set()
    for c in checks:
        if " x " in c.group or c.leaf_map_ok:
            continue
        n = int(c.group[1:])
        if (n, c.m % n) in seen:
            continue
        seen.add((n, c.m % n))
        chk = check_leaf_fixing_map(n, c.m)
        kind = "not injective" if not chk.bijective else "not edge-preserving"
        print(f"  Z{n} m={c.m}: {kind}, collisions {chk.collisions[:2]}")
        if len(seen) >= args.show:
            break


if __name__ == "__main__":
    main()
