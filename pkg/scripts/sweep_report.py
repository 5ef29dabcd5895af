"""Closed forms against the BFS oracle over a range; per-quantity table and sample discrepancies."""

import argparse
import collections
import time

from mgraph.config import worker_count
from mgraph.sweep import product_configurations, qualifying_cyclic_configurations, run_sweep


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-n", type=int, default=2048)
    ap.add_argument("--max-order", type=int, default=1024)
    ap.add_argument("--max-m", type=int, default=64, help="multiplier bound for products")
    ap.add_argument("--csv", help="write every comparison row here")
    ap.add_argument("--show", type=int, default=10, help="discrepancies to print per quantity")
    args = ap.parse_args()

    configs = qualifying_cyclic_configurations(args.max_n)
    configs += product_configurations(args.max_order, args.max_m, connected_only=True)
    start = time.perf_counter()
    result = run_sweep(configs, workers=worker_count())
    print(f"{len(configs)} configurations in {time.perf_counter() - start:.1f} s")
    for quantity, slot in result.summary()["per_quantity"].items():
        print(f"  {quantity:20s} compared {slot['compared']:7d}  discrepancies {slot['discrepancies']}")
    by_quantity = collections.defaultdict(list)
    for r in result.discrepancies:
        by_quantity[r.quantity].append(r)
    for quantity, rows in by_quantity.items():
        print(f"\n{quantity}: {len(rows)}")
        for r in rows[:args.show]:
            print(f"  {r.group} m={r.m} k={r.k} predicted={r.predicted} oracle={r.oracle} {r.case_label}")
    if args.csv:
        with open(args.csv, "w") as fh:
            fh.write(result.to_csv())


if __name__ == "__main__":
    main()
