"""Print the small worked examples: connectivity, degrees, distances and diameters."""

import argparse

from mgraph import closed_form as cf
from mgraph.graph import analyze, bfs_distance, build_mgraph
from mgraph.groups import GroupSpec

CASES = [
    ("Z4", 2), ("Z6", 2), ("Z6", 24), ("Z2 x Z4", 2), ("Z20", 10),
    ("Z4 x Z8 x Z72", 6), ("Z8 x Z16", 2), ("Z4 x Z128", 4),
]


def describe(group: str, m: int) -> str:
    spec = GroupSpec.parse(group)
    r = analyze(build_mgraph(spec, m))
    line = f"{m}-G({spec}): connected={r.connected} diameter={r.diameter} census={r.degree_census}"
    if r.connected:
        p = cf.predict_diameter(spec, m)
        c = cf.predict_diameter(spec, m, corrected=True)
        line += f" | closed form {p.value} ({p.case_label.value}), corrected {c.value} ({c.case_label.value})"
    return line


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--extra", nargs=2, action="append", metavar=("GROUP", "M"), default=[],
                    help="additional (group, m) pairs")
    args = ap.parse_args()
    for group, m in CASES + [(g, int(m)) for g, m in args.extra]:
        print(describe(group, m))
    g = build_mgraph(GroupSpec.cyclic(20), 10)
    print("d(1,2) in 10-G(Z20):", bfs_distance(g, 1, 2))


if __name__ == "__main__":
    main()
