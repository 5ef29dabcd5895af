"""Acceptance gate: one PASS/FAIL line per criterion, printed at the end of the run.

Lines are recorded before asserting, so a red criterion is still reported
with its measured value and then fails its test.
"""

import itertools
import random
import subprocess
import sys
import time

import networkx as nx
import pytest

from mgraph import closed_form as cf
from mgraph.config import worker_count
from mgraph.graph import analyze, bfs_distance, build_mgraph, diameter_bruteforce
from mgraph.groups import GroupSpec
from mgraph.isomorphism import ahu_encode, verify_graph_isomorphism
from mgraph.realization import construct_for_diameter, construct_tree1, construct_tree2
from mgraph.sweep import (
    cyclic_configurations,
    isomorphism_sweep,
    product_configurations,
    qualifying_cyclic_configurations,
    run_sweep,
)
from mgraph.trees import TreeSpec

from acceptance_log import record
from oracles import OEIS_TREE_COUNTS, adjacency, all_labeled_trees, brute_isomorphic, unlabeled_trees


def Z(n):
    return GroupSpec.cyclic(n)


def summarize(bad, limit=3):
    head = ", ".join(f"{r.group} m={r.m} predicted={r.predicted} oracle={r.oracle}" for r in bad[:limit])
    return f"{len(bad)} discrepancies" + (f" (e.g. {head})" if bad else "")


# --- 1. worked examples --------------------------------------------------------

def test_criterion_1_examples():
    start = time.perf_counter()
    ok = []

    a, b = analyze(build_mgraph(Z(4), 2)), analyze(build_mgraph(Z(6), 2))
    ok.append(record("1. 2-G(Z4) connected, 2-G(Z6) disconnected", a.connected and not b.connected,
                     f"connected={a.connected}/{b.connected}"))

    star = build_mgraph(Z(6), 24)
    is_star = nx.is_isomorphic(nx.Graph(list(star.edges())), nx.star_graph(5))
    ok.append(record("1. 24-G(Z6) is K_{1,5}", is_star, f"edges={list(star.edges())}"))

    spec = GroupSpec((2, 4))
    g = build_mgraph(spec, 2)
    d00, d02 = g.degree(spec.rank((0, 0))), g.degree(spec.rank((0, 2)))
    ok.append(record("1. 2-G(Z2 x Z4) deg(0,0) = 3", d00 == 3, f"measured {d00}"))
    ok.append(record("1. 2-G(Z2 x Z4) deg(0,2) = 4", d02 == 4,
                     f"measured {d02}; neighbours " + " ".join(g.label(v) for v in g.neighbors(spec.rank((0, 2))))))

    g = build_mgraph(Z(20), 10)
    path = [1, 10, 0, 2]
    walk = all(v in g.neighbors(u) for u, v in zip(path, path[1:]))
    diam, dist = diameter_bruteforce(g), bfs_distance(g, 1, 2)
    ok.append(record("1. 10-G(Z20) diameter 3, d(1,2) = 3 via 1-10-0-2", diam == 3 and dist == 3 and walk,
                     f"diameter={diam} d(1,2)={dist} path_valid={walk}"))

    ks = [72, 36, 24, 18, 12, 6]
    variants = cf.count_connected_variants(72)
    oracle = [diameter_bruteforce(build_mgraph(Z(72), k)) for k in ks]
    ok.append(record("1. Z72 family: 6 variants, diameters 2,3,4,4,4,5",
                     variants == 6 and oracle == [2, 3, 4, 4, 4, 5], f"variants={variants} diameters={oracle}"))

    for moduli, m, diam_want, ideg, high, count in [
        ((4, 8, 72), 6, 6, 23, 25, 95),
        ((8, 16), 2, 7, 3, 5, 31),
        ((4, 128), 4, 7, 15, 17, 31),
    ]:
        spec = GroupSpec(moduli)
        r = analyze(build_mgraph(spec, m))
        got = (r.diameter, build_mgraph(spec, m).degree(0), r.degree_census.get(high, 0))
        ok.append(record(f"1. {spec} m={m}: diameter {diam_want}, identity degree {ideg}, {count} of degree {high}",
                         got == (diam_want, ideg, count), f"measured {got}"))

    elapsed = time.perf_counter() - start
    ok.append(record("1. fixtures runtime < 10 s", elapsed < 10, f"{elapsed:.1f} s"))
    assert all(ok)


# --- 2. oracle sweeps ------------------------------------------------------------

@pytest.fixture(scope="module")
def sweeps():
    workers = worker_count()
    start = time.perf_counter()
    out = {
        "connectivity": run_sweep(cyclic_configurations(300, 300), workers=workers),
        "cyclic": run_sweep(qualifying_cyclic_configurations(2048), workers=workers),
        "products": run_sweep(product_configurations(1024, 64, connected_only=True), workers=workers),
    }
    out["elapsed"] = time.perf_counter() - start
    out["workers"] = workers
    return out


def test_criterion_2_connectivity(sweeps):
    res = sweeps["connectivity"]
    bad = res.discrepancies_for(["connected"])
    n = sum(1 for r in res.rows if r.quantity == "connected")
    assert record("2. connectivity closed form = BFS, cyclic n, m <= 300", n == 299 * 299 and not bad,
                  f"{n} graphs, " + summarize(bad))


def test_criterion_2_degrees(sweeps):
    fields = ["identity_degree", "vertex_degrees", "degree_census"]
    ok = []
    for key, label in [("cyclic", "cyclic n <= 2048"), ("products", "products order <= 1024, m <= 64")]:
        res = sweeps[key]
        bad = res.discrepancies_for(fields)
        ok.append(record(f"2. degrees and census, {label}", not bad,
                         f"{res.configurations} configurations, " + summarize(bad)))
    assert all(ok)


def test_criterion_2_tree_property(sweeps):
    fields = ["connected", "edge_count", "is_tree", "is_bipartite"]
    ok = []
    for key, label in [("cyclic", "cyclic n <= 2048"), ("products", "products order <= 1024")]:
        bad = sweeps[key].discrepancies_for(fields)
        ok.append(record(f"2. connected cases are bipartite trees with n-1 edges, {label}", not bad, summarize(bad)))
    assert all(ok)


def test_criterion_2_diameter_closed_form(sweeps):
    """The 2w, 2w-1, 2(w-1) trichotomy as stated. Red: it misses the merge case."""
    ok = []
    for key, label in [("cyclic", "cyclic n <= 2048"), ("products", "products order <= 1024")]:
        bad = sweeps[key].discrepancies_for(["diameter"])
        ok.append(record(f"2. diameter closed form = BFS, {label}", not bad, summarize(bad)))
    assert all(ok)


def test_criterion_2_diameter_restricted_and_corrected(sweeps):
    ok = []
    res = sweeps["cyclic"]
    cdim = [r for r in res.rows if r.quantity == "diameter_cdim"]
    bad = [r for r in cdim if not r.match]
    ok.append(record("2. CDIM diameter on its restricted domain, cyclic n <= 2048", cdim and not bad,
                     f"{len(cdim)} in domain, " + summarize(bad)))
    for key, label in [("cyclic", "cyclic n <= 2048"), ("products", "products order <= 1024")]:
        bad = sweeps[key].discrepancies_for(["diameter_corrected", "distance_to_zero"])
        ok.append(record(f"2. corrected diameter and distances to 0 = BFS, {label}", not bad, summarize(bad)))
    assert all(ok)


def test_criterion_2_all_sources_diameter():
    """The sweeps use a double sweep on trees; re-check with BFS from every vertex."""
    bad = []
    configs = qualifying_cyclic_configurations(256) + product_configurations(256, 32, connected_only=True)
    for spec, m in configs:
        g = build_mgraph(spec, m)
        full = diameter_bruteforce(g, method="all-sources")
        if full != diameter_bruteforce(g) or full != cf.predict_diameter(spec, m, corrected=True).value:
            bad.append((str(spec), m))
    assert record("2. all-sources BFS diameter = double sweep = corrected form, orders <= 256", not bad,
                  f"{len(configs)} configurations, {len(bad)} mismatches {bad[:3]}")


def test_criterion_2_runtime(sweeps):
    assert record("2. sweep runtime < 10 min", sweeps["elapsed"] < 600,
                  f"{sweeps['elapsed']:.0f} s with {sweeps['workers']} worker(s)")


@pytest.fixture(scope="module")
def iso_checks():
    return isomorphism_sweep(512, 512, 512)


def test_criterion_2_isomorphism_leaf_map(iso_checks):
    """The leaf-fixing construction as stated. Red: not always injective or edge-preserving."""
    ok = []
    for cyclic, label in [(True, "cyclic n, m <= 512"), (False, "products order <= 512")]:
        rows = [c for c in iso_checks if (" x " not in c.group) == cyclic]
        bad = [c for c in rows if not c.leaf_map_ok]
        eg = ", ".join(f"{c.group} m={c.m}" for c in bad[:3])
        ok.append(record(f"2. leaf-fixing bijection preserves edges, {label}", not bad,
                         f"{len(rows)} cases, {len(bad)} failures" + (f" (e.g. {eg})" if bad else "")))
    assert all(ok)


def test_criterion_2_isomorphism_repaired(iso_checks):
    ok = []
    for cyclic, label in [(True, "cyclic n, m <= 512"), (False, "products order <= 512")]:
        rows = [c for c in iso_checks if (" x " not in c.group) == cyclic]
        bad = [c for c in rows if not c.repaired_ok]
        ok.append(record(f"2. tree-guided bijection preserves edges, {label}", rows and not bad,
                         f"{len(rows)} cases, {len(bad)} failures"))
    assert all(ok)


# --- 3. realization round trips --------------------------------------------------

def test_criterion_3_realizations():
    start = time.perf_counter()
    ok = []
    bad = []
    for d in range(1, 7):
        tree, real = construct_tree1(d)
        g = real.graph()
        if not (ahu_encode(tree) == ahu_encode(g) and verify_graph_isomorphism(tree, g, real.witness_bijection)
                and diameter_bruteforce(g) == (2 if d == 1 else 4)):
            bad.append(("tree1", d))
    for k in (4, 6, 8):
        tree, real = construct_tree2(k)
        g = real.graph()
        if not (ahu_encode(tree) == ahu_encode(g) and verify_graph_isomorphism(tree, g, real.witness_bijection)
                and diameter_bruteforce(g) == 5):
            bad.append(("tree2", k))
    ok.append(record("3. tree1 d <= 6 and tree2 k in {4,6,8}: codes, witnesses, diameters", not bad, f"failures {bad}"))

    sizes, wrong = [], []
    for d in range(1, 10):
        spec, m = construct_for_diameter(d)
        sizes.append(spec.order)
        if diameter_bruteforce(build_mgraph(spec, m), method="all-sources") != d:
            wrong.append(d)
    ok.append(record("3. construct_for_diameter verified by BFS, d <= 9", not wrong and max(sizes) == 2592,
                     f"largest {max(sizes)} vertices, failures {wrong}"))
    elapsed = time.perf_counter() - start
    ok.append(record("3. realization runtime < 30 s", elapsed < 30, f"{elapsed:.1f} s"))
    assert all(ok)


# --- 4. canonical codes against brute force ---------------------------------------

def test_criterion_4_ahu_against_brute_force():
    start = time.perf_counter()
    rnd = random.Random(20240601)
    mismatches = 0
    pairs = 0
    # labeled trees up to 7 vertices: every pair of the classes they fall into
    class_counts = {}
    for n in range(1, 8):
        reps = {}
        for edges in all_labeled_trees(n):
            code = ahu_encode(TreeSpec(n, tuple(edges))).code
            reps.setdefault(code, edges)
        class_counts[n] = len(reps)
        sample = list(reps.values())
        for a, b in itertools.combinations_with_replacement(sample, 2):
            pairs += 1
            same = ahu_encode(TreeSpec(n, tuple(a))).code == ahu_encode(TreeSpec(n, tuple(b))).code
            mismatches += same != brute_isomorphic(adjacency(n, a), adjacency(n, b))
    # 8 and 9 vertices: every pair of unlabeled trees, each under a random relabeling
    for n in (8, 9):
        trees = unlabeled_trees(n)
        relabeled = []
        for edges in trees:
            perm = list(range(n))
            rnd.shuffle(perm)
            relabeled.append([(perm[u], perm[v]) for u, v in edges])
        codes = {ahu_encode(TreeSpec(n, tuple(e))).code for e in relabeled}
        class_counts[n] = len(codes)
        for a, b in itertools.product(trees, relabeled):
            pairs += 1
            same = ahu_encode(TreeSpec(n, tuple(a))).code == ahu_encode(TreeSpec(n, tuple(b))).code
            mismatches += same != brute_isomorphic(adjacency(n, a), adjacency(n, b))
    counts_ok = all(class_counts[n] == OEIS_TREE_COUNTS[n] for n in range(1, 10))
    elapsed = time.perf_counter() - start
    ok = [
        record("4. AHU code equality = brute-force isomorphism, trees <= 9 vertices", mismatches == 0 and counts_ok,
               f"{pairs} pairs, {mismatches} mismatches, class counts {[class_counts[n] for n in range(1, 10)]}"),
        record("4. AHU runtime < 60 s", elapsed < 60, f"{elapsed:.1f} s"),
    ]
    assert all(ok)


# --- 5. determinism -------------------------------------------------------------

@pytest.mark.parametrize("argv", [
    ["analyze", "--group", "Z4 x Z8 x Z72", "--m", "6"],
    ["export-dot", "--group", "Z72", "--m", "6"],
    ["sweep", "--cyclic", "--products", "--max-n", "72", "--max-order", "64", "--max-m", "16"],
])
def test_criterion_5_determinism(argv):
    runs = [subprocess.run([sys.executable, "-m", "mgraph.cli", *argv], capture_output=True) for _ in range(2)]
    same = runs[0].stdout == runs[1].stdout and runs[0].stderr == runs[1].stderr
    assert record(f"5. byte-identical output: {argv[0]}", same and bool(runs[0].stdout),
                  f"exit {runs[0].returncode}, {len(runs[0].stdout)} bytes")
