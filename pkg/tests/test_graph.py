import json
import math

import networkx as nx
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mgraph.closed_form import predict_connected
from mgraph.errors import InvalidArgumentError, ResourceLimitError
from mgraph.graph import (
    INFINITE,
    analyze,
    bfs_distance,
    build_mgraph,
    component_labels,
    diameter_bruteforce,
    export_dot,
)
from mgraph.groups import GroupSpec

from oracles import naive_edges, naive_graph, nx_diameter

small_groups = st.lists(st.integers(2, 10), min_size=1, max_size=3).filter(lambda ms: math.prod(ms) <= 300)
multipliers = st.integers(2, 200)


def Z(n):
    return GroupSpec.cyclic(n)


# --- examples -------------------------------------------------------------

def test_z4_m2_edges():
    assert list(build_mgraph(Z(4), 2).edges()) == [(0, 2), (1, 2), (2, 3)]


def test_z6_m2_is_disconnected():
    report = analyze(build_mgraph(Z(6), 2))
    assert not report.connected and report.component_count >= 2
    assert report.diameter == INFINITE


def test_z3_m4_is_edgeless():
    g = build_mgraph(Z(3), 4)
    assert g.edge_count == 0 and list(g.edges()) == []


def test_bfs_distance_examples():
    g = build_mgraph(Z(20), 10)
    assert bfs_distance(g, 1, 2) == 3
    assert bfs_distance(g, 7, 7) == 0
    z6 = build_mgraph(Z(6), 2)
    # components are {0, 3} and {1, 2, 4, 5}; 1 and 2 are adjacent since 2*1 = 2
    assert bfs_distance(z6, 2, 1) == 1
    assert bfs_distance(z6, 1, 3) == INFINITE


def test_e4_path_is_a_shortest_path():
    g = build_mgraph(Z(20), 10)
    path = [1, 10, 0, 2]
    assert all(b in g.neighbors(a) for a, b in zip(path, path[1:]))
    assert bfs_distance(g, 1, 2) == len(path) - 1


def test_diameter_examples():
    assert diameter_bruteforce(build_mgraph(Z(72), 6)) == 5
    assert diameter_bruteforce(build_mgraph(Z(2), 2)) == 1


def test_z48_m6_diameter_is_six():
    # an example list gives 7 here; BFS and networkx both give 6
    g = build_mgraph(Z(48), 6)
    assert diameter_bruteforce(g) == 6
    assert diameter_bruteforce(g, method="all-sources") == 6
    assert nx.diameter(naive_graph((48,), 6)) == 6


def test_analyze_examples():
    r = analyze(build_mgraph(Z(4), 2))
    assert (r.connected, r.is_tree, r.is_bipartite, r.diameter) == (True, True, True, 2)
    assert r.degree_census == {1: 3, 3: 1}

    star = analyze(build_mgraph(Z(6), 24))
    assert star.is_tree and star.degree_census == {1: 5, 5: 1} and star.diameter == 2

    spec = GroupSpec((2, 4))
    g = build_mgraph(spec, 2)
    assert g.degree(spec.rank((0, 0))) == 3
    # the neighbours of (0,2) are (0,0), (0,1), (0,3), (1,1), (1,3)
    assert g.degree(spec.rank((0, 2))) == 5
    assert sorted(g.label(v) for v in g.neighbors(spec.rank((0, 2)))) == ["(0,0)", "(0,1)", "(0,3)", "(1,1)", "(1,3)"]


def test_export_dot_examples():
    assert "  0 -- 1;" in export_dot(build_mgraph(Z(2), 2)).splitlines()
    lines = export_dot(build_mgraph(Z(4), 2)).splitlines()
    assert [ln for ln in lines if "--" in ln] == ["  0 -- 2;", "  1 -- 2;", "  2 -- 3;"]
    z3 = export_dot(build_mgraph(Z(3), 4))
    assert "--" not in z3 and z3.count("[label=") == 3


def test_export_dot_product_labels():
    text = export_dot(build_mgraph(GroupSpec((2, 4)), 2))
    assert text.startswith('graph "2-G(Z2 x Z4)" {\n')
    assert '  2 [label="(0,2)"];' in text
    assert text.endswith("}\n")


def test_report_json_is_stable():
    r = analyze(build_mgraph(Z(6), 2))
    doc = json.loads(r.to_json())
    assert list(doc) == ["vertex_count", "edge_count", "connected", "component_count", "is_tree",
                         "is_bipartite", "diameter", "degree_census"]
    assert doc["diameter"] == "infinite"
    assert r.to_json() == analyze(build_mgraph(Z(6), 2)).to_json()


def test_errors():
    with pytest.raises(InvalidArgumentError):
        build_mgraph(Z(4), 1)
    with pytest.raises(ResourceLimitError):
        build_mgraph(Z(100), 2, limit_vertices=50)
    with pytest.raises(ResourceLimitError):
        build_mgraph(GroupSpec((1 << 12, 1 << 11)), 2)


# --- properties -----------------------------------------------------------

@settings(max_examples=200, deadline=None)
@given(small_groups, multipliers)
def test_edges_match_naive_construction(moduli, m):
    g = build_mgraph(GroupSpec(tuple(moduli)), m)
    assert set(g.edges()) == naive_edges(moduli, [m] * len(moduli))
    for v in range(g.vertex_count):
        nbrs = g.neighbors(v)
        assert v not in nbrs and list(nbrs) == sorted(set(nbrs))
        assert all(v in g.neighbors(u) for u in nbrs)


@settings(max_examples=200, deadline=None)
@given(small_groups, multipliers)
def test_handshake_and_functional_graph_bound(moduli, m):
    g = build_mgraph(GroupSpec(tuple(moduli)), m)
    assert int(g.degrees.sum()) == 2 * g.edge_count
    assert g.edge_count <= g.vertex_count
    labels, count = component_labels(g)
    labels = np.asarray(labels)
    for c in range(count):
        members = np.flatnonzero(labels == c)
        inside = sum(1 for u, v in g.edges() if labels[u] == c)
        # one out-edge per vertex at most, so at most one cycle per component
        assert inside <= len(members)


@settings(max_examples=200, deadline=None)
@given(small_groups, multipliers)
def test_report_matches_networkx(moduli, m):
    g = build_mgraph(GroupSpec(tuple(moduli)), m)
    ref = naive_graph(moduli, m)
    r = analyze(g)
    assert r.connected == nx.is_connected(ref)
    assert r.component_count == nx.number_connected_components(ref)
    assert r.is_tree == nx.is_tree(ref)
    assert r.is_bipartite == nx.is_bipartite(ref)
    assert r.diameter == nx_diameter(ref)
    assert r.is_tree <= r.connected
    if r.is_tree:
        assert r.edge_count == r.vertex_count - 1
    assert (r.diameter == INFINITE) == (not r.connected)


@settings(max_examples=100, deadline=None)
@given(small_groups, multipliers, st.integers(1, 4))
def test_diameter_methods_agree(moduli, m, workers):
    g = build_mgraph(GroupSpec(tuple(moduli)), m)
    full = diameter_bruteforce(g, method="all-sources", workers=workers)
    assert diameter_bruteforce(g) == full == diameter_bruteforce(g, method="all-sources")


@settings(max_examples=150, deadline=None)
@given(st.lists(st.integers(2, 64), min_size=1, max_size=3).filter(lambda ms: math.prod(ms) <= 4096), multipliers)
def test_connected_graphs_are_bipartite_trees(moduli, m):
    spec = GroupSpec(tuple(moduli))
    g = build_mgraph(spec, m)
    r = analyze(g)
    assert r.connected == predict_connected(spec, m)
    if r.connected:
        assert r.is_tree and r.is_bipartite and r.edge_count == spec.order - 1


@settings(max_examples=150, deadline=None)
@given(small_groups, multipliers)
def test_edges_depend_on_m_mod_exponent(moduli, m):
    spec = GroupSpec(tuple(moduli))
    a = list(build_mgraph(spec, m).edges())
    b = list(build_mgraph(spec, m + spec.exponent).edges())
    assert a == b


def test_analyze_and_dot_are_deterministic():
    spec = GroupSpec((4, 8, 9))
    assert analyze(build_mgraph(spec, 6)).to_json() == analyze(build_mgraph(spec, 6)).to_json()
    assert export_dot(build_mgraph(spec, 6)) == export_dot(build_mgraph(spec, 6))
