"""Brute-force m-graph construction and exact graph measurements.

Nothing here uses a closed form: the graph is built from the map
``a -> m*a`` and every reported quantity is measured directly.
"""

from __future__ import annotations

import json
import math
from collections import Counter, deque
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import cached_property
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from .config import DEFAULT_VERTEX_LIMIT
from .errors import InvalidArgumentError, ResourceLimitError
from .groups import GroupSpec

INFINITE = math.inf


@dataclass(frozen=True, eq=False)
class MGraph:
    """Simple undirected graph whose edges are ``{v, image[v]}``, ``image[v] != v``.

    ``multiplier`` is ``None`` for graphs built from a componentwise map
    (the product graph); ``scalars`` then records the per-factor multipliers.
    """

    spec: GroupSpec
    multiplier: Optional[int]
    image: np.ndarray
    indptr: np.ndarray
    indices: np.ndarray
    edge_keys: np.ndarray  # sorted lo*n + hi for every edge lo < hi
    scalars: Tuple[int, ...] = ()

    @property
    def vertex_count(self) -> int:
        return int(self.image.shape[0])

    @property
    def edge_count(self) -> int:
        return int(self.edge_keys.shape[0])

    @cached_property
    def adjacency_lists(self) -> List[List[int]]:
        ptr = self.indptr.tolist()
        idx = self.indices.tolist()
        return [idx[ptr[v]:ptr[v + 1]] for v in range(self.vertex_count)]

    @property
    def adjacency(self) -> Dict[int, List[int]]:
        return dict(enumerate(self.adjacency_lists))

    def neighbors(self, v: int) -> List[int]:
        return self.adjacency_lists[v]

    @cached_property
    def degrees(self) -> np.ndarray:
        return np.diff(self.indptr)

    def degree(self, v: int) -> int:
        return int(self.degrees[v])

    def edges(self) -> Iterator[Tuple[int, int]]:
        n = self.vertex_count
        for key in self.edge_keys.tolist():
            yield divmod(key, n)

    def label(self, v: int) -> str:
        return self.spec.label(v)

    @property
    def name(self) -> str:
        if self.multiplier is not None:
            return f"{self.multiplier}-G({self.spec})"
        return f"({','.join(map(str, self.scalars))})-PG({self.spec})"


def _check_size(spec: GroupSpec, limit: Optional[int]) -> None:
    limit = DEFAULT_VERTEX_LIMIT if limit is None else limit
    if spec.order > limit:
        raise ResourceLimitError(f"{spec} has {spec.order} vertices, limit is {limit}")


def graph_from_image(spec: GroupSpec, image: np.ndarray, multiplier=None, scalars=()) -> MGraph:
    """Undirected shadow of the functional graph ``v -> image[v]``."""
    n = spec.order
    image = np.asarray(image, dtype=np.int64)
    src = np.arange(n, dtype=np.int64)
    moved = src != image
    lo = np.minimum(src[moved], image[moved])
    hi = np.maximum(src[moved], image[moved])
    keys = np.unique(lo * n + hi)  # a <-> m*a twice over collapses here
    lo, hi = np.divmod(keys, n)
    a = np.concatenate([lo, hi])
    b = np.concatenate([hi, lo])
    order = np.lexsort((b, a))
    a, b = a[order], b[order]
    indptr = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(np.bincount(a, minlength=n), out=indptr[1:])
    for arr in (image, indptr, b, keys):
        arr.setflags(write=False)
    return MGraph(spec, multiplier, image, indptr, b, keys, tuple(scalars))


def scaled_image(spec: GroupSpec, scalars: Sequence[int]) -> np.ndarray:
    """Rank of ``(t_1*r_1, ..., t_i*r_i)`` for every vertex."""
    table = spec.residue_table()
    mods = np.array(spec.moduli, dtype=np.int64)
    t = np.array([s % m for s, m in zip(scalars, spec.moduli)], dtype=np.int64)
    return spec.ranks_of((table * t) % mods)


def build_mgraph(spec: GroupSpec, m: int, limit_vertices: Optional[int] = None) -> MGraph:
    """The m-graph: ``a ~ b`` iff ``a != b`` and ``m*a = b`` or ``m*b = a``."""
    if m <= 1:
        raise InvalidArgumentError(f"multiplier must exceed 1, got {m}")
    _check_size(spec, limit_vertices)
    image = scaled_image(spec, [m] * spec.rank_count)
    return graph_from_image(spec, image, multiplier=m)


# ---------------------------------------------------------------------------
# traversal
# ---------------------------------------------------------------------------

def bfs_distances(g: MGraph, source: int) -> List[int]:
    """Hop counts from ``source``; ``-1`` marks unreachable vertices."""
    adj = g.adjacency_lists
    dist = [-1] * g.vertex_count
    dist[source] = 0
    queue = deque([source])
    while queue:
        u = queue.popleft()
        du = dist[u] + 1
        for v in adj[u]:
            if dist[v] < 0:
                dist[v] = du
                queue.append(v)
    return dist


def bfs_distance(g: MGraph, a: int, b: int):
    """Shortest-path length between vertex ranks ``a`` and ``b`` (``inf`` if none)."""
    n = g.vertex_count
    if not (0 <= a < n and 0 <= b < n):
        raise InvalidArgumentError("vertex outside the graph")
    d = bfs_distances(g, a)[b]
    return INFINITE if d < 0 else d


def component_labels(g: MGraph) -> Tuple[List[int], int]:
    adj = g.adjacency_lists
    label = [-1] * g.vertex_count
    count = 0
    for s in range(g.vertex_count):
        if label[s] >= 0:
            continue
        label[s] = count
        stack = [s]
        while stack:
            u = stack.pop()
            for v in adj[u]:
                if label[v] < 0:
                    label[v] = count
                    stack.append(v)
        count += 1
    return label, count


def is_bipartite(g: MGraph) -> bool:
    adj = g.adjacency_lists
    colour = [-1] * g.vertex_count
    for s in range(g.vertex_count):
        if colour[s] >= 0:
            continue
        colour[s] = 0
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for v in adj[u]:
                if colour[v] < 0:
                    colour[v] = 1 - colour[u]
                    queue.append(v)
                elif colour[v] == colour[u]:
                    return False
    return True


def _eccentricity(g: MGraph, source: int) -> int:
    return max(bfs_distances(g, source))


def diameter_bruteforce(g: MGraph, method: str = "auto", workers: int = 1):
    """Exact diameter, ``inf`` for a disconnected graph.

    ``method="all-sources"`` runs BFS from every vertex.  ``"auto"`` does the
    same unless the graph is a tree, where two BFS sweeps are exact: the
    farthest vertex from any start is an end of a longest path.
    """
    if method not in ("auto", "all-sources"):
        raise InvalidArgumentError(f"unknown diameter method {method!r}")
    n = g.vertex_count
    _, count = component_labels(g)
    if count > 1:
        return INFINITE
    if n == 1:
        return 0
    if method == "auto" and g.edge_count == n - 1:
        first = bfs_distances(g, 0)
        far = max(range(n), key=first.__getitem__)
        return max(bfs_distances(g, far))
    if workers <= 1:
        return max(_eccentricity(g, s) for s in range(n))
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return max(pool.map(lambda s: _eccentricity(g, s), range(n), chunksize=64))


# ---------------------------------------------------------------------------
# reports and export
# ---------------------------------------------------------------------------

def _json_distance(d):
    return "infinite" if d == INFINITE else int(d)


@dataclass(frozen=True)
class GraphReport:
    vertex_count: int
    edge_count: int
    connected: bool
    component_count: int
    is_tree: bool
    is_bipartite: bool
    diameter: object  # int or INFINITE
    degree_census: Dict[int, int]

    def to_dict(self) -> dict:
        return {
            "vertex_count": self.vertex_count,
            "edge_count": self.edge_count,
            "connected": self.connected,
            "component_count": self.component_count,
            "is_tree": self.is_tree,
            "is_bipartite": self.is_bipartite,
            "diameter": _json_distance(self.diameter),
            "degree_census": {str(d): c for d, c in sorted(self.degree_census.items())},
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


def degree_census(g: MGraph) -> Dict[int, int]:
    counts = Counter(g.degrees.tolist())
    return dict(sorted(counts.items()))


def analyze(g: MGraph) -> GraphReport:
    _, count = component_labels(g)
    n = g.vertex_count
    connected = count == 1
    # a forest has exactly n - (#components) edges
    acyclic = g.edge_count == n - count
    return GraphReport(
        vertex_count=n,
        edge_count=g.edge_count,
        connected=connected,
        component_count=count,
        is_tree=connected and acyclic,
        is_bipartite=is_bipartite(g),
        diameter=diameter_bruteforce(g),
        degree_census=degree_census(g),
    )


def export_dot(g: MGraph) -> str:
    """Byte-deterministic DOT text; vertices are ranks, labels are residues."""
    lines = [f'graph "{g.name}" {{']
    for v in range(g.vertex_count):
        lines.append(f'  {v} [label="{g.label(v)}"];')
    for u, v in g.edges():
        lines.append(f"  {u} -- {v};")
    lines.append("}")
    return "\n".join(lines) + "\n"
