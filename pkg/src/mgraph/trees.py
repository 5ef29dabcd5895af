"""Abstract trees, rooted-subtree interning and tree-to-tree vertex matching."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import InvalidArgumentError


@dataclass(frozen=True)
class TreeSpec:
    """Unlabelled tree on vertices ``0..vertex_count-1``."""

    vertex_count: int
    edges: Tuple[Tuple[int, int], ...]

    def __post_init__(self):
        n = self.vertex_count
        edges = tuple(sorted((min(u, v), max(u, v)) for u, v in self.edges))
        object.__setattr__(self, "edges", edges)
        if n < 1:
            raise InvalidArgumentError("a tree needs at least one vertex")
        if len(edges) != n - 1:
            raise InvalidArgumentError(f"{len(edges)} edges for {n} vertices is not a tree")
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n) or u == v:
                raise InvalidArgumentError(f"bad edge ({u}, {v})")
        if len(set(edges)) != len(edges):
            raise InvalidArgumentError("duplicate edge")
        seen = bfs_order(self.adjacency(), 0)
        if len(seen) != n:
            raise InvalidArgumentError("edge list is disconnected")

    @classmethod
    def from_adjacency(cls, adj: Sequence[Sequence[int]]) -> "TreeSpec":
        edges = [(u, v) for u, nbrs in enumerate(adj) for v in nbrs if u < v]
        return cls(len(adj), tuple(edges))

    @classmethod
    def path(cls, n: int) -> "TreeSpec":
        return cls(n, tuple((i, i + 1) for i in range(n - 1)))

    @classmethod
    def star(cls, leaves: int) -> "TreeSpec":
        return cls(leaves + 1, tuple((0, i) for i in range(1, leaves + 1)))

    def adjacency(self) -> List[List[int]]:
        adj: List[List[int]] = [[] for _ in range(self.vertex_count)]
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        for nbrs in adj:
            nbrs.sort()
        return adj

    def degrees(self) -> List[int]:
        return [len(nbrs) for nbrs in self.adjacency()]

    def to_text(self) -> str:
        lines = [str(self.vertex_count)] + [f"{u} {v}" for u, v in self.edges]
        return "\n".join(lines) + "\n"


def parse_tree_text(text: str) -> TreeSpec:
    """First line: vertex count; then one ``u v`` pair per line.

    Blank lines and ``#`` comments are ignored.
    """
    rows = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            rows.append(line)
    if not rows:
        raise InvalidArgumentError("empty tree file")
    try:
        n = int(rows[0])
        edges = []
        for row in rows[1:]:
            parts = row.split()
            if len(parts) != 2:
                raise InvalidArgumentError(f"expected 'u v', got {row!r}")
            edges.append((int(parts[0]), int(parts[1])))
    except ValueError as exc:
        raise InvalidArgumentError(f"malformed tree file: {exc}") from None
    return TreeSpec(n, tuple(edges))


def bfs_order(adj: Sequence[Sequence[int]], root: int) -> List[int]:
    seen = [False] * len(adj)
    seen[root] = True
    order = [root]
    queue = deque([root])
    while queue:
        u = queue.popleft()
        for v in adj[u]:
            if not seen[v]:
                seen[v] = True
                order.append(v)
                queue.append(v)
    return order


def is_tree_adjacency(adj: Sequence[Sequence[int]]) -> bool:
    n = len(adj)
    edge_ends = sum(len(nbrs) for nbrs in adj)
    return n >= 1 and edge_ends == 2 * (n - 1) and len(bfs_order(adj, 0)) == n


def tree_centers(adj: Sequence[Sequence[int]]) -> List[int]:
    """One or two centre vertices, found by peeling leaves."""
    n = len(adj)
    if n <= 2:
        return list(range(n))
    degree = [len(nbrs) for nbrs in adj]
    layer = [v for v in range(n) if degree[v] <= 1]
    remaining = n
    while remaining > 2:
        remaining -= len(layer)
        nxt = []
        for u in layer:
            for v in adj[u]:
                degree[v] -= 1
                if degree[v] == 1:
                    nxt.append(v)
        layer = nxt
    return sorted(layer)


def rooted_parents(adj: Sequence[Sequence[int]], root: int) -> Tuple[List[int], List[int]]:
    """BFS order from ``root`` and the parent of every vertex (root -> -1)."""
    parent = [-2] * len(adj)
    parent[root] = -1
    order = [root]
    queue = deque([root])
    while queue:
        u = queue.popleft()
        for v in adj[u]:
            if parent[v] == -2:
                parent[v] = u
                order.append(v)
                queue.append(v)
    return order, parent


class SubtreeInterner:
    """Assigns equal integers to isomorphic rooted subtrees (AHU by ids).

    One interner shared between two trees makes their ids comparable.
    """

    def __init__(self):
        self._ids: Dict[Tuple[int, ...], int] = {}

    def label(self, adj: Sequence[Sequence[int]], root: int) -> Tuple[List[int], List[int]]:
        order, parent = rooted_parents(adj, root)
        if len(order) != len(adj):
            raise InvalidArgumentError("graph is not connected")
        ids = [0] * len(adj)
        for u in reversed(order):
            key = tuple(sorted(ids[v] for v in adj[u] if v != parent[u]))
            ids[u] = self._ids.setdefault(key, len(self._ids))
        return ids, parent


def rooted_tree_matching(
    adj1: Sequence[Sequence[int]],
    root1: int,
    adj2: Sequence[Sequence[int]],
    root2: int,
    hint: Optional[Sequence[int]] = None,
) -> Optional[List[int]]:
    """Root-preserving isomorphism ``adj1 -> adj2`` or ``None``.

    Children are paired inside classes of isomorphic subtrees; where
    ``hint[c]`` is an unused child in the right class it is taken, so the
    result agrees with ``hint`` wherever that is consistent.
    """
    if len(adj1) != len(adj2):
        return None
    interner = SubtreeInterner()
    ids1, parent1 = interner.label(adj1, root1)
    ids2, parent2 = interner.label(adj2, root2)
    if ids1[root1] != ids2[root2]:
        return None
    mapping = [-1] * len(adj1)
    mapping[root1] = root2
    stack = [root1]
    while stack:
        u = stack.pop()
        u2 = mapping[u]
        pool: Dict[int, List[int]] = {}
        for c2 in adj2[u2]:
            if c2 != parent2[u2]:
                pool.setdefault(ids2[c2], []).append(c2)
        for bucket in pool.values():
            bucket.sort()
        children = [c for c in adj1[u] if c != parent1[u]]
        leftovers = []
        for c in children:
            bucket = pool[ids1[c]]
            target = hint[c] if hint is not None else None
            if target is not None and target in bucket:
                bucket.remove(target)
                mapping[c] = target
                stack.append(c)
            else:
                leftovers.append(c)
        for c in leftovers:
            mapping[c] = pool[ids1[c]].pop(0)
            stack.append(c)
    return mapping


def tree_isomorphism(adj1: Sequence[Sequence[int]], adj2: Sequence[Sequence[int]]) -> Optional[List[int]]:
    """Vertex map ``adj1 -> adj2`` between free trees, rooted at their centres."""
    if len(adj1) != len(adj2):
        return None
    c1 = tree_centers(adj1)
    c2 = tree_centers(adj2)
    if len(c1) != len(c2):
        return None
    for r2 in c2:
        found = rooted_tree_matching(adj1, c1[0], adj2, r2)
        if found is not None:
            return found
    return None
