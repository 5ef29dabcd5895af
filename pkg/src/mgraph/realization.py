"""Realizing abstract trees as connected m-graphs."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import List, Optional, Tuple

from .closed_form import connected_reduced_multipliers
from .config import DEFAULT_REALIZE_LIMIT
from .errors import InvalidArgumentError, ResourceLimitError
from .graph import build_mgraph
from .groups import GroupSpec, abelian_groups_of_order
from .isomorphism import VertexBijection, ahu_encode
from .trees import TreeSpec, rooted_tree_matching, tree_isomorphism


@dataclass(frozen=True)
class Realization:
    """``witness_bijection`` sends tree vertices to vertex ranks of ``k-G(spec)``."""

    spec: GroupSpec
    k: int
    witness_bijection: VertexBijection

    def graph(self):
        return build_mgraph(self.spec, self.k)

    def to_dict(self) -> dict:
        return {
            "group": str(self.spec),
            "k": self.k,
            "mapping": {str(v): self.spec.label(img) for v, img in enumerate(self.witness_bijection.forward)},
        }


def _witness(tree: TreeSpec, spec: GroupSpec, k: int, root: Optional[int] = None) -> Optional[Realization]:
    g = build_mgraph(spec, k)
    if root is None:
        mapping = tree_isomorphism(tree.adjacency(), g.adjacency_lists)
    else:
        mapping = rooted_tree_matching(tree.adjacency(), root, g.adjacency_lists, 0)
    if mapping is None:
        return None
    return Realization(spec, k, VertexBijection.from_forward(mapping))


def construct_tree1(d: int) -> Tuple[TreeSpec, Realization]:
    """Root of degree ``d``; ``d`` children of degree ``d+2``; ``(d+1)**2`` vertices.

    Realized by ``(d+1)-G(Z_{(d+1)^2})``.
    """
    if d < 1:
        raise InvalidArgumentError("d must be at least 1")
    edges = []
    nxt = d + 1
    for hub in range(1, d + 1):
        edges.append((0, hub))
        for _ in range(d + 1):
            edges.append((hub, nxt))
            nxt += 1
    tree = TreeSpec(nxt, tuple(edges))
    real = _witness(tree, GroupSpec.cyclic((d + 1) ** 2), d + 1, root=0)
    if real is None:
        raise AssertionError(f"Tree1 pattern for d={d} did not match its m-graph")
    return tree, real


def construct_tree2(k: int) -> Tuple[TreeSpec, Realization]:
    """Root of degree ``k-1`` over ``2k-1`` vertices of degree ``k+1``; ``2k**2`` vertices.

    One root neighbour (the hub) carries the other ``k`` high-degree
    vertices; every high-degree vertex other than the hub has ``k`` leaves.
    Realized by ``k-G(Z_{2k^2})``.
    """
    if k < 4 or k % 2:
        raise InvalidArgumentError("k must be even and at least 4")
    edges = []
    nxt = 1
    high = []
    hub = nxt
    nxt += 1
    edges.append((0, hub))
    for _ in range(k - 2):
        edges.append((0, nxt))
        high.append(nxt)
        nxt += 1
    for _ in range(k):
        edges.append((hub, nxt))
        high.append(nxt)
        nxt += 1
    for v in high:
        for _ in range(k):
            edges.append((v, nxt))
            nxt += 1
    tree = TreeSpec(nxt, tuple(edges))
    real = _witness(tree, GroupSpec.cyclic(2 * k * k), k, root=0)
    if real is None:
        raise AssertionError(f"Tree2 pattern for k={k} did not match its m-graph")
    return tree, real


def _notree_certifies(degree: int, n: int) -> bool:
    # degree = 2^d - 1 with d odd, and n = 2^d * b with b odd >= 3
    d = (degree + 1).bit_length() - 1
    if degree < 1 or (1 << d) != degree + 1 or d % 2 == 0:
        return False
    if n % (1 << d):
        return False
    b = n >> d
    return b % 2 == 1 and b >= 3


def check_notree_obstruction(tree: TreeSpec, root: Optional[int] = None) -> bool:
    """Power-of-two obstruction for cyclic realizations.

    With ``root`` given, True certifies that no cyclic m-graph realizes the
    tree with ``root`` sent to the identity.  Without it, every vertex is
    tried as the root; that form does not certify unrealizability of the
    unrooted tree (a star with a leaf as root is flagged, yet is realizable).
    """
    n = tree.vertex_count
    degrees = tree.degrees()
    if root is not None:
        return _notree_certifies(degrees[root], n)
    return any(_notree_certifies(deg, n) for deg in degrees)


def _cyclic_candidates(n: int) -> List[Tuple[GroupSpec, int]]:
    return [(GroupSpec.cyclic(n), k) for k in connected_reduced_multipliers(n)]


def _noncyclic_candidates(n: int) -> List[Tuple[GroupSpec, int]]:
    """One multiplier per distinct product graph: ``k | n`` covering the primes of ``n``."""
    out = []
    for spec in abelian_groups_of_order(n):
        if len(spec.moduli) < 2:
            continue
        seen = set()
        for k in connected_reduced_multipliers(n):
            d = tuple(math.gcd(k, mj) for mj in spec.moduli)
            if d in seen:
                continue
            seen.add(d)
            out.append((spec, k))
    return out


def candidate_realizations(n: int, cyclic_only: bool = False) -> List[Tuple[GroupSpec, int]]:
    """All (group, multiplier) pairs whose m-graph could be an ``n``-vertex tree.

    Cyclic candidates come first, then non-cyclic groups in invariant-factor
    order; multipliers ascend within a group.
    """
    if n < 2:
        return []
    out = _cyclic_candidates(n)
    if not cyclic_only:
        out += _noncyclic_candidates(n)
    return out


def realize_tree(
    tree: TreeSpec,
    limit_vertices: int = DEFAULT_REALIZE_LIMIT,
    root: Optional[int] = None,
    cyclic_only: bool = False,
    fast_reject: bool = True,
) -> Optional[Realization]:
    """First candidate m-graph isomorphic to ``tree``, or ``None``.

    With ``root`` given only realizations sending it to the identity count,
    and a cyclic-only search may stop early on the power-of-two obstruction
    (``fast_reject``).
    """
    if not isinstance(tree, TreeSpec):
        raise InvalidArgumentError("realize_tree needs a TreeSpec")
    n = tree.vertex_count
    if n > limit_vertices:
        raise ResourceLimitError(f"tree has {n} vertices, limit is {limit_vertices}")
    if fast_reject and cyclic_only and root is not None and check_notree_obstruction(tree, root):
        return None
    target = ahu_encode(tree).code
    for spec, k in candidate_realizations(n, cyclic_only):
        g = build_mgraph(spec, k)
        if ahu_encode(g).code != target:
            continue
        real = _witness(tree, spec, k, root)
        if real is not None:
            return real
    return None


def construct_for_diameter(d: int) -> Tuple[GroupSpec, int]:
    """A cyclic group and multiplier whose m-graph is connected with diameter ``d``."""
    if d < 1:
        raise InvalidArgumentError("diameter must be at least 1")
    if d == 1:
        return GroupSpec.cyclic(2), 2
    i = d // 2
    if d % 2:
        return GroupSpec.cyclic(2 * 6**i), 6
    return GroupSpec.cyclic(6**i), 6
