"""Explicit isomorphisms between m-graphs, k-graphs and product graphs.

Two constructions are provided:

* the componentwise map ``k**i * c -> m**i * c`` (``k`` not dividing ``c``,
  ``i`` maximal) that fixes every leaf; :func:`check_leaf_fixing_map` reports
  where it fails to be a bijection or an isomorphism;
* :func:`tree_guided_iso_map`, a root-preserving matching of the two trees
  that follows a hint map wherever the hint is consistent.

``VertexBijection.forward`` always goes from the first graph named in the
function (the m-graph) to the second (the reduced or product graph).
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .closed_form import predict_connected
from .errors import InvalidArgumentError, IsomorphismConstructionError, OutOfDomainError
from .graph import MGraph, _check_size, build_mgraph, graph_from_image, scaled_image
from .groups import GroupSpec, covers_primes, solve_scalar_equation
from .trees import (
    TreeSpec,
    is_tree_adjacency,
    rooted_parents,
    rooted_tree_matching,
    tree_centers,
)


@dataclass(frozen=True)
class VertexBijection:
    forward: Tuple[int, ...]
    backward: Tuple[int, ...]

    def __post_init__(self):
        fwd, bwd = self.forward, self.backward
        if len(fwd) != len(bwd):
            raise InvalidArgumentError("forward and backward sizes differ")
        for v, img in enumerate(fwd):
            if not 0 <= img < len(bwd) or bwd[img] != v:
                raise InvalidArgumentError("forward and backward are not inverse bijections")

    @classmethod
    def from_forward(cls, forward: Sequence[int]) -> "VertexBijection":
        forward = tuple(int(x) for x in forward)
        backward = [-1] * len(forward)
        for v, img in enumerate(forward):
            if not 0 <= img < len(forward) or backward[img] != -1:
                raise IsomorphismConstructionError("map is not injective")
            backward[img] = v
        return cls(forward, tuple(backward))

    @classmethod
    def identity(cls, n: int) -> "VertexBijection":
        ident = tuple(range(n))
        return cls(ident, ident)

    def inverse(self) -> "VertexBijection":
        return VertexBijection(self.backward, self.forward)

    def compose(self, then: "VertexBijection") -> "VertexBijection":
        """``then`` after ``self``."""
        return VertexBijection.from_forward([then.forward[x] for x in self.forward])

    def __len__(self):
        return len(self.forward)

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["source_rank", "image_rank"])
        writer.writerows(enumerate(self.forward))
        return buf.getvalue()


# ---------------------------------------------------------------------------
# edge-by-edge verification
# ---------------------------------------------------------------------------

def _edge_arrays(g) -> Tuple[np.ndarray, np.ndarray, int]:
    if isinstance(g, MGraph):
        n = g.vertex_count
        lo, hi = np.divmod(np.asarray(g.edge_keys), n)
        return lo, hi, n
    if isinstance(g, TreeSpec):
        e = np.array(g.edges, dtype=np.int64).reshape(-1, 2)
        return e[:, 0], e[:, 1], g.vertex_count
    raise InvalidArgumentError(f"unsupported graph type {type(g).__name__}")


def verify_graph_isomorphism(g1, g2, f) -> bool:
    """True iff ``{u, v}`` is an edge of ``g1`` exactly when ``{f(u), f(v)}`` is one of ``g2``.

    ``f`` is a :class:`VertexBijection` (its ``forward``) or a sequence.
    """
    u1, v1, n1 = _edge_arrays(g1)
    u2, v2, n2 = _edge_arrays(g2)
    if n1 != n2:
        raise InvalidArgumentError(f"vertex counts differ: {n1} vs {n2}")
    fwd = np.asarray(f.forward if isinstance(f, VertexBijection) else f, dtype=np.int64)
    if fwd.shape != (n1,) or np.unique(fwd).shape[0] != n1:
        raise InvalidArgumentError("map is not a bijection on the vertex set")
    if u1.shape[0] != u2.shape[0]:
        return False
    a, b = fwd[u1], fwd[v1]
    mapped = np.sort(np.minimum(a, b) * n1 + np.maximum(a, b))
    target = np.sort(np.minimum(u2, v2) * n1 + np.maximum(u2, v2))
    return bool(np.array_equal(mapped, target))


# ---------------------------------------------------------------------------
# the leaf-fixing construction on cyclic groups
# ---------------------------------------------------------------------------

def split_power(v: int, k: int) -> Tuple[int, int]:
    """``(i, c)`` with ``v = k**i * c`` over the integers, ``k`` not dividing ``c``."""
    i = 0
    while v % k == 0:
        v //= k
        i += 1
    return i, v


def leaf_fixing_map(n: int, m: int) -> List[int]:
    """``f(0) = 0`` and ``f(k**i * c) = m**i * c mod n`` on ``Z_n``.

    Intended to carry the k-graph onto the m-graph; may fail to be injective.
    """
    k = math.gcd(m, n)
    f = [0] * n
    for v in range(1, n):
        i, c = split_power(v, k)
        f[v] = pow(m, i, n) * c % n
    return f


def proof_preimage(n: int, m: int, v: int, choice: int = 0) -> Optional[int]:
    """Preimage of ``v`` under :func:`leaf_fixing_map` built as in the surjectivity argument.

    Takes the ``choice``-th solution ``b`` of ``m**i * b = v``; if ``k | b``
    it is shifted to ``b + n / k**i``.  Returns ``None`` when a step of that
    argument is unavailable (no solution, non-integral shift, or the shifted
    value still divisible by ``k``).
    """
    k = math.gcd(m, n)
    if v == 0:
        return 0
    if v % k:
        return v
    i, _ = split_power(v, k)
    sol = solve_scalar_equation(pow(m, i, n), v, n)
    if not sol.solvable:
        return None
    b = sol.solutions[choice]
    if b % k:
        return pow(k, i, n) * b % n
    if n % k**i:
        return None
    y = b + n // k**i
    if y % k == 0:
        return None
    return pow(k, i, n) * y % n


@dataclass(frozen=True)
class LeafMapCheck:
    """Enumeration of the leaf-fixing map on ``Z_n``.

    ``proof_preimage_failures`` lists the ``v`` for which some admissible
    choice of ``b`` in the surjectivity argument does not produce a preimage;
    ``shift_steps`` counts (attempted, succeeded) uses of the ``b + n/k**i``
    adjustment over all ``v`` and all choices of ``b``.
    """

    n: int
    m: int
    k: int
    bijective: bool
    edge_preserving: bool
    collisions: Tuple[Tuple[int, Tuple[int, ...]], ...]
    proof_preimage_failures: Tuple[int, ...]
    shift_steps: Tuple[int, int]

    @property
    def ok(self) -> bool:
        """The map itself is an isomorphism from the k-graph to the m-graph."""
        return self.bijective and self.edge_preserving

    @property
    def argument_complete(self) -> bool:
        """Every branch of the surjectivity argument produced a preimage."""
        return not self.proof_preimage_failures


def check_leaf_fixing_map(n: int, m: int) -> LeafMapCheck:
    """Enumerate the leaf-fixing map and every branch of the preimage construction."""
    spec = GroupSpec.cyclic(n)
    if not predict_connected(spec, m):
        raise OutOfDomainError(f"{m}-G(Z{n}) is disconnected")
    k = math.gcd(m, n)
    f = leaf_fixing_map(n, m)
    sources: Dict[int, List[int]] = {}
    for v, img in enumerate(f):
        sources.setdefault(img, []).append(v)
    collisions = tuple((img, tuple(src)) for img, src in sorted(sources.items()) if len(src) > 1)
    bijective = not collisions
    edge_ok = False
    if bijective:
        edge_ok = verify_graph_isomorphism(build_mgraph(spec, k), build_mgraph(spec, m), f)
    failures = []
    tried = worked = 0
    for v in range(n):
        if v == 0 or v % k:
            if f[v] != v:
                failures.append(v)
            continue
        i, _ = split_power(v, k)
        sol = solve_scalar_equation(pow(m, i, n), v, n)
        bad = not sol.solvable
        for choice, b in enumerate(sol.solutions):
            pre = proof_preimage(n, m, v, choice)
            shifted = b % k == 0
            ok = pre is not None and f[pre] == v
            tried += shifted
            worked += shifted and ok
            bad = bad or not ok
        if bad:
            failures.append(v)
    return LeafMapCheck(n, m, k, bijective, edge_ok, collisions, tuple(failures), (tried, worked))


def iso_map_cyclic(n: int, m: int) -> VertexBijection:
    """Leaf-fixing bijection between m-G(Z_n) (forward side) and k-G(Z_n).

    ``backward`` is the map ``k**i * c -> m**i * c``.  Raises
    :class:`IsomorphismConstructionError` when that map is not injective.
    """
    spec = GroupSpec.cyclic(n)
    if not predict_connected(spec, m):
        raise OutOfDomainError(f"{m}-G(Z{n}) is disconnected")
    f = leaf_fixing_map(n, m)
    if len(set(f)) != n:
        check = check_leaf_fixing_map(n, m)
        raise IsomorphismConstructionError(
            f"leaf-fixing map on Z{n} for m={m} is not injective", check.collisions
        )
    return VertexBijection.from_forward(f).inverse()


# ---------------------------------------------------------------------------
# product graphs
# ---------------------------------------------------------------------------

def build_product_graph(spec: GroupSpec, d: Sequence[int], limit_vertices=None) -> MGraph:
    """``x ~ (d_1 x_1, ..., d_i x_i)`` on ``Z_{m_1} x ... x Z_{m_i}``."""
    d = tuple(int(x) for x in d)
    if len(spec.moduli) < 2:
        raise InvalidArgumentError("product graph needs at least two factors")
    if len(d) != len(spec.moduli):
        raise InvalidArgumentError("one scalar per factor is required")
    for dj, mj in zip(d, spec.moduli):
        if dj < 2 or mj % dj or not covers_primes(mj, dj):
            raise InvalidArgumentError(f"d={dj} is not admissible for Z{mj}")
    _check_size(spec, limit_vertices)
    return graph_from_image(spec, scaled_image(spec, d), multiplier=None, scalars=d)


def product_scalars(spec: GroupSpec, m: int) -> Tuple[int, ...]:
    return tuple(math.gcd(m, mj) for mj in spec.moduli)


def iso_map_product(spec: GroupSpec, m: int) -> VertexBijection:
    """Componentwise leaf-fixing map from m-G(H) to the ``(d_1..d_i)`` product graph."""
    if len(spec.moduli) < 2:
        raise InvalidArgumentError("use iso_map_cyclic for a single factor")
    if not predict_connected(spec, m):
        raise OutOfDomainError(f"{m}-G({spec}) is disconnected")
    inverses = []
    for mj in spec.moduli:
        f = leaf_fixing_map(mj, m)  # d_j-G(Z_mj) -> m-G(Z_mj)
        if len(set(f)) != mj:
            check = check_leaf_fixing_map(mj, m)
            raise IsomorphismConstructionError(
                f"leaf-fixing map on factor Z{mj} for m={m} is not injective", check.collisions
            )
        inv = [0] * mj
        for v, img in enumerate(f):
            inv[img] = v
        inverses.append(np.array(inv, dtype=np.int64))
    table = spec.residue_table()
    mapped = np.stack([inv[table[:, j]] for j, inv in enumerate(inverses)], axis=1)
    return VertexBijection.from_forward(spec.ranks_of(mapped).tolist())


def componentwise_leaf_map(spec: GroupSpec, m: int) -> List[int]:
    """Forward direction of :func:`iso_map_product` without the injectivity demand."""
    table = spec.residue_table()
    cols = []
    for j, mj in enumerate(spec.moduli):
        f = leaf_fixing_map(mj, m)
        inv = list(range(mj))
        for v, img in enumerate(f):
            inv[img] = v  # last writer wins on collisions; this is only a hint
        cols.append(np.array(inv, dtype=np.int64)[table[:, j]])
    return spec.ranks_of(np.stack(cols, axis=1)).tolist()


# ---------------------------------------------------------------------------
# tree-guided construction
# ---------------------------------------------------------------------------

def tree_guided_iso_map(src: MGraph, dst: MGraph, hint: Optional[Sequence[int]] = None) -> VertexBijection:
    """Root-preserving (identity to identity) isomorphism between two m-graph trees.

    Follows ``hint`` wherever it is consistent with the subtree structure.
    """
    adj1, adj2 = src.adjacency_lists, dst.adjacency_lists
    if not (is_tree_adjacency(adj1) and is_tree_adjacency(adj2)):
        raise OutOfDomainError("tree-guided matching needs two trees")
    mapping = rooted_tree_matching(adj1, 0, adj2, 0, hint)
    if mapping is None:
        raise IsomorphismConstructionError(f"{src.name} and {dst.name} are not isomorphic rooted trees")
    return VertexBijection.from_forward(mapping)


def repaired_iso_map_cyclic(n: int, m: int) -> VertexBijection:
    """m-G(Z_n) -> k-G(Z_n), agreeing with the leaf-fixing map where possible."""
    spec = GroupSpec.cyclic(n)
    if not predict_connected(spec, m):
        raise OutOfDomainError(f"{m}-G(Z{n}) is disconnected")
    k = math.gcd(m, n)
    f = leaf_fixing_map(n, m)
    hint = list(range(n))
    for v, img in enumerate(f):
        hint[img] = v
    return tree_guided_iso_map(build_mgraph(spec, m), build_mgraph(spec, k), hint)


def repaired_iso_map_product(spec: GroupSpec, m: int) -> VertexBijection:
    """m-G(H) -> product graph, agreeing with the componentwise map where possible."""
    if not predict_connected(spec, m):
        raise OutOfDomainError(f"{m}-G({spec}) is disconnected")
    return tree_guided_iso_map(
        build_mgraph(spec, m),
        build_product_graph(spec, product_scalars(spec, m)),
        componentwise_leaf_map(spec, m),
    )


# ---------------------------------------------------------------------------
# canonical codes
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CanonicalTreeCode:
    code: str
    vertex_count: int

    def __str__(self):
        return self.code


def _tree_adjacency(tree) -> List[List[int]]:
    if isinstance(tree, TreeSpec):
        return tree.adjacency()
    if isinstance(tree, MGraph):
        adj = tree.adjacency_lists
        if not is_tree_adjacency(adj):
            raise InvalidArgumentError(f"{tree.name} is not a tree")
        return adj
    adj = [list(nbrs) for nbrs in tree]
    if not is_tree_adjacency(adj):
        raise InvalidArgumentError("adjacency does not describe a tree")
    return adj


def rooted_code(adj: Sequence[Sequence[int]], root: int) -> str:
    """AHU parenthesis string of the tree hanging from ``root``."""
    order, parent = rooted_parents(adj, root)
    codes: List[str] = [""] * len(adj)
    for u in reversed(order):
        kids = sorted(codes[v] for v in adj[u] if v != parent[u])
        codes[u] = "(" + "".join(kids) + ")"
        for v in adj[u]:
            if v != parent[u]:
                codes[v] = ""  # release child strings early
    return codes[root]


def ahu_encode(tree) -> CanonicalTreeCode:
    """Centre-rooted AHU code; bicentral trees take the smaller of the two."""
    adj = _tree_adjacency(tree)
    code = min(rooted_code(adj, c) for c in tree_centers(adj))
    return CanonicalTreeCode(code, len(adj))
