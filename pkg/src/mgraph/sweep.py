"""Closed form vs. brute-force comparisons over families of (group, m).

Each configuration yields one :class:`Comparison` per checked quantity; any
mismatch is a discrepancy.  Results are sorted before they are returned, so
the output does not depend on worker scheduling.
"""

from __future__ import annotations

import csv
import io
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from . import closed_form as cf
from .errors import HypothesisNotMetError, IsomorphismConstructionError
from .graph import INFINITE, analyze, bfs_distances, build_mgraph
from .groups import GroupSpec, abelian_groups_of_order
from .isomorphism import (
    build_product_graph,
    iso_map_cyclic,
    iso_map_product,
    product_scalars,
    repaired_iso_map_cyclic,
    repaired_iso_map_product,
    verify_graph_isomorphism,
)

CSV_COLUMNS = ("group", "m", "k", "quantity", "predicted", "oracle", "match")

QUANTITIES = (
    "connected",
    "identity_degree",
    "vertex_degrees",
    "degree_census",
    "edge_count",
    "is_tree",
    "is_bipartite",
    "distance_to_zero",
    "diameter",
    "diameter_cdim",
    "diameter_corrected",
)
_QUANTITY_ORDER = {q: i for i, q in enumerate(QUANTITIES)}


def _fmt(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if value == INFINITE:
        return "infinite"
    if isinstance(value, dict):
        return ";".join(f"{k}:{v}" for k, v in sorted(value.items()))
    return str(value)


@dataclass(frozen=True)
class Comparison:
    group: str
    m: int
    k: int
    quantity: str
    predicted: str
    oracle: str
    case_label: str = ""

    @property
    def match(self) -> bool:
        return self.predicted == self.oracle

    def csv_row(self) -> List[str]:
        return [self.group, str(self.m), str(self.k), self.quantity, self.predicted, self.oracle,
                "true" if self.match else "false"]

    def discrepancy_record(self) -> dict:
        return {
            "group": self.group,
            "m": self.m,
            "k": self.k,
            "quantity": self.quantity,
            "predicted": self.predicted,
            "oracle": self.oracle,
            "case_label": self.case_label,
        }


def _predicted_degrees(spec: GroupSpec, m: int) -> np.ndarray:
    d = np.array(cf.reduced_multipliers(spec, m), dtype=np.int64)
    fan_in = int(np.prod(d))
    table = spec.residue_table()
    high = np.all(table % d == 0, axis=1)
    out = np.where(high, fan_in + 1, 1)
    out[0] = fan_in - 1
    return out


def _predicted_depths(n: int, k: int) -> np.ndarray:
    """``predict_distance_to_zero`` for every residue at once (0 for a = 0)."""
    a = np.arange(n, dtype=np.int64)
    depth = np.zeros(n, dtype=np.int64)
    pending = a != 0
    power, r = k % n, 1
    while pending.any():
        hit = pending & ((a * power) % n == 0)
        depth[hit] = r
        pending &= ~hit
        power = power * k % n
        r += 1
    return depth


def compare_configuration(spec: GroupSpec, m: int, limit_vertices: Optional[int] = None) -> List[Comparison]:
    """Every closed form that applies to ``m-G(spec)`` against the oracle."""
    group = str(spec)
    k = math.gcd(m, spec.order)
    g = build_mgraph(spec, m, limit_vertices)
    report = analyze(g)
    rows = []

    def add(quantity, predicted, oracle, case_label=""):
        rows.append(Comparison(group, m, k, quantity, _fmt(predicted), _fmt(oracle), case_label))

    predicted_connected = cf.predict_connected(spec, m)
    add("connected", predicted_connected, report.connected)
    if not (predicted_connected and report.connected):
        return rows

    census = cf.predict_degree_census(spec, m)
    add("identity_degree", census.identity_degree, g.degree(0))
    agree = int(np.count_nonzero(_predicted_degrees(spec, m) == g.degrees))
    add("vertex_degrees", spec.order, agree)
    add("degree_census", census.as_mapping(), report.degree_census)
    add("edge_count", spec.order - 1, report.edge_count)
    add("is_tree", True, report.is_tree)
    add("is_bipartite", True, report.is_bipartite)

    canon_cyclic = len(spec.moduli) == 1
    if canon_cyclic:
        n = spec.order
        depth = np.asarray(bfs_distances(g, 0), dtype=np.int64)
        agree = int(np.count_nonzero((_predicted_depths(n, k) == depth)[1:]))
        add("distance_to_zero", n - 1, agree)

    plain = cf.predict_diameter(spec, m)
    add("diameter", plain.value, report.diameter, plain.case_label.value)
    if canon_cyclic:
        try:
            qk = cf.predict_diameter_cyclic_qk(spec.order, k)
        except HypothesisNotMetError:
            qk = None
        if qk is not None:
            add("diameter_cdim", qk.value, report.diameter, qk.case_label.value)
    fixed = cf.predict_diameter(spec, m, corrected=True)
    add("diameter_corrected", fixed.value, report.diameter, fixed.case_label.value)
    return rows


# ---------------------------------------------------------------------------
# configuration families
# ---------------------------------------------------------------------------

def cyclic_configurations(max_n: int, max_m: int, min_n: int = 2) -> List[Tuple[GroupSpec, int]]:
    return [(GroupSpec.cyclic(n), m) for n in range(min_n, max_n + 1) for m in range(2, max_m + 1)]


def qualifying_cyclic_configurations(max_n: int, min_n: int = 2) -> List[Tuple[GroupSpec, int]]:
    """Connected cyclic cases with ``m = k`` ranging over every admissible ``k``."""
    return [
        (GroupSpec.cyclic(n), k)
        for n in range(min_n, max_n + 1)
        for k in cf.connected_reduced_multipliers(n)
    ]


def noncyclic_groups(max_order: int) -> List[GroupSpec]:
    out = []
    for order in range(4, max_order + 1):
        out.extend(s for s in abelian_groups_of_order(order) if len(s.moduli) > 1)
    return out


def product_configurations(max_order: int, max_m: int, connected_only: bool = False) -> List[Tuple[GroupSpec, int]]:
    out = []
    for spec in noncyclic_groups(max_order):
        for m in range(2, max_m + 1):
            if connected_only and not cf.predict_connected(spec, m):
                continue
            out.append((spec, m))
    return out


# ---------------------------------------------------------------------------
# running
# ---------------------------------------------------------------------------

@dataclass
class SweepResult:
    rows: List[Comparison]
    configurations: int

    @property
    def discrepancies(self) -> List[Comparison]:
        return [r for r in self.rows if not r.match]

    def discrepancies_for(self, quantities: Iterable[str]) -> List[Comparison]:
        wanted = set(quantities)
        return [r for r in self.rows if r.quantity in wanted and not r.match]

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(CSV_COLUMNS)
        for row in self.rows:
            writer.writerow(row.csv_row())
        return buf.getvalue()

    def summary(self) -> dict:
        connected = sorted({(r.group, r.m) for r in self.rows if r.quantity == "connected" and r.oracle == "true"})
        per_quantity: Dict[str, Dict[str, int]] = {}
        for r in self.rows:
            slot = per_quantity.setdefault(r.quantity, {"compared": 0, "discrepancies": 0})
            slot["compared"] += 1
            slot["discrepancies"] += not r.match
        variants: Dict[str, Dict[str, str]] = {}
        for r in self.rows:
            if r.quantity == "diameter" and " x " not in r.group:
                variants.setdefault(r.group, {})[str(r.k)] = r.oracle
        return {
            "configurations": self.configurations,
            "connected_configurations": len(connected),
            "comparisons": len(self.rows),
            "discrepancy_count": len(self.discrepancies),
            "per_quantity": {q: per_quantity[q] for q in QUANTITIES if q in per_quantity},
            "connected_variants": {
                g: dict(sorted(v.items(), key=lambda kv: int(kv[0])))
                for g, v in sorted(variants.items(), key=lambda kv: _group_key(kv[0]))
            },
            "discrepancies": [r.discrepancy_record() for r in self.discrepancies],
        }


def _group_key(group: str):
    spec = GroupSpec.parse(group)
    return (spec.order, len(spec.moduli), spec.moduli)


def _sort_key(row: Comparison):
    return (_group_key(row.group), row.m, _QUANTITY_ORDER[row.quantity])


def _run_chunk(chunk: Sequence[Tuple[Tuple[int, ...], int, Optional[int]]]) -> List[Comparison]:
    out = []
    for moduli, m, limit in chunk:
        out.extend(compare_configuration(GroupSpec(moduli), m, limit))
    return out


def run_sweep(configs: Sequence[Tuple[GroupSpec, int]], workers: int = 1,
              limit_vertices: Optional[int] = None) -> SweepResult:
    payload = [(spec.moduli, m, limit_vertices) for spec, m in configs]
    if workers <= 1 or len(payload) < 2:
        rows = _run_chunk(payload)
    else:
        size = max(1, len(payload) // (workers * 8))
        chunks = [payload[i:i + size] for i in range(0, len(payload), size)]
        rows = []
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for part in pool.map(_run_chunk, chunks):
                rows.extend(part)
    rows.sort(key=_sort_key)
    return SweepResult(rows, len(payload))


# ---------------------------------------------------------------------------
# isomorphism constructions
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class IsoCheck:
    """Outcome of both isomorphism constructions for one ``(group, m)``."""

    group: str
    m: int
    leaf_map_ok: bool
    repaired_ok: bool
    collisions: int = 0


def _check_iso(spec: GroupSpec, m: int) -> IsoCheck:
    g = build_mgraph(spec, m)
    if len(spec.moduli) == 1:
        n = spec.order
        target = build_mgraph(spec, math.gcd(m, n))
        plain = lambda: iso_map_cyclic(n, m)
        repaired = repaired_iso_map_cyclic(n, m)
    else:
        target = build_product_graph(spec, product_scalars(spec, m))
        plain = lambda: iso_map_product(spec, m)
        repaired = repaired_iso_map_product(spec, m)
    collisions = 0
    try:
        leaf_ok = verify_graph_isomorphism(g, target, plain().forward)
    except IsomorphismConstructionError as exc:
        leaf_ok, collisions = False, len(exc.collisions)
    return IsoCheck(str(spec), m, leaf_ok, verify_graph_isomorphism(g, target, repaired.forward), collisions)


def isomorphism_sweep(max_n: int, max_m: int, max_order: int) -> List[IsoCheck]:
    """Connected cyclic ``n <= max_n, m <= max_m`` and every product of order ``<= max_order``.

    The maps depend on ``m`` only through ``m mod exponent``, so each residue
    is built once and reused; products range over ``2 <= m <= exponent``,
    which already covers every distinct m-graph.
    """
    out = []
    for n in range(2, max_n + 1):
        spec = GroupSpec.cyclic(n)
        seen: Dict[int, IsoCheck] = {}
        for m in range(2, max_m + 1):
            if not cf.predict_connected(spec, m):
                continue
            r = m % n
            if r not in seen:
                seen[r] = _check_iso(spec, m)
            c = seen[r]
            out.append(IsoCheck(c.group, m, c.leaf_map_ok, c.repaired_ok, c.collisions))
    for spec in noncyclic_groups(max_order):
        for m in range(2, spec.exponent + 1):
            if cf.predict_connected(spec, m):
                out.append(_check_iso(spec, m))
    return out
