"""Closed-form predictions for connected m-graphs.

Every predictor except :func:`predict_connected` refuses disconnected inputs:
the formulas are only established for connected graphs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, List

from .errors import HypothesisNotMetError, InvalidArgumentError, OutOfDomainError
from .groups import (
    GroupElement,
    GroupSpec,
    covers_primes,
    factorize,
    invariant_factors,
    p_adic_valuation,
)


class DiameterCase(str, Enum):
    K11 = "K11"
    STAR = "STAR"
    POW2 = "POW2"
    K_POW_W = "K_POW_W"
    C3_EVEN_2W = "C3_EVEN_2W"
    C3_ODD_2W = "C3_ODD_2W"
    C3_2W_MINUS_1 = "C3_2W_MINUS_1"
    CDIM_Q1 = "CDIM_Q1"
    CDIM_Q2 = "CDIM_Q2"
    CDIM_QGT2 = "CDIM_QGT2"
    NCDIM_CASE1 = "NCDIM_CASE1"
    NCDIM_CASE2 = "NCDIM_CASE2"
    NCDIM_CASE3 = "NCDIM_CASE3"
    MERGED_2W_MINUS_2 = "MERGED_2W_MINUS_2"


@dataclass(frozen=True)
class DiameterPrediction:
    value: int
    case_label: DiameterCase
    witnesses: Dict[str, object] = field(default_factory=dict)


@dataclass(frozen=True)
class DegreeCensus:
    count_deg_1: int
    count_deg_high: int
    high_degree_value: int
    identity_degree: int

    def as_mapping(self) -> Dict[int, int]:
        """Degree -> number of vertices, identity included."""
        census: Dict[int, int] = {}
        for deg, count in (
            (1, self.count_deg_1),
            (self.high_degree_value, self.count_deg_high),
            (self.identity_degree, 1),
        ):
            if count:
                census[deg] = census.get(deg, 0) + count
        return dict(sorted(census.items()))


def _require_connected(spec: GroupSpec, m: int) -> None:
    if m <= 1:
        raise InvalidArgumentError(f"multiplier must exceed 1, got {m}")
    if not predict_connected(spec, m):
        raise OutOfDomainError(f"{m}-G({spec}) is disconnected")


def predict_connected(spec: GroupSpec, m: int) -> bool:
    """Connected iff every prime factor of the order divides ``gcd(m, order)``."""
    k = math.gcd(m, spec.order)
    return covers_primes(spec.order, k)


def reduced_multipliers(spec: GroupSpec, m: int) -> List[int]:
    """``d_j = gcd(m, m_j)`` for each cyclic factor."""
    return [math.gcd(m, mj) for mj in spec.moduli]


def predict_degree(spec: GroupSpec, m: int, a: GroupElement) -> int:
    _require_connected(spec, m)
    d = reduced_multipliers(spec, m)
    fan_in = math.prod(d)
    if a.is_identity:
        return fan_in - 1
    if any(r % dj for r, dj in zip(a.residues, d)):
        return 1
    return fan_in + 1


def predict_degree_census(spec: GroupSpec, m: int) -> DegreeCensus:
    """Cyclic ``n = q*k``: ``q-1`` vertices of degree ``k+1``, ``n-q`` leaves.

    For products the same count uses ``q_j = m_j / d_j`` and ``k -> prod d_j``.
    """
    _require_connected(spec, m)
    d = reduced_multipliers(spec, m)
    q = math.prod(mj // dj for mj, dj in zip(spec.moduli, d))
    fan_in = math.prod(d)
    return DegreeCensus(
        count_deg_1=spec.order - q,
        count_deg_high=q - 1,
        high_degree_value=fan_in + 1,
        identity_degree=fan_in - 1,
    )


def least_power_w(n: int, k: int) -> int:
    """Least ``w >= 1`` with ``n | k**w``."""
    if isinstance(n, GroupSpec):
        n = n.order
    if n < 1 or k < 1:
        raise InvalidArgumentError("least_power_w needs positive integers")
    if not covers_primes(n, k):
        raise OutOfDomainError(f"some prime of {n} does not divide {k}")
    w = 1
    for p, e in factorize(n):
        w = max(w, -(-e // p_adic_valuation(k, p)))
    return w


def predict_distance_to_zero(n: int, k: int, a: int) -> int:
    """Least ``r >= 1`` with ``n | a * k**r``."""
    if a % n == 0:
        raise InvalidArgumentError("distance to zero is defined for a != 0")
    if not covers_primes(n, k):
        raise OutOfDomainError(f"{k}-G(Z{n}) is disconnected")
    r = 1
    power = k % n
    while (a * power) % n:
        power = power * k % n
        r += 1
    return r


def predict_diameter_cyclic(n: int, m: int) -> DiameterPrediction:
    spec = GroupSpec.cyclic(n)
    _require_connected(spec, m)
    k = math.gcd(m, n)
    if k == n:
        if n == 2:
            return DiameterPrediction(1, DiameterCase.K11, {"k": k, "w": 1})
        return DiameterPrediction(2, DiameterCase.STAR, {"k": k, "w": 1})
    w = least_power_w(n, k)
    wit = {"k": k, "w": w}
    if k == 2:
        return DiameterPrediction(2 * (w - 1), DiameterCase.POW2, wit)
    if n == k**w:
        return DiameterPrediction(2 * w, DiameterCase.K_POW_W, wit)
    if n % 2:
        return DiameterPrediction(2 * w, DiameterCase.C3_ODD_2W, wit)
    if (2 * pow(k, w - 1, n)) % n:
        return DiameterPrediction(2 * w, DiameterCase.C3_EVEN_2W, wit)
    return DiameterPrediction(2 * w - 1, DiameterCase.C3_2W_MINUS_1, wit)


def predict_diameter_cyclic_corrected(n: int, m: int) -> DiameterPrediction:
    """:func:`predict_diameter_cyclic` with the missing merge case split off.

    When ``2*k**(w-1) = 0`` and also ``k**(w-1) = 2*k**(w-2)`` in ``Z_n``,
    the deepest branch (through ``1``) and the one through ``2`` join at
    ``k**(w-1)`` before reaching 0, and the diameter is ``2(w-1)``
    instead of ``2w-1`` (first instance: ``n=24, k=6``).
    """
    pred = predict_diameter_cyclic(n, m)
    if pred.case_label is not DiameterCase.C3_2W_MINUS_1:
        return pred
    k, w = pred.witnesses["k"], pred.witnesses["w"]
    if (pow(k, w - 1, n) - 2 * pow(k, w - 2, n)) % n == 0:
        return DiameterPrediction(2 * (w - 1), DiameterCase.MERGED_2W_MINUS_2, dict(pred.witnesses))
    return pred


def qk_decomposition(n: int, k: int):
    """``(q, i)`` with ``n = q * k**i`` and ``i`` the greatest such exponent."""
    i = 0
    rest = n
    while rest % k == 0:
        rest //= k
        i += 1
    return rest, i


def predict_diameter_cyclic_qk(n: int, k: int) -> DiameterPrediction:
    """Diameter from ``n = q * k**i`` with ``1 <= q < k``.

    The case values rely on ``w = i`` (q = 1) or ``w = i + 1`` (q > 1), which
    requires ``q | k``.  Inputs where that fails raise
    :class:`HypothesisNotMetError` along with ``q >= k``; e.g. ``n=80, k=10``
    has ``q = 8 < 10`` but ``w = 3`` and diameter 6, not 4.
    """
    if n <= 2:
        raise HypothesisNotMetError("needs n > 2")
    if k < 2 or n % k or not covers_primes(n, k):
        raise HypothesisNotMetError(f"{k}-G(Z{n}) is not a connected k | n case")
    q, i = qk_decomposition(n, k)
    if q >= k:
        raise HypothesisNotMetError(f"n = {q}*{k}^{i} with q >= k")
    w = least_power_w(n, k)
    if w != (i if q == 1 else i + 1):
        raise HypothesisNotMetError(f"n = {q}*{k}^{i} but least w is {w} (q does not divide k)")
    wit = {"k": k, "w": w, "q": q, "i": i}
    if q == 1:
        value = 2 * i if k > 2 else 2 * (i - 1)
        return DiameterPrediction(value, DiameterCase.CDIM_Q1, wit)
    if q == 2:
        return DiameterPrediction(2 * i + 1, DiameterCase.CDIM_Q2, wit)
    return DiameterPrediction(2 * (i + 1), DiameterCase.CDIM_QGT2, wit)


def predict_diameter_product(spec: GroupSpec, m: int, corrected: bool = False) -> DiameterPrediction:
    """Non-cyclic diameter from the two largest invariant factors.

    ``corrected`` computes the diameter of the largest factor with
    :func:`predict_diameter_cyclic_corrected`.
    """
    cyclic = predict_diameter_cyclic_corrected if corrected else predict_diameter_cyclic
    if len(spec.moduli) < 2:
        return cyclic(spec.order, m)
    if not spec.is_invariant_chain():
        raise InvalidArgumentError(f"{spec} is not in invariant-factor form")
    _require_connected(spec, m)
    d = reduced_multipliers(spec, m)
    w = [least_power_w(mj, dj) for mj, dj in zip(spec.moduli, d)]
    inner = cyclic(spec.moduli[-1], d[-1])
    wit = {"d": d, "w": w, "inner_diameter": inner.value, "inner_case": inner.case_label.value}
    top, below = w[-1], w[-2]
    if below == top or inner.value == 2 * top:
        return DiameterPrediction(2 * top, DiameterCase.NCDIM_CASE1, wit)
    if below == top - 1:
        return DiameterPrediction(2 * top - 1, DiameterCase.NCDIM_CASE2, wit)
    return DiameterPrediction(inner.value, DiameterCase.NCDIM_CASE3, wit)


def predict_diameter(spec: GroupSpec, m: int, corrected: bool = False) -> DiameterPrediction:
    """Dispatch on the invariant-factor form of ``spec``."""
    canon = invariant_factors(spec.moduli)
    if len(canon.moduli) == 1:
        if corrected:
            return predict_diameter_cyclic_corrected(canon.order, m)
        return predict_diameter_cyclic(canon.order, m)
    return predict_diameter_product(canon, m, corrected)


def count_connected_variants(n: int) -> int:
    """Number of divisors ``k`` of ``n`` divisible by every prime of ``n``."""
    if n < 2:
        raise InvalidArgumentError(f"n = {n} < 2")
    return math.prod(e for _, e in factorize(n))


def connected_reduced_multipliers(n: int) -> List[int]:
    """The divisors counted by :func:`count_connected_variants`, ascending."""
    return [k for k in range(2, n + 1) if n % k == 0 and covers_primes(n, k)]
