"""Finite abelian groups written additively as products of cyclic groups.

Elements of ``Z_{m_1} x ... x Z_{m_i}`` are residue vectors; vertices of the
graphs built on them are addressed by the mixed-radix rank of that vector
(first component most significant).
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from functools import cached_property, lru_cache, reduce
from typing import Dict, Iterable, List, Sequence, Tuple

import numpy as np

from .errors import InvalidArgumentError, InvalidSpecError


# ---------------------------------------------------------------------------
# integer helpers
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def factorize(n: int) -> Tuple[Tuple[int, int], ...]:
    """Prime factorization of ``n >= 1`` as sorted ``(prime, exponent)`` pairs."""
    if n < 1:
        raise InvalidArgumentError(f"cannot factor {n}")
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            e = 0
            while n % d == 0:
                n //= d
                e += 1
            out.append((d, e))
        d += 1 if d == 2 else 2
    if n > 1:
        out.append((n, 1))
    return tuple(out)


def prime_factors(n: int) -> Tuple[int, ...]:
    return tuple(p for p, _ in factorize(n))


def is_prime(p: int) -> bool:
    return p >= 2 and factorize(p) == ((p, 1),)


def p_adic_valuation(n: int, p: int) -> int:
    """Largest ``a`` with ``p**a | n``."""
    if not is_prime(p):
        raise InvalidArgumentError(f"{p} is not prime")
    if n < 1:
        raise InvalidArgumentError(f"valuation needs n >= 1, got {n}")
    a = 0
    while n % p == 0:
        n //= p
        a += 1
    return a


def covers_primes(n: int, k: int) -> bool:
    """True iff every prime factor of ``n`` divides ``k``."""
    return all(k % p == 0 for p in prime_factors(n))


def lcm(values: Iterable[int]) -> int:
    return reduce(lambda a, b: a * b // math.gcd(a, b), values, 1)


# ---------------------------------------------------------------------------
# groups and elements
# ---------------------------------------------------------------------------

_LITERAL_FACTOR = re.compile(r"^z(\d+)$")


@dataclass(frozen=True)
class GroupSpec:
    """``Z_{m_1} x ... x Z_{m_i}`` with the moduli kept in the given order."""

    moduli: Tuple[int, ...]

    def __post_init__(self):
        moduli = tuple(int(m) for m in self.moduli)
        object.__setattr__(self, "moduli", moduli)
        if not moduli:
            raise InvalidSpecError("a group needs at least one cyclic factor")
        for m in moduli:
            if m < 2:
                raise InvalidSpecError(f"modulus {m} < 2")

    @classmethod
    def cyclic(cls, n: int) -> "GroupSpec":
        return cls((n,))

    @classmethod
    def parse(cls, text: str) -> "GroupSpec":
        """Parse literals such as ``"Z72"`` or ``"Z4 x Z8 x Z72"``."""
        compact = re.sub(r"\s+", "", str(text)).lower()
        if not compact:
            raise InvalidSpecError("empty group literal")
        moduli = []
        for part in compact.split("x"):
            match = _LITERAL_FACTOR.match(part)
            if match is None:
                raise InvalidSpecError(f"cannot parse group literal {text!r}")
            moduli.append(int(match.group(1)))
        return cls(tuple(moduli))

    def __str__(self) -> str:
        return " x ".join(f"Z{m}" for m in self.moduli)

    @property
    def rank_count(self) -> int:
        return len(self.moduli)

    @property
    def is_cyclic_literal(self) -> bool:
        return len(self.moduli) == 1

    @cached_property
    def order(self) -> int:
        return math.prod(self.moduli)

    @cached_property
    def prime_factorization(self) -> Dict[int, int]:
        merged: Dict[int, int] = {}
        for m in self.moduli:
            for p, e in factorize(m):
                merged[p] = merged.get(p, 0) + e
        return dict(sorted(merged.items()))

    @cached_property
    def exponent(self) -> int:
        """Least common multiple of the moduli (annihilates every element)."""
        return lcm(self.moduli)

    def is_invariant_chain(self) -> bool:
        return all(b % a == 0 for a, b in zip(self.moduli, self.moduli[1:]))

    # mixed-radix indexing -------------------------------------------------

    @cached_property
    def _place_values(self) -> Tuple[int, ...]:
        places = []
        acc = 1
        for m in reversed(self.moduli):
            places.append(acc)
            acc *= m
        return tuple(reversed(places))

    def rank(self, residues: Sequence[int]) -> int:
        return sum((r % m) * w for r, m, w in zip(residues, self.moduli, self._place_values))

    def unrank(self, index: int) -> Tuple[int, ...]:
        return tuple((index // w) % m for m, w in zip(self.moduli, self._place_values))

    def residue_table(self) -> np.ndarray:
        """``(order, i)`` int64 array; row ``r`` holds the residues of rank ``r``."""
        idx = np.arange(self.order, dtype=np.int64)
        cols = [(idx // w) % m for m, w in zip(self.moduli, self._place_values)]
        return np.stack(cols, axis=1)

    def ranks_of(self, table: np.ndarray) -> np.ndarray:
        out = np.zeros(table.shape[0], dtype=np.int64)
        for j, w in enumerate(self._place_values):
            out += table[:, j] * w
        return out

    def element(self, residues: Sequence[int] | int) -> "GroupElement":
        if isinstance(residues, (int, np.integer)):
            residues = (int(residues),)
        return GroupElement(self, tuple(int(r) for r in residues))

    def identity(self) -> "GroupElement":
        return GroupElement(self, (0,) * len(self.moduli))

    def label(self, index: int) -> str:
        residues = self.unrank(index)
        if len(residues) == 1:
            return str(residues[0])
        return "(" + ",".join(str(r) for r in residues) + ")"


@dataclass(frozen=True)
class GroupElement:
    spec: GroupSpec
    residues: Tuple[int, ...]

    def __post_init__(self):
        if len(self.residues) != len(self.spec.moduli):
            raise InvalidArgumentError(
                f"{len(self.residues)} residues for {len(self.spec.moduli)} moduli"
            )
        for r, m in zip(self.residues, self.spec.moduli):
            if not 0 <= r < m:
                raise InvalidArgumentError(f"residue {r} outside [0, {m})")

    @property
    def is_identity(self) -> bool:
        return not any(self.residues)

    @property
    def rank(self) -> int:
        return self.spec.rank(self.residues)


def scalar_mul(t: int, a: GroupElement) -> GroupElement:
    """``t * a`` computed componentwise; ``t`` is reduced per modulus first."""
    if t < 0:
        raise InvalidArgumentError("scalar must be nonnegative")
    res = tuple(((t % m) * r) % m for r, m in zip(a.residues, a.spec.moduli))
    return GroupElement(a.spec, res)


def element_order(a: GroupElement) -> int:
    return lcm(m // math.gcd(r, m) for r, m in zip(a.residues, a.spec.moduli))


def invariant_factors(moduli: Sequence[int]) -> GroupSpec:
    """Isomorphic group with moduli ``c_1 | c_2 | ... | c_t``.

    Each modulus is split into prime powers; the largest power of every prime
    goes into the last factor, the next largest into the one before, etc.
    """
    powers: Dict[int, List[int]] = {}
    for m in moduli:
        if m < 2:
            raise InvalidSpecError(f"modulus {m} < 2")
        for p, e in factorize(int(m)):
            powers.setdefault(p, []).append(p**e)
    if not powers:
        raise InvalidSpecError("empty group")
    for p in powers:
        powers[p].sort(reverse=True)
    length = max(len(v) for v in powers.values())
    chain = []
    for slot in range(length):
        c = 1
        for v in powers.values():
            if slot < len(v):
                c *= v[slot]
        chain.append(c)
    return GroupSpec(tuple(reversed(chain)))


# ---------------------------------------------------------------------------
# linear congruences
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CongruenceSolution:
    solvable: bool
    solutions: Tuple[int, ...] = field(default=())

    @property
    def count(self) -> int:
        return len(self.solutions)


def solve_scalar_equation(m: int, a: int, n: int) -> CongruenceSolution:
    """All ``x`` in ``Z_n`` with ``m*x = a``; solvable iff ``gcd(m, n) | a``."""
    if n < 2:
        raise InvalidArgumentError(f"modulus {n} < 2")
    if not 0 <= a < n:
        raise InvalidArgumentError(f"residue {a} outside [0, {n})")
    k = math.gcd(m, n)
    if a % k:
        return CongruenceSolution(False)
    step = n // k
    if step == 1:
        x0 = 0
    else:
        x0 = (a // k) * pow((m // k) % step, -1, step) % step
    return CongruenceSolution(True, tuple(x0 + t * step for t in range(k)))


def abelian_groups_of_order(n: int) -> List[GroupSpec]:
    """Every abelian group of order ``n`` in invariant-factor form, sorted.

    Built from integer partitions of each prime exponent.
    """
    if n < 2:
        raise InvalidArgumentError(f"order {n} < 2")

    def partitions(e, largest=None):
        largest = e if largest is None else largest
        if e == 0:
            yield ()
            return
        for first in range(min(e, largest), 0, -1):
            for rest in partitions(e - first, first):
                yield (first,) + rest

    per_prime = [[(p, part) for part in partitions(e)] for p, e in factorize(n)]
    groups = set()

    def combine(idx, moduli):
        if idx == len(per_prime):
            groups.add(invariant_factors(moduli).moduli)
            return
        for p, part in per_prime[idx]:
            combine(idx + 1, moduli + [p**x for x in part])

    combine(0, [])
    return [GroupSpec(m) for m in sorted(groups, key=lambda t: (len(t), t))]
