"""Quadrangle degenerations, ampleness of ``sum a_i l_i`` and the Fano property.

A 4-part cycle ``D_{IJKL}`` is a curve exactly when every part is short.  For
smooth weights, of each complementary pair of pair-sums (``IJ``/``KL`` etc.)
exactly one is long, and the three long pairs form either

* a triangle on three parts; the omitted part is *distinguished*, and
  ``l_i . D = 2`` for ``i`` in it, ``0`` otherwise; or
* a star at one part (the *center*), with ``l_i . D = -1`` inside the center
  and ``+1`` outside.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Iterator, Sequence

from .intersection import (
    CycleSum,
    Partition,
    divisor_class,
    multiply_l_into_cycle,
    point_count,
)
from .ring import RingElement
from .weights import (
    WeightVector,
    format_subset,
    iter_masses,
    require_smooth,
)


class QuadrangleKind(enum.Enum):
    TRIANGLE = "triangle"
    STAR = "star"


@dataclass(frozen=True)
class Quadrangle:
    parts: Partition
    kind: QuadrangleKind
    special: int  # distinguished part (triangle) or center (star), as a bitmask

    def __str__(self):
        label = "center" if self.kind is QuadrangleKind.STAR else "distinguished"
        return f"{self.kind.name} {label}={format_subset(self.special)} parts={self.parts}"

    def expected_vector(self, n: int) -> list[int]:
        """``l_i . D`` for i = 1..n as predicted by the quadrangle type."""
        inside, outside = (2, 0) if self.kind is QuadrangleKind.TRIANGLE else (-1, 1)
        return [inside if self.special >> i & 1 else outside for i in range(n)]

    def to_json(self) -> dict:
        return {"kind": self.kind.value, "special": list(_idx(self.special)),
                "parts": [list(_idx(p)) for p in self.parts]}


def _idx(bits: int) -> tuple[int, ...]:
    return tuple(i + 1 for i in range(bits.bit_length()) if bits >> i & 1)


def set_partitions(n: int, k: int) -> Iterator[Partition]:
    """All partitions of ``{1..n}`` into exactly ``k`` blocks.

    Generated from restricted growth strings in lexicographic order, which is
    the canonical partition order used for certificates.
    """
    if k > n or k < 1:
        return
    blocks = [0] * k

    def rec(i: int, used: int):
        if n - i < k - used:
            return
        if i == n:
            if used == k:
                yield Partition(blocks)
            return
        bit = 1 << i
        for b in range(min(used + 1, k)):
            blocks[b] |= bit
            yield from rec(i + 1, max(used, b + 1))
            blocks[b] ^= bit

    yield from rec(0, 0)


def classify_quadrangle(m: WeightVector, parts: Partition) -> Quadrangle | None:
    """Type of a 4-part cycle, or None when the cycle is zero."""
    if len(parts) != 4:
        raise ValueError(f"a quadrangle has 4 parts, got {parts}")
    ints, total = m.scaled
    masses = [sum(ints[i - 1] for i in _idx(p)) for p in parts]
    if any(2 * x >= total for x in masses):
        return None
    long_pairs = [(a, b) for a, b in combinations(range(4), 2)
                  if 2 * (masses[a] + masses[b]) > total]
    if len(long_pairs) != 3:
        raise ArithmeticError(f"{parts}: expected 3 long pair sums, found {len(long_pairs)}")
    degree = [sum(x in pair for pair in long_pairs) for x in range(4)]
    if 3 in degree:
        return Quadrangle(parts, QuadrangleKind.STAR, parts[degree.index(3)])
    if degree.count(2) == 3 and degree.count(0) == 1:
        return Quadrangle(parts, QuadrangleKind.TRIANGLE, parts[degree.index(0)])
    raise ArithmeticError(f"{parts}: long pair sums {long_pairs} form neither star nor triangle")


def quadrangles(m: WeightVector) -> list[Quadrangle]:
    require_smooth(m)
    out = []
    for parts in set_partitions(m.n, 4):
        q = classify_quadrangle(m, parts)
        if q is not None:
            out.append(q)
    return out


def quadrangle_intersection_vector(m: WeightVector, q: Quadrangle | Partition) -> list[int]:
    """``l_i . D_{IJKL}`` for every i, computed with the cycle calculus."""
    parts = q.parts if isinstance(q, Quadrangle) else q
    out = []
    for i in range(1, m.n + 1):
        cycle = multiply_l_into_cycle(m, i, CycleSum({parts: 1}))
        out.append(sum(c * point_count(m, P) for P, c in cycle.items()))
    return out


def first_chern_class(n: int) -> RingElement:
    """Anticanonical class ``c_1 = l_1 + ... + l_n``."""
    if n < 4:
        raise ValueError("first Chern class needs n >= 4")
    return sum((RingElement.l(i) for i in range(1, n + 1)), RingElement())


def first_chern_class_consecutive(n: int) -> RingElement:
    """The same class written as ``D_12 + D_23 + ... + D_n1``."""
    if n < 4:
        raise ValueError("first Chern class needs n >= 4")
    return sum((divisor_class(i, i % n + 1) for i in range(1, n + 1)), RingElement())


@dataclass(frozen=True)
class AmpleResult:
    ample: bool
    certificate: Quadrangle | None = None

    def __bool__(self):
        return self.ample


def _subset_sum(a: Sequence[Fraction], bits: int) -> Fraction:
    return sum((a[i - 1] for i in _idx(bits)), Fraction(0))


def quadrangle_condition(q: Quadrangle, a: Sequence[Fraction]) -> bool:
    """Positivity of ``sum a_i l_i`` on one quadrangle."""
    a_special = _subset_sum(a, q.special)
    if q.kind is QuadrangleKind.TRIANGLE:
        return a_special > 0
    rest = sum((_subset_sum(a, p) for p in q.parts if p != q.special), Fraction(0))
    return a_special < rest


def is_ample(m: WeightVector, a: Sequence) -> AmpleResult:
    """Ampleness of ``sum a_i l_i``; on failure the first violating quadrangle."""
    a = [Fraction(x) for x in a]
    if len(a) != m.n:
        raise ValueError(f"expected {m.n} coefficients, got {len(a)}")
    for q in quadrangles(m):
        if not quadrangle_condition(q, a):
            return AmpleResult(False, q)
    return AmpleResult(True)


def is_fano_quadrangle(m: WeightVector) -> bool:
    return is_ample(m, [1] * m.n).ample


def fano_stars(m: WeightVector) -> list[Quadrangle]:
    """Star quadrangles whose center has at least half the indices."""
    return [q for q in quadrangles(m)
            if q.kind is QuadrangleKind.STAR and 2 * q.special.bit_count() >= m.n]


@dataclass(frozen=True)
class MaximalDegeneration:
    bits: int
    n: int = field(repr=False)

    @property
    def dimension(self) -> int:
        return self.n - self.bits.bit_count() - 2

    def __str__(self):
        return f"{format_subset(self.bits)} dim={self.dimension}"


def maximal_degenerations(m: WeightVector) -> list[MaximalDegeneration]:
    """Short sets that become long on adding any single further index."""
    require_smooth(m)
    ints, total = m.scaled
    full = m.full
    out = []
    for bits, mass in iter_masses(m):
        if 2 * mass >= total:
            continue
        rest = full & ~bits
        lightest = min(ints[i] for i in range(m.n) if rest >> i & 1)
        if 2 * (mass + lightest) > total:
            out.append(MaximalDegeneration(bits, m.n))
    return out


def _maximal_ok(d: MaximalDegeneration) -> bool:
    return d.dimension == 0 or 2 * d.dimension > d.n - 4


def is_fano_maximal(m: WeightVector) -> bool:
    return all(_maximal_ok(d) for d in maximal_degenerations(m))


@dataclass(frozen=True)
class FanoVerdict:
    method_quadrangle: bool
    method_maximal: bool
    witnesses: tuple[str, ...] = ()

    @property
    def fano(self) -> bool:
        return self.method_quadrangle and self.method_maximal

    @property
    def consistent(self) -> bool:
        return self.method_quadrangle == self.method_maximal

    def to_json(self) -> dict:
        return {"fano": self.fano, "method_quadrangle": self.method_quadrangle,
                "method_maximal": self.method_maximal, "witnesses": list(self.witnesses)}


def fano_verdict(m: WeightVector) -> FanoVerdict:
    by_quad = is_ample(m, [1] * m.n)
    bad_max = [d for d in maximal_degenerations(m) if not _maximal_ok(d)]
    witnesses = []
    if by_quad.certificate is not None:
        witnesses.append(str(by_quad.certificate))
    witnesses += [f"MAXIMAL {d}" for d in bad_max]
    return FanoVerdict(by_quad.ample, not bad_max, tuple(witnesses))

