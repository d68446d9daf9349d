"""Weight vectors, subset masses and the chamber structure they induce.

A weight vector ``m = (m_1, ..., m_n)`` of positive rationals determines which
subsets ``I`` of ``{1..n}`` are *short* (``m_I < m/2``), *long*
(``m_I > m/2``) or lie on a *wall* (``m_I = m/2``).  Everything else in the
package is a function of that classification.

Subsets are plain ``int`` bitmasks internally (bit ``i`` is index ``i + 1``);
all user facing output is 1-based.
"""

from __future__ import annotations

import enum
import os
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, reduce
from itertools import combinations
from math import lcm
from typing import Iterable, Iterator, Sequence

from .errors import (
    NonPositiveEntry,
    NotSmooth,
    ParseError,
    PolygonInequalityViolated,
    TooFewSides,
    TooManySides,
)

HARD_MAX_N = 62

_RATIONAL = re.compile(r"\s*(\d+)(?:/(\d+))?\s*$")


def max_n() -> int:
    """Current cap on n; ``POLYSPACE_MAX_N`` may lower it, never above 62."""
    raw = os.environ.get("POLYSPACE_MAX_N")
    if not raw:
        return HARD_MAX_N
    try:
        cap = int(raw)
    except ValueError:
        raise ParseError(f"POLYSPACE_MAX_N must be an integer, got {raw!r}") from None
    return max(3, min(cap, HARD_MAX_N))


def parse_rational(text: str, position: int = 0) -> Fraction:
    match = _RATIONAL.match(text)
    if not match:
        raise ParseError(f"malformed rational {text.strip()!r}", position)
    num, den = match.groups()
    if den is not None and int(den) == 0:
        raise ParseError("zero denominator", position)
    return Fraction(int(num), int(den) if den else 1)


def parse_weights(text: str) -> list[Fraction]:
    """Parse ``"1,1,1,3/2"`` into a list of fractions (no validation)."""
    if not text.strip():
        raise ParseError("empty weight vector", 0)
    out = []
    pos = 0
    for chunk in text.split(","):
        out.append(parse_rational(chunk, pos))
        pos += len(chunk) + 1
    return out


def format_rational(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def bits_of(indices: Iterable[int]) -> int:
    """Bitmask from 1-based indices."""
    bits = 0
    for i in indices:
        bits |= 1 << (i - 1)
    return bits


def indices_of(bits: int) -> tuple[int, ...]:
    """1-based indices of the set bits, ascending."""
    out = []
    i = 1
    while bits:
        if bits & 1:
            out.append(i)
        bits >>= 1
        i += 1
    return tuple(out)


def format_subset(bits: int) -> str:
    return "{" + " ".join(map(str, indices_of(bits))) + "}"


class SubsetClass(enum.Enum):
    SHORT = "short"
    LONG = "long"
    WALL = "wall"


@dataclass(frozen=True)
class SubsetMask:
    bits: int
    cardinality: int
    mass: Fraction

    @property
    def indices(self) -> tuple[int, ...]:
        return indices_of(self.bits)

    def __str__(self):
        return format_subset(self.bits)


@dataclass(frozen=True)
class WeightVector:
    """Validated weight vector.

    Construction checks positivity, ``n >= 3``, the n cap and the polygon
    inequality ``m_i < m - m_i``.
    """

    entries: tuple[Fraction, ...]
    total: Fraction = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        entries = tuple(Fraction(e) for e in self.entries)
        object.__setattr__(self, "entries", entries)
        n = len(entries)
        if n < 3:
            raise TooFewSides(n)
        cap = max_n()
        if n > cap:
            raise TooManySides(n, cap)
        for i, e in enumerate(entries, 1):
            if e <= 0:
                raise NonPositiveEntry(i)
        total = sum(entries, Fraction(0))
        object.__setattr__(self, "total", total)
        for i, e in enumerate(entries, 1):
            if not e < total - e:
                raise PolygonInequalityViolated(i)

    @classmethod
    def parse(cls, text: str) -> "WeightVector":
        return cls(parse_weights(text))

    @property
    def n(self) -> int:
        return len(self.entries)

    @property
    def full(self) -> int:
        return (1 << self.n) - 1

    @property
    def dim(self) -> int:
        return self.n - 3

    @cached_property
    def scaled(self) -> tuple[tuple[int, ...], int]:
        """Integer weights proportional to the entries, and their sum."""
        den = reduce(lcm, (e.denominator for e in self.entries), 1)
        ints = tuple(int(e * den) for e in self.entries)
        return ints, sum(ints)

    def mass(self, bits: int) -> Fraction:
        return sum((self.entries[i - 1] for i in indices_of(bits)), Fraction(0))

    def subset(self, bits: int) -> SubsetMask:
        return SubsetMask(bits, bits.bit_count(), self.mass(bits))

    def __str__(self):
        return ",".join(format_rational(e) for e in self.entries)

    def __len__(self):
        return self.n


def new_weight_vector(entries: Sequence) -> WeightVector:
    if isinstance(entries, str):
        return WeightVector.parse(entries)
    return WeightVector(tuple(entries))


def _as_bits(I) -> int:
    return I.bits if isinstance(I, SubsetMask) else int(I)


def _sign(twice_mass: int, total: int) -> SubsetClass:
    if twice_mass < total:
        return SubsetClass.SHORT
    if twice_mass > total:
        return SubsetClass.LONG
    return SubsetClass.WALL


def classify_subset(m: WeightVector, I) -> SubsetClass:
    """Short / Long / Wall classification by exact comparison of ``2 m_I`` with ``m``."""
    bits = _as_bits(I)
    if bits >> m.n:
        raise ValueError(f"subset {bits:#b} is not contained in {{1..{m.n}}}")
    ints, total = m.scaled
    mass = 0
    for i in range(m.n):
        if bits >> i & 1:
            mass += ints[i]
    return _sign(2 * mass, total)


def iter_masses(m: WeightVector) -> Iterator[tuple[int, int]]:
    """Yield ``(bits, scaled mass)`` for all ``2^n`` subsets in ascending bit order.

    Uses two half tables so memory stays ``O(2^(n/2))``.
    """
    ints, _ = m.scaled
    n = m.n
    h = n // 2
    low = _half_table(ints[:h])
    high = _half_table(ints[h:])
    for hi, hmass in enumerate(high):
        base = hi << h
        for lo, lmass in enumerate(low):
            yield base | lo, hmass + lmass


def _half_table(ints: Sequence[int]) -> list[int]:
    table = [0] * (1 << len(ints))
    for bits in range(1, len(table)):
        low = bits & -bits
        table[bits] = table[bits ^ low] + ints[low.bit_length() - 1]
    return table


def find_wall(m: WeightVector) -> int | None:
    """Smallest wall subset as a bitmask, or None when m is smooth."""
    _, total = m.scaled
    if total % 2:
        return None
    half = total // 2
    for bits, mass in iter_masses(m):
        if mass == half:
            return bits
    return None


def is_smooth(m: WeightVector) -> bool:
    return find_wall(m) is None


def require_smooth(m: WeightVector) -> None:
    wall = find_wall(m)
    if wall is not None:
        raise NotSmooth(indices_of(wall))


def subsets_of_class(m: WeightVector, cls: SubsetClass) -> Iterator[int]:
    _, total = m.scaled
    for bits, mass in iter_masses(m):
        if _sign(2 * mass, total) is cls:
            yield bits


def long_subsets(m: WeightVector) -> Iterator[SubsetMask]:
    for bits in subsets_of_class(m, SubsetClass.LONG):
        yield m.subset(bits)


def short_subsets(m: WeightVector) -> Iterator[SubsetMask]:
    for bits in subsets_of_class(m, SubsetClass.SHORT):
        yield m.subset(bits)


@dataclass(frozen=True)
class MassiveReport:
    """Which special chambers the weights fall into.

    ``one`` lists indices i with ``m_i + m_j > m/2`` for every ``j != i``
    (the space is then projective space of dimension n - 3); ``three`` lists
    triples whose pairwise sums are all long (the space is ``(P^1)^(n-3)``).
    """

    one: tuple[int, ...] = ()
    three: tuple[tuple[int, int, int], ...] = ()

    @property
    def kind(self) -> str:
        if self.one and self.three:
            return "one+three-massive"
        if self.one:
            return "one-massive"
        if self.three:
            return "three-massive"
        return "generic"

    def __str__(self):
        parts = [f"OneMassive({i})" for i in self.one]
        parts += ["ThreeMassive({},{},{})".format(*t) for t in self.three]
        return ", ".join(parts) if parts else "Generic"


def massive_points(m: WeightVector) -> MassiveReport:
    require_smooth(m)
    ints, total = m.scaled
    n = m.n

    def long_pair(i, j):
        return 2 * (ints[i] + ints[j]) > total

    one = tuple(
        i + 1 for i in range(n) if all(long_pair(i, j) for j in range(n) if j != i)
    )
    three = tuple(
        (i + 1, j + 1, k + 1)
        for i, j, k in combinations(range(n), 3)
        if long_pair(i, j) and long_pair(j, k) and long_pair(i, k)
    )
    return MassiveReport(one, three)


@dataclass(frozen=True)
class ChamberSignature:
    n: int
    short_sets: tuple[int, ...]

    def __str__(self):
        return " ".join(format_subset(b) for b in self.short_sets)


def chamber_signature(m: WeightVector) -> ChamberSignature:
    """Canonical encoding of the chamber: all short subsets, ascending."""
    require_smooth(m)
    return ChamberSignature(m.n, tuple(subsets_of_class(m, SubsetClass.SHORT)))
