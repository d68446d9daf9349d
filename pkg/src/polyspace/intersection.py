"""Top-degree intersection numbers, computed two independent ways.

Route ``signs``: for ``|J| + 2k = n - 3`` pick ``I`` of size ``n - 2``
containing ``J`` with complement ``{a, b}`` and sum, over sign vectors on ``I``
with one sign pinned, ``sgn(s) * eps_{I \\ J}`` for every signed mass
``s = (eps, m_I)`` strictly between ``|m_a - m_b|`` and ``m_a + m_b``.

Route ``cycles``: start from the fundamental class (all parts singletons) and
repeatedly apply::

    l_i . D_{I,J,K,...} = D_{(IJ),K,...} + D_{(IK),J,...} - D_{I,(JK),...}

with ``i in I``, dropping cycles with a long part, until three parts remain;
a three-part cycle is a point exactly when all parts are short.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Callable, Iterable, Mapping, Sequence

from .errors import (
    BadCenter,
    EqualIndices,
    NotHomogeneousTop,
    ParseError,
    TooFewParts,
    WallHit,
    WrongDegree,
)
from .ring import Monomial, RingElement
from .weights import SubsetMask, WeightVector, bits_of, format_subset, indices_of, require_smooth


class Partition(tuple):
    """Set partition of ``{1..n}`` as bitmask parts, sorted by smallest element."""

    def __new__(cls, parts: Iterable[int]):
        return super().__new__(cls, sorted(parts, key=lambda b: b & -b))

    @classmethod
    def singletons(cls, n: int) -> "Partition":
        return cls(1 << i for i in range(n))

    @classmethod
    def from_indices(cls, blocks: Iterable[Iterable[int]]) -> "Partition":
        return cls(bits_of(b) for b in blocks)

    @classmethod
    def parse(cls, text: str) -> "Partition":
        body = text.strip()
        if not (body.startswith("{") and body.endswith("}")):
            raise ParseError(f"partition must look like {{1 2|3|4}}, got {text!r}", 0)
        blocks = []
        for block in body[1:-1].split("|"):
            try:
                blocks.append([int(tok) for tok in block.split()])
            except ValueError:
                raise ParseError(f"bad block {block!r}") from None
            if not blocks[-1]:
                raise ParseError("empty block")
        return cls.from_indices(blocks)

    def check(self, n: int) -> None:
        seen = 0
        for part in self:
            if not part or part & seen:
                raise ValueError(f"{self} is not a partition: parts overlap or are empty")
            seen |= part
        if seen != (1 << n) - 1:
            raise ValueError(f"{self} does not cover {{1..{n}}}")

    def part_of(self, i: int) -> int:
        """The part containing 1-based index ``i``."""
        bit = 1 << (i - 1)
        for part in self:
            if part & bit:
                return part
        raise ValueError(f"index {i} not covered by {self}")

    @property
    def dimension(self) -> int:
        return len(self) - 3

    def __str__(self):
        return "{" + "|".join(format_subset(b)[1:-1] for b in self) + "}"

    def __repr__(self):
        return f"Partition({self})"


class CycleSum(dict):
    """Integer combination of degenerate cycles, keyed by ``Partition``."""

    def add(self, partition: Partition, coeff: int) -> None:
        value = self.get(partition, 0) + coeff
        if value:
            self[partition] = value
        else:
            self.pop(partition, None)

    def __str__(self):
        if not self:
            return "0"
        return " + ".join(f"{c}*D{p}" for p, c in sorted(self.items(), key=lambda t: tuple(t[0])))


def _is_short(ints: Sequence[int], total: int, bits: int) -> bool:
    mass = 0
    i = 0
    while bits:
        if bits & 1:
            mass += ints[i]
        bits >>= 1
        i += 1
    return 2 * mass < total


def stability_of_partition(m: WeightVector, P: Partition) -> bool:
    """False iff the cycle vanishes: fewer than 3 parts or some part not short."""
    if len(P) < 3:
        return False
    ints, total = m.scaled
    return all(_is_short(ints, total, part) for part in P)


def point_count(m: WeightVector, P: Partition) -> int:
    """A 3-part cycle is one point iff the part masses satisfy the triangle inequality."""
    if len(P) != 3:
        raise ValueError(f"point_count needs exactly 3 parts, got {P}")
    return int(stability_of_partition(m, P))


Chooser = Callable[[list[int]], tuple[int, int]]


def _default_choice(others: list[int]) -> tuple[int, int]:
    return others[0], others[1]


def random_chooser(seed: int) -> Chooser:
    """A deterministic but arbitrary (J, K) selection rule, for independence checks."""
    rng = random.Random(seed)

    def choose(others):
        a, b = rng.sample(others, 2)
        return a, b

    return choose


def multiply_l_into_cycle(m: WeightVector, i: int, C: Mapping[Partition, int],
                          choose: Chooser | None = None) -> CycleSum:
    choose = choose or _default_choice
    ints, total = m.scaled
    out = CycleSum()
    for P, coeff in C.items():
        if len(P) < 4:
            raise TooFewParts(f"cannot multiply l_{i} into {P}: needs at least 4 parts")
        I = P.part_of(i)
        others = [part for part in P if part != I]
        J, K = choose(others)
        rest = [part for part in others if part != J and part != K]
        for merged, kept, sign in ((I | J, K, 1), (I | K, J, 1), (J | K, I, -1)):
            if not _is_short(ints, total, merged):
                continue
            out.add(Partition([merged, kept, *rest]), sign * coeff)
    return out


def _check_top_degree(m: WeightVector, J: int, k: int) -> None:
    if k < 0 or J.bit_count() + 2 * k != m.n - 3:
        raise WrongDegree(
            f"l_J p^k with |J| = {J.bit_count()}, k = {k} has degree "
            f"{J.bit_count() + 2 * k}, expected n - 3 = {m.n - 3}"
        )


def _as_bits(J) -> int:
    if isinstance(J, SubsetMask):
        return J.bits
    if isinstance(J, int):
        return J
    return bits_of(J)


def reduce_word(m: WeightVector, word: Sequence[int], choose: Chooser | None = None) -> CycleSum:
    """Apply ``l_i`` for each index of ``word`` in turn to the fundamental class.

    Indices may repeat; ``len(word)`` must equal ``n - 3``.
    """
    require_smooth(m)
    if len(word) != m.n - 3:
        raise WrongDegree(f"a product of {len(word)} classes l_i is not of degree n - 3 = {m.n - 3}")
    cycle = CycleSum({Partition.singletons(m.n): 1})
    for i in word:
        cycle = multiply_l_into_cycle(m, i, cycle, choose)
    return cycle


def evaluate_word_by_cycles(m: WeightVector, word: Sequence[int],
                            choose: Chooser | None = None) -> int:
    cycle = reduce_word(m, word, choose)
    return sum(c * point_count(m, P) for P, c in cycle.items())


def cycle_reduction(m: WeightVector, M: Monomial, choose: Chooser | None = None,
                    gamma: int = 1) -> CycleSum:
    """Cycle sum of 3-part partitions representing the top-degree monomial ``M``.

    Each factor of ``p`` is applied as ``l_gamma`` twice.
    """
    _check_top_degree(m, M.lset, M.ppow)
    return reduce_word(m, list(indices_of(M.lset)) + [gamma, gamma] * M.ppow, choose)


def evaluate_monomial_by_cycles(m: WeightVector, M: Monomial, choose: Chooser | None = None,
                                gamma: int = 1) -> int:
    cycle = cycle_reduction(m, M, choose, gamma)
    return sum(c * point_count(m, P) for P, c in cycle.items())


def top_intersection(m: WeightVector, J, k: int, outside: tuple[int, int] | None = None,
                     gamma: int | None = None) -> int:
    """Intersection number of ``l_J p^k`` by the signed-mass sum.

    ``outside`` is the pair ``(a, b)`` left out of ``I`` (1-based); default the
    two largest indices not in ``J``.  ``gamma`` is the index whose sign is
    pinned to +1; default ``min(I)``.
    """
    require_smooth(m)
    J = _as_bits(J)
    _check_top_degree(m, J, k)
    n = m.n
    if outside is None:
        free = [i for i in range(n, 0, -1) if not J >> (i - 1) & 1]
        outside = (free[0], free[1])
    a, b = outside
    if a == b or J >> (a - 1) & 1 or J >> (b - 1) & 1:
        raise ValueError(f"outside pair {outside} must be two distinct indices not in J")
    I = [i for i in range(1, n + 1) if i != a and i != b]
    if gamma is None:
        gamma = I[0]
    if gamma not in I:
        raise ValueError(f"gamma = {gamma} is not in I")
    ints, _ = m.scaled
    lo = abs(ints[a - 1] - ints[b - 1])
    hi = ints[a - 1] + ints[b - 1]
    free_idx = [i for i in I if i != gamma]
    # indices of I \ J whose signs enter eps_{I \ J}
    off_j = [not J >> (i - 1) & 1 for i in free_idx]
    result = 0
    base = ints[gamma - 1]
    weights = [ints[i - 1] for i in free_idx]
    for signs in product((1, -1), repeat=len(free_idx)):
        s = base
        eps_off = 1
        for sign, w, off in zip(signs, weights, off_j):
            s += sign * w
            if off and sign < 0:
                eps_off = -eps_off
        mag = abs(s)
        if mag == lo or mag == hi:
            raise WallHit(f"signed mass {s} sits on the window boundary ({lo}, {hi})")
        if lo < mag < hi:
            result += eps_off if s > 0 else -eps_off
    return result


def intersect(m: WeightVector, M: Monomial, route: str = "signs") -> int:
    if route == "signs":
        return top_intersection(m, M.lset, M.ppow)
    if route == "cycles":
        return evaluate_monomial_by_cycles(m, M)
    raise ValueError(f"unknown route {route!r}")


def evaluate(m: WeightVector, e: RingElement, route: str = "signs") -> Fraction:
    """Linear extension of the top intersection pairing to degree ``n - 3`` elements."""
    if not e:
        return Fraction(0)
    if e.degree != m.n - 3:
        raise NotHomogeneousTop(f"{e} is not homogeneous of degree n - 3 = {m.n - 3}")
    total = Fraction(0)
    for mono, coeff in e.terms.items():
        total += coeff * intersect(m, mono, route)
    if all(c.denominator == 1 for c in e.terms.values()):
        assert total.denominator == 1, f"non-integral pairing {total} of integral class {e}"
    return total


def divisor_class(i: int, j: int) -> RingElement:
    """Class of the divisor where points ``i`` and ``j`` collide: ``(l_i + l_j)/2``."""
    if i == j:
        raise EqualIndices(f"divisor D_{i}{j} needs distinct indices")
    half = Fraction(1, 2)
    return RingElement.l(i) * half + RingElement.l(j) * half


def antidivisor_class(i: int, j: int) -> RingElement:
    """Antiparallel-edge cycle oriented by edge ``j``: ``(l_i - l_j)/2``."""
    if i == j:
        raise EqualIndices(f"cycle D-_{i}{j} needs distinct indices")
    half = Fraction(1, 2)
    return RingElement.l(i) * half - RingElement.l(j) * half


@dataclass(frozen=True)
class SignVector:
    """Signs on a subset ``I``, with ``signs[gamma] == +1``."""

    signs: Mapping[int, int]
    gamma: int

    def __post_init__(self):
        if self.signs.get(self.gamma) != 1:
            raise BadCenter(f"sign at gamma = {self.gamma} must be +1")
        if any(s not in (1, -1) for s in self.signs.values()):
            raise ValueError("signs must be +1 or -1")

    @property
    def subset(self) -> int:
        return bits_of(self.signs)

    def product_over(self, bits: int) -> int:
        out = 1
        for i in indices_of(bits):
            out *= self.signs[i]
        return out

    @classmethod
    def all_on(cls, I, gamma: int | None = None):
        """Every sign vector on ``I`` with the sign at ``gamma`` (default min I) pinned."""
        idx = indices_of(_as_bits(I))
        gamma = idx[0] if gamma is None else gamma
        rest = [i for i in idx if i != gamma]
        for signs in product((1, -1), repeat=len(rest)):
            yield cls({gamma: 1, **dict(zip(rest, signs))}, gamma)


def expand_d_epsilon(I, eps: SignVector | Mapping[int, int], i0: int) -> RingElement:
    """``2^(1-|I|) * prod_{i in I, i != i0} (l_{i0} + eps_i l_i)`` in normal form."""
    bits = _as_bits(I)
    signs = eps.signs if isinstance(eps, SignVector) else eps
    if not bits >> (i0 - 1) & 1:
        raise BadCenter(f"center {i0} is not in {format_subset(bits)}")
    if signs.get(i0) != 1:
        raise BadCenter(f"sign at center {i0} must be +1")
    result = RingElement.constant(Fraction(1, 2 ** (bits.bit_count() - 1)))
    center = RingElement.l(i0)
    for i in indices_of(bits):
        if i != i0:
            result = result * (center + RingElement.l(i) * signs[i])
    return result
