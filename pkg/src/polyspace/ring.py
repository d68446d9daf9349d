"""Cohomology ring presentation in the natural-bundle classes ``l_1..l_n`` and ``p``.

The ambient ring is ``Q[l_1..l_n, p] / (l_i^2 - p)``, which is free with basis
the normal-form monomials ``l_J p^k`` (``J`` squarefree).  Each long subset
``I`` adds the relation ``sum_{2k + r = |I| - 1} p^k sigma_r(l_I) = 0``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb
from typing import Iterable, Iterator, Mapping

from .errors import DegreeOutOfRange, ParseError
from .linalg import EchelonBasis
from .weights import (
    SubsetClass,
    SubsetMask,
    WeightVector,
    bits_of,
    format_rational,
    indices_of,
    parse_rational,
    require_smooth,
    subsets_of_class,
)


@dataclass(frozen=True, order=True)
class Monomial:
    """``l_J * p^k`` with ``J`` a bitmask.

    Ordering is the elimination order: degree, then p power, then ``J``.
    """

    sort_key: tuple[int, int, int]

    def __init__(self, lset: int = 0, ppow: int = 0):
        if lset < 0 or ppow < 0:
            raise ValueError("monomial exponents must be nonnegative")
        object.__setattr__(self, "sort_key", (lset.bit_count() + 2 * ppow, ppow, lset))

    @property
    def lset(self) -> int:
        return self.sort_key[2]

    @property
    def ppow(self) -> int:
        return self.sort_key[1]

    @property
    def degree(self) -> int:
        return self.sort_key[0]

    def __mul__(self, other: "Monomial") -> "Monomial":
        # l_i * l_i -> p for every shared index
        shared = self.lset & other.lset
        return Monomial(self.lset ^ other.lset, self.ppow + other.ppow + shared.bit_count())

    def __repr__(self):
        return f"Monomial({self})"

    def __str__(self):
        factors = [f"l{i}" for i in indices_of(self.lset)]
        if self.ppow == 1:
            factors.append("p")
        elif self.ppow > 1:
            factors.append(f"p^{self.ppow}")
        return "*".join(factors) if factors else "1"

    @classmethod
    def parse(cls, text: str, n: int | None = None) -> "Monomial":
        """Strict ``l1*l2*p^2`` parser: repeated l indices are rejected."""
        lset = 0
        ppow = 0
        stripped = text.strip()
        if not stripped:
            raise ParseError("empty monomial", 0)
        if stripped == "1":
            return cls()
        pos = text.index(stripped[0])
        for factor in stripped.split("*"):
            token = factor.strip()
            match = _FACTOR.fullmatch(token)
            if not match:
                raise ParseError(f"bad factor {token!r}", pos)
            if match.group("l"):
                i = int(match.group("l"))
                if i < 1 or (n is not None and i > n):
                    raise ParseError(f"index {i} out of range", pos)
                if lset >> (i - 1) & 1:
                    raise ParseError(f"repeated l{i}; write p for l{i}^2", pos)
                lset |= 1 << (i - 1)
            else:
                ppow += int(match.group("pexp") or 1)
            pos += len(factor) + 1
        return cls(lset, ppow)


_FACTOR = re.compile(r"l(?P<l>\d+)|p(?:\^(?P<pexp>\d+))?")
_TERM_SPLIT = re.compile(r"\s*([+-])\s*")


ONE = Monomial()


class RingElement:
    """Finite rational combination of normal-form monomials."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Monomial, Fraction | int] | None = None):
        clean = {}
        for mono, coeff in (terms or {}).items():
            coeff = Fraction(coeff)
            if coeff:
                clean[mono] = coeff
        self.terms: dict[Monomial, Fraction] = clean

    @classmethod
    def monomial(cls, mono: Monomial, coeff=1) -> "RingElement":
        return cls({mono: coeff})

    @classmethod
    def l(cls, i: int) -> "RingElement":
        return cls({Monomial(1 << (i - 1)): 1})

    @classmethod
    def p(cls, k: int = 1) -> "RingElement":
        return cls({Monomial(0, k): 1})

    @classmethod
    def constant(cls, c) -> "RingElement":
        return cls({ONE: c})

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = RingElement.constant(other)
        if not isinstance(other, RingElement):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other: "RingElement") -> "RingElement":
        if isinstance(other, (int, Fraction)):
            other = RingElement.constant(other)
        out = dict(self.terms)
        for mono, c in other.terms.items():
            out[mono] = out.get(mono, 0) + c
        return RingElement(out)

    __radd__ = __add__

    def __neg__(self):
        return RingElement({m: -c for m, c in self.terms.items()})

    def __sub__(self, other: "RingElement") -> "RingElement":
        return self + (-other)

    def __mul__(self, other) -> "RingElement":
        if isinstance(other, (int, Fraction)):
            return RingElement({m: c * other for m, c in self.terms.items()})
        if not isinstance(other, RingElement):
            return NotImplemented
        return multiply(self, other)

    def __rmul__(self, other) -> "RingElement":
        if isinstance(other, (int, Fraction)):
            return self * other
        return NotImplemented

    def __pow__(self, k: int) -> "RingElement":
        result = RingElement.constant(1)
        for _ in range(k):
            result = result * self
        return result

    def degrees(self) -> set[int]:
        return {m.degree for m in self.terms}

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    @property
    def degree(self) -> int | None:
        """Common degree of a homogeneous element; None for zero or mixed."""
        degs = self.degrees()
        return degs.pop() if len(degs) == 1 else None

    def sorted_terms(self) -> list[tuple[Monomial, Fraction]]:
        return sorted(self.terms.items())

    def __repr__(self):
        return f"RingElement({str(self)!r})"

    def __str__(self):
        if not self.terms:
            return "0"
        pieces = []
        for mono, c in self.sorted_terms():
            mag = abs(c)
            body = str(mono)
            if body == "1":
                body = format_rational(mag)
            elif mag != 1:
                body = f"{format_rational(mag)}*{body}"
            if not pieces:
                pieces.append(body if c > 0 else f"-{body}")
            else:
                pieces.append(("+ " if c > 0 else "- ") + body)
        return " ".join(pieces)

    @classmethod
    def parse(cls, text: str, n: int | None = None) -> "RingElement":
        """Parse ``"1/2*l1 - l2*p + 3"``; repeated l factors are reduced via l^2 = p."""
        stripped = text.strip()
        if not stripped:
            raise ParseError("empty expression", 0)
        if stripped == "0":
            return cls()
        chunks = _TERM_SPLIT.split(stripped)
        # split yields [term, sign, term, sign, term, ...]
        signs = ["+"] + chunks[1::2]
        terms = chunks[0::2]
        if signs and terms[0] == "":
            signs, terms = signs[1:], terms[1:]
        total = cls()
        pos = 0
        for sign, term in zip(signs, terms):
            if not term:
                raise ParseError("dangling operator", pos)
            coeff = Fraction(1)
            factors = []
            for factor in term.split("*"):
                factor = factor.strip()
                if re.fullmatch(r"\d+(?:/\d+)?", factor):
                    coeff *= parse_rational(factor, pos)
                else:
                    factors.append(factor)
            element = cls.constant(-coeff if sign == "-" else coeff)
            for factor in factors:
                element = element * cls.monomial(Monomial.parse(factor, n))
            total = total + element
            pos += len(term) + 1
        return total

    def to_json(self) -> list[dict]:
        return [
            {"coeff": format_rational(c), "l": list(indices_of(m.lset)), "p": m.ppow}
            for m, c in self.sorted_terms()
        ]

    @classmethod
    def from_json(cls, data: Iterable[Mapping]) -> "RingElement":
        out = {}
        for term in data:
            mono = Monomial(bits_of(term["l"]), int(term["p"]))
            try:
                coeff = Fraction(str(term["coeff"]))
            except ValueError:
                raise ParseError(f"bad coefficient {term['coeff']!r}") from None
            out[mono] = out.get(mono, 0) + coeff
        return cls(out)


def multiply(a: RingElement, b: RingElement) -> RingElement:
    """Product in ``Q[l, p] / (l_i^2 - p)``; long-set relations are not applied."""
    out: dict[Monomial, Fraction] = {}
    for ma, ca in a.terms.items():
        for mb, cb in b.terms.items():
            mono = ma * mb
            out[mono] = out.get(mono, 0) + ca * cb
    return RingElement(out)


def relation_for_long_set(I) -> RingElement:
    """``sum_{2k + r = |I| - 1} p^k sigma_r(l_I)`` expanded into monomials."""
    bits = I.bits if isinstance(I, SubsetMask) else int(I)
    top = bits.bit_count() - 1
    members = [1 << i for i in range(bits.bit_length()) if bits >> i & 1]
    terms = {}
    for r in range(top, -1, -2):
        k = (top - r) // 2
        for combo in combinations(members, r):
            terms[Monomial(sum(combo), k)] = 1
    return RingElement(terms)


@dataclass(frozen=True)
class RingPresentation:
    n: int
    long_sets: tuple[int, ...]
    relations: tuple[RingElement, ...]

    def __len__(self):
        return len(self.relations)

    def __iter__(self) -> Iterator[tuple[int, RingElement]]:
        return iter(zip(self.long_sets, self.relations))


def presentation(m: WeightVector) -> RingPresentation:
    require_smooth(m)
    longs = tuple(subsets_of_class(m, SubsetClass.LONG))
    return RingPresentation(m.n, longs, tuple(relation_for_long_set(I) for I in longs))


def monomial_basis(n: int, d: int) -> list[Monomial]:
    """Normal-form monomials of degree ``d`` in elimination order."""
    out = []
    for k in range(d // 2 + 1):
        r = d - 2 * k
        if r > n:
            continue
        for combo in combinations(range(n), r):
            out.append(Monomial(sum(1 << i for i in combo), k))
    out.sort()
    return out


def ambient_dimension(n: int, d: int) -> int:
    return sum(comb(n, d - 2 * k) for k in range(d // 2 + 1))


def _relation_rank(n: int, relations: Iterable[tuple[int, RingElement]], d: int,
                   column: Mapping[Monomial, int]) -> int:
    basis = EchelonBasis()
    target = len(column)
    for bits, rel in relations:
        shift = d - (bits.bit_count() - 1)
        if shift < 0:
            continue
        for mono in monomial_basis(n, shift):
            row = {}
            for rm, c in rel.terms.items():
                col = column[rm * mono]
                row[col] = row.get(col, 0) + c
            basis.add(row)
            if len(basis) == target:
                return target
    return len(basis)


def graded_dimension(m: WeightVector, d: int, pres: RingPresentation | None = None) -> int:
    """Dimension of the degree-``d`` part of the quotient ring, by exact rank."""
    if not 0 <= d <= m.n - 3:
        raise DegreeOutOfRange(f"degree {d} outside 0..{m.n - 3}")
    pres = pres or presentation(m)
    basis = monomial_basis(m.n, d)
    column = {mono: idx for idx, mono in enumerate(basis)}
    return len(basis) - _relation_rank(m.n, pres, d, column)


def graded_dimensions(m: WeightVector) -> list[int]:
    pres = presentation(m)
    return [graded_dimension(m, d, pres) for d in range(m.n - 2)]
