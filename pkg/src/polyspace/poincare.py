"""Poincare polynomials and Betti numbers of polygon spaces.

The closed form is::

    P(q) * q * (q - 1) = (1 + q)^(n-1) - sum over I with m_I <= m/2 of q^|I|

Only even degrees carry cohomology, so ``P`` is written in ``q = t^2``.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Sequence

from .errors import NonExactDivision, ParseError
from .weights import WeightVector, iter_masses, require_smooth


@dataclass(frozen=True)
class IntPolynomial:
    """Dense integer polynomial in ``q``; ``coefficients[d]`` is the q^d coefficient."""

    coefficients: tuple[int, ...] = ()

    def __post_init__(self):
        coeffs = list(self.coefficients)
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        object.__setattr__(self, "coefficients", tuple(int(c) for c in coeffs))

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coefficients) - 1

    def __getitem__(self, d: int) -> int:
        return self.coefficients[d] if 0 <= d < len(self.coefficients) else 0

    def __call__(self, q):
        acc = 0
        for c in reversed(self.coefficients):
            acc = acc * q + c
        return acc

    def __add__(self, other: "IntPolynomial") -> "IntPolynomial":
        size = max(len(self.coefficients), len(other.coefficients))
        return IntPolynomial(tuple(self[d] + other[d] for d in range(size)))

    def __neg__(self):
        return IntPolynomial(tuple(-c for c in self.coefficients))

    def __sub__(self, other: "IntPolynomial") -> "IntPolynomial":
        return self + (-other)

    def __mul__(self, other: "IntPolynomial") -> "IntPolynomial":
        if not self.coefficients or not other.coefficients:
            return IntPolynomial()
        out = [0] * (len(self.coefficients) + len(other.coefficients) - 1)
        for i, a in enumerate(self.coefficients):
            for j, b in enumerate(other.coefficients):
                out[i + j] += a * b
        return IntPolynomial(tuple(out))

    def divide_by_q(self) -> "IntPolynomial":
        if self[0] != 0:
            raise NonExactDivision(f"{self} is not divisible by q (remainder {self[0]})")
        return IntPolynomial(self.coefficients[1:])

    def divide_by_q_minus_1(self) -> "IntPolynomial":
        """Synthetic division by ``q - 1``; raises unless the remainder is zero."""
        if not self.coefficients:
            return self
        quotient = [0] * self.degree
        carry = 0
        for d in range(self.degree, 0, -1):
            carry += self.coefficients[d]
            quotient[d - 1] = carry
        remainder = carry + self.coefficients[0]
        if remainder != 0:
            raise NonExactDivision(f"{self} is not divisible by q - 1 (remainder {remainder})")
        return IntPolynomial(tuple(quotient))

    def is_palindromic(self) -> bool:
        return self.coefficients == self.coefficients[::-1]

    def __str__(self):
        if not self.coefficients:
            return "0"
        pieces = []
        for d, c in enumerate(self.coefficients):
            if c == 0:
                continue
            mag = abs(c)
            if d == 0:
                body = str(mag)
            else:
                var = "q" if d == 1 else f"q^{d}"
                body = var if mag == 1 else f"{mag}*{var}"
            if not pieces:
                pieces.append(body if c > 0 else f"-{body}")
            else:
                pieces.append(("+ " if c > 0 else "- ") + body)
        return " ".join(pieces)

    def to_json(self) -> list[str]:
        return [str(c) for c in self.coefficients]

    @classmethod
    def from_json(cls, data: Sequence[str]) -> "IntPolynomial":
        try:
            return cls(tuple(int(c) for c in data))
        except (TypeError, ValueError) as exc:
            raise ParseError(f"bad polynomial coefficients: {exc}") from None


def short_histogram(m: WeightVector) -> list[int]:
    """Number of subsets with ``m_I <= m/2`` in each cardinality 0..n."""
    _, total = m.scaled
    hist = [0] * (m.n + 1)
    for bits, mass in iter_masses(m):
        if 2 * mass <= total:
            hist[bits.bit_count()] += 1
    return hist


def numerator_polynomial(m: WeightVector) -> IntPolynomial:
    """``(1 + q)^(n-1) - sum q^|I|`` before division by ``q (q - 1)``."""
    binom = IntPolynomial(tuple(comb(m.n - 1, d) for d in range(m.n)))
    return binom - IntPolynomial(tuple(short_histogram(m)))


def poincare_polynomial(m: WeightVector) -> IntPolynomial:
    require_smooth(m)
    poly = numerator_polynomial(m).divide_by_q().divide_by_q_minus_1()
    if poly.degree != m.n - 3 or poly[0] != 1:
        raise NonExactDivision(f"unexpected Poincare polynomial {poly} for n = {m.n}")
    return poly


def betti_numbers(m: WeightVector) -> list[int]:
    """Even Betti numbers ``b_0, b_2, ..., b_{2(n-3)}``."""
    return list(poincare_polynomial(m).coefficients)


def euler_characteristic(m: WeightVector) -> int:
    return poincare_polynomial(m)(1)
