"""Exact rank computations over the rationals via fraction-free elimination.

Rows are sparse ``{column: int}`` dicts.  Rational input is cleared of
denominators first, so all arithmetic stays in Python integers.
"""

from __future__ import annotations

from fractions import Fraction
from functools import reduce
from math import gcd, lcm
from typing import Iterable, Mapping


def _primitive(row: dict[int, int]) -> dict[int, int]:
    g = reduce(gcd, row.values(), 0)
    if g > 1:
        return {c: v // g for c, v in row.items()}
    return row


def integer_row(row: Mapping[int, Fraction | int]) -> dict[int, int]:
    """Scale a rational row to a primitive integer row with the same span."""
    den = reduce(lcm, (Fraction(v).denominator for v in row.values()), 1)
    return _primitive({c: int(Fraction(v) * den) for c, v in row.items() if v != 0})


class EchelonBasis:
    """Incrementally maintained row echelon form, keyed by leading column."""

    def __init__(self):
        self.pivots: dict[int, dict[int, int]] = {}

    def __len__(self):
        return len(self.pivots)

    def reduce(self, row: Mapping[int, Fraction | int]) -> dict[int, int]:
        """Eliminate pivots from ``row`` until its leading column is free.

        Returns an empty dict when the row lies in the current span.
        """
        work = integer_row(row)
        while work:
            col = min(work)
            pivot = self.pivots.get(col)
            if pivot is None:
                break
            a, b = pivot[col], work[col]
            g = gcd(a, b)
            sa, sb = a // g, b // g
            new = {c: sa * v for c, v in work.items()}
            for c, v in pivot.items():
                nv = new.get(c, 0) - sb * v
                if nv:
                    new[c] = nv
                else:
                    del new[c]
            work = _primitive(new)
        return work

    def add(self, row: Mapping[int, Fraction | int]) -> bool:
        """Insert a row; True if it increased the rank."""
        reduced = self.reduce(row)
        if not reduced:
            return False
        self.pivots[min(reduced)] = reduced
        return True


def rank(rows: Iterable[Mapping[int, Fraction | int]]) -> int:
    basis = EchelonBasis()
    for row in rows:
        basis.add(row)
    return len(basis)


def dense_rank(matrix: Iterable[Iterable[Fraction | int]]) -> int:
    return rank({c: v for c, v in enumerate(r) if v != 0} for r in matrix)
