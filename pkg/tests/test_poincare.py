from math import comb

import pytest
from hypothesis import given, settings, strategies as st

from polyspace.errors import NonExactDivision, NotSmooth, ParseError
from polyspace.poincare import (
    IntPolynomial,
    betti_numbers,
    euler_characteristic,
    numerator_polynomial,
    poincare_polynomial,
    short_histogram,
)
from polyspace.weights import WeightVector, chamber_signature, massive_points

from oracles import poincare_by_long_division


def W(text):
    return WeightVector.parse(text)


class TestIntPolynomial:
    def test_trailing_zeros_stripped(self):
        p = IntPolynomial((1, 2, 0, 0))
        assert p.coefficients == (1, 2)
        assert p.degree == 1
        assert IntPolynomial().degree == -1

    def test_arithmetic(self):
        a = IntPolynomial((1, 1))
        assert a * a == IntPolynomial((1, 2, 1))
        assert a - a == IntPolynomial()
        assert (a * a)(2) == 9

    def test_division_by_q(self):
        assert IntPolynomial((0, 3, 4)).divide_by_q() == IntPolynomial((3, 4))
        with pytest.raises(NonExactDivision):
            IntPolynomial((1, 3)).divide_by_q()

    def test_division_by_q_minus_1(self):
        # q^3 - 1 = (q - 1)(q^2 + q + 1)
        assert IntPolynomial((-1, 0, 0, 1)).divide_by_q_minus_1() == IntPolynomial((1, 1, 1))
        with pytest.raises(NonExactDivision):
            IntPolynomial((1, 0, 1)).divide_by_q_minus_1()

    @pytest.mark.parametrize("coeffs,text", [
        ((1, 5, 1), "1 + 5*q + q^2"),
        ((1, 0, 2), "1 + 2*q^2"),
        ((0, -1, 0, 1), "-q + q^3"),
        ((), "0"),
    ])
    def test_render(self, coeffs, text):
        assert str(IntPolynomial(coeffs)) == text

    def test_json_roundtrip(self):
        p = IntPolynomial((1, 22, 7, -3))
        assert IntPolynomial.from_json(p.to_json()) == p
        with pytest.raises(ParseError):
            IntPolynomial.from_json(["1", "x"])


class TestExamples:
    def test_quadrilateral(self):
        m = W("1,1,1,2")
        assert numerator_polynomial(m) == IntPolynomial((0, -1, 0, 1))
        assert poincare_polynomial(m) == IntPolynomial((1, 1))
        assert betti_numbers(m) == [1, 1]
        assert euler_characteristic(m) == 2

    def test_pentagon(self):
        m = W("1,1,1,1,1")
        assert short_histogram(m) == [1, 5, 10, 0, 0, 0]
        assert str(poincare_polynomial(m)) == "1 + 5*q + q^2"
        assert betti_numbers(m) == [1, 5, 1]
        assert euler_characteristic(m) == 7

    def test_one_massive_is_projective_plane(self):
        m = W("3,1,1,1,1")
        assert betti_numbers(m) == [1, 1, 1]
        assert euler_characteristic(m) == 3

    def test_three_massive_is_product_of_lines(self):
        assert betti_numbers(W("3,3,3,1,1")) == [1, 2, 1]

    def test_triangle(self):
        assert betti_numbers(W("1,1,1")) == [1]

    def test_wall(self):
        with pytest.raises(NotSmooth):
            poincare_polynomial(W("1,1,1,1"))


def _smooth(entries):
    try:
        m = WeightVector(entries)
    except ValueError:
        return None
    try:
        chamber_signature(m)
    except NotSmooth:
        return None
    return m


weights_strategy = st.lists(st.integers(1, 25), min_size=3, max_size=10)


@settings(max_examples=120, deadline=None)
@given(weights_strategy)
def test_matches_long_division_oracle(entries):
    m = _smooth(entries)
    if m is None:
        return
    assert betti_numbers(m) == poincare_by_long_division(entries)


@settings(max_examples=120, deadline=None)
@given(weights_strategy)
def test_palindromic_and_positive(entries):
    m = _smooth(entries)
    if m is None:
        return
    b = betti_numbers(m)
    assert len(b) == m.n - 2
    assert b == b[::-1]
    assert all(x >= 1 for x in b)
    assert euler_characteristic(m) == sum(b) > 0


@pytest.mark.parametrize("n", range(3, 17, 2))
def test_divisible_unit_weights(n):
    # exact division for odd n up to 15; degree and constant term checked inside
    poly = poincare_polynomial(WeightVector([1] * n))
    assert poly.degree == n - 3


def test_divisible_n16():
    m = WeightVector([1] * 15 + [2])
    assert poincare_polynomial(m).is_palindromic()


@settings(max_examples=40, deadline=None)
@given(weights_strategy)
def test_massive_point_shapes(entries):
    m = _smooth(entries)
    if m is None:
        return
    report = massive_points(m)
    b = betti_numbers(m)
    if report.one:
        assert b == [1] * (m.n - 2)
    if report.three:
        assert b == [comb(m.n - 3, k) for k in range(m.n - 2)]


def test_chamber_invariance():
    a, b = W("3,1,1,1,1"), W("5,2,2,2,2")
    assert chamber_signature(a) == chamber_signature(b)
    assert poincare_polynomial(a) == poincare_polynomial(b)
