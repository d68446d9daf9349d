from fractions import Fraction
from itertools import combinations

import pytest

from polyspace.errors import (
    BadCenter,
    EqualIndices,
    NotHomogeneousTop,
    NotSmooth,
    ParseError,
    TooFewParts,
    WrongDegree,
)
from polyspace.intersection import (
    CycleSum,
    Partition,
    SignVector,
    antidivisor_class,
    cycle_reduction,
    divisor_class,
    evaluate,
    evaluate_monomial_by_cycles,
    evaluate_word_by_cycles,
    expand_d_epsilon,
    multiply_l_into_cycle,
    point_count,
    random_chooser,
    stability_of_partition,
    top_intersection,
)
from polyspace.positivity import quadrangle_intersection_vector, quadrangles
from polyspace.ring import Monomial, RingElement, monomial_basis
from polyspace.weights import WeightVector, bits_of, indices_of

from oracles import sign_window_sum

l = RingElement.l
P = Partition.parse


def W(text):
    return WeightVector.parse(text)


def top_monomials(n):
    return monomial_basis(n, n - 3)


class TestPartition:
    def test_canonical_order(self):
        assert P("{4 5|1 2|3}") == P("{1 2|3|4 5}")
        assert str(P("{3|2 1|5 4}")) == "{1 2|3|4 5}"

    def test_singletons(self):
        assert str(Partition.singletons(4)) == "{1|2|3|4}"

    def test_check(self):
        P("{1 2|3}").check(3)
        with pytest.raises(ValueError):
            P("{1 2|2 3}").check(3)
        with pytest.raises(ValueError):
            P("{1|2}").check(3)

    @pytest.mark.parametrize("text", ["1 2|3", "{1 2||3}", "{1 a|3}"])
    def test_parse_errors(self, text):
        with pytest.raises(ParseError):
            P(text)


class TestStability:
    def test_examples(self):
        m = W("1,1,1,1,1")
        assert stability_of_partition(m, P("{1 2|3|4|5}"))
        assert not stability_of_partition(m, P("{1 2 3|4|5}"))
        assert not stability_of_partition(m, P("{1 2|3 4 5}"))

    def test_point_count(self):
        assert point_count(W("1,1,1,1,1"), P("{1 3|2 4|5}")) == 1
        assert point_count(W("1,1,1,1,1"), P("{1 2 3|4|5}")) == 0
        assert point_count(W("1,1,1,2"), P("{1 2|3|4}")) == 1
        with pytest.raises(ValueError):
            point_count(W("1,1,1,2"), P("{1|2|3|4}"))


class TestCycleMultiplication:
    def test_four_singletons(self):
        m = W("2,2,2,3")  # every pair is short
        out = multiply_l_into_cycle(m, 1, CycleSum({Partition.singletons(4): 1}))
        assert out == {P("{1 2|3|4}"): 1, P("{1 3|2|4}"): 1, P("{1|2 3|4}"): -1}

    def test_pentagon_with_pruning(self):
        m = W("1,1,1,1,1")
        out = multiply_l_into_cycle(m, 2, CycleSum({P("{1 2|3|4|5}"): 1}))
        assert out == {P("{1 2|3 4|5}"): -1}

    def test_too_few_parts(self):
        with pytest.raises(TooFewParts):
            multiply_l_into_cycle(W("1,1,1,1,1"), 1, CycleSum({P("{1 2|3 4|5}"): 1}))

    def test_product_of_two_classes(self):
        # l_1 l_2 on the pentagon: only the three double-pair points survive, +1 +1 -1
        cycle = cycle_reduction(W("1,1,1,1,1"), Monomial(bits_of([1, 2])))
        assert all(sorted(bin(part).count("1") for part in Q) == [1, 2, 2] for Q in cycle)
        assert sorted(cycle.values()) == [-1, 1, 1]


class TestCycleRoute:
    def test_pentagon(self):
        m = W("1,1,1,1,1")
        assert evaluate_monomial_by_cycles(m, Monomial(bits_of([1, 2]))) == 1
        assert evaluate_monomial_by_cycles(m, Monomial(0, 1)) == -3

    def test_quadrilateral(self):
        assert evaluate_monomial_by_cycles(W("1,1,1,2"), Monomial(bits_of([4]))) == -1

    def test_triangle_is_a_point(self):
        assert evaluate_monomial_by_cycles(W("1,1,1"), Monomial()) == 1

    def test_errors(self):
        with pytest.raises(NotSmooth):
            evaluate_monomial_by_cycles(W("1,1,1,1"), Monomial(1))
        with pytest.raises(WrongDegree):
            evaluate_monomial_by_cycles(W("1,1,1,1,1"), Monomial(1))

    def test_square_is_p_for_every_index(self, small_sample):
        for m in small_sample:
            if m.n < 5:
                continue
            rest = list(range(1, m.n - 4))  # fill the remaining degree with distinct l's
            for j in range(1, m.n + 1):
                word = [j, j] + rest
                expected = top_intersection(m, bits_of(rest), 1) if rest else top_intersection(m, 0, 1)
                assert evaluate_word_by_cycles(m, word) == expected


class TestSignRoute:
    def test_pentagon(self):
        m = W("1,1,1,1,1")
        assert top_intersection(m, bits_of([1, 2]), 0) == 1
        assert top_intersection(m, 0, 1) == -3
        for i, j in combinations(range(1, 6), 2):
            assert top_intersection(m, bits_of([i, j]), 0) == 1

    def test_quadrilateral(self):
        m = W("1,1,1,2")
        assert [top_intersection(m, bits_of([i]), 0) for i in range(1, 5)] == [1, 1, 1, -1]

    def test_wrong_degree(self):
        with pytest.raises(WrongDegree):
            top_intersection(W("1,1,1,1,1"), bits_of([1]), 0)
        with pytest.raises(WrongDegree):
            top_intersection(W("1,1,1,1,1"), 0, -1)

    def test_matches_direct_oracle(self, small_sample):
        for m in small_sample:
            n = m.n
            for mono in top_monomials(n):
                J = indices_of(mono.lset)
                free = [i for i in range(n, 0, -1) if i not in J]
                expected = sign_window_sum(m.entries, J, mono.ppow, free[0], free[1],
                                           min(i for i in range(1, n + 1) if i not in free[:2]))
                assert top_intersection(m, mono.lset, mono.ppow) == expected

    def test_choice_independence_exhaustive(self, small_sample):
        for m in small_sample:
            n = m.n
            for mono in top_monomials(n):
                J = set(indices_of(mono.lset))
                reference = top_intersection(m, mono.lset, mono.ppow)
                outside = [i for i in range(1, n + 1) if i not in J]
                for a, b in combinations(outside, 2):
                    I = [i for i in range(1, n + 1) if i not in (a, b)]
                    for gamma in I:
                        got = top_intersection(m, mono.lset, mono.ppow, (a, b), gamma)
                        assert got == reference, (str(m), str(mono), a, b, gamma)


def test_routes_agree(small_sample):
    for m in small_sample:
        for mono in top_monomials(m.n):
            assert top_intersection(m, mono.lset, mono.ppow) == evaluate_monomial_by_cycles(m, mono)


def test_cycle_route_choice_independence(small_sample, seed):
    for idx, m in enumerate(small_sample):
        for mono in top_monomials(m.n):
            reference = evaluate_monomial_by_cycles(m, mono)
            chooser = random_chooser(seed + idx)
            assert evaluate_monomial_by_cycles(m, mono, choose=chooser) == reference
            for gamma in range(1, m.n + 1):
                assert evaluate_monomial_by_cycles(m, mono, gamma=gamma) == reference


class TestEvaluate:
    def test_anticanonical_square_pentagon(self):
        c1 = sum((l(i) for i in range(1, 6)), RingElement())
        assert evaluate(W("1,1,1,1,1"), c1 * c1) == 5
        assert evaluate(W("1,1,1,1,1"), c1 * c1, route="cycles") == 5

    def test_quadrilateral_c1(self):
        c1 = sum((l(i) for i in range(1, 5)), RingElement())
        assert evaluate(W("1,1,1,2"), c1) == 2

    def test_zero(self):
        assert evaluate(W("1,1,1,1,1"), RingElement()) == 0

    def test_not_top(self):
        with pytest.raises(NotHomogeneousTop):
            evaluate(W("1,1,1,1,1"), l(1))
        with pytest.raises(NotHomogeneousTop):
            evaluate(W("1,1,1,1,1"), l(1) * l(2) + l(1))

    def test_half_integral(self):
        assert evaluate(W("1,1,1,2"), divisor_class(1, 2)) == 1
        assert evaluate(W("1,1,1,2"), divisor_class(1, 4)) == 0
        assert evaluate(W("1,1,1,2"), antidivisor_class(1, 4)) == 1


class TestDivisors:
    def test_classes(self):
        half = Fraction(1, 2)
        assert divisor_class(1, 2) == l(1) * half + l(2) * half
        assert antidivisor_class(1, 2) == l(1) * half - l(2) * half

    def test_equal_indices(self):
        with pytest.raises(EqualIndices):
            divisor_class(3, 3)
        with pytest.raises(EqualIndices):
            antidivisor_class(2, 2)

    def test_linear_relation_quadruples(self, small_sample):
        """D_ij + D_kl pairs the same way for all three pairings of a quadruple."""
        for m in small_sample[::2]:
            n = m.n
            for quad in combinations(range(1, n + 1), 4):
                i, j, k, q = quad
                pairings = [((i, j), (k, q)), ((i, k), (j, q)), ((i, q), (j, k))]
                for X in monomial_basis(n, n - 4):
                    Xe = RingElement.monomial(X)
                    vals = {evaluate(m, divisor_class(*a) * Xe) + evaluate(m, divisor_class(*b) * Xe)
                            for a, b in pairings}
                    assert len(vals) == 1

    def test_antiparallel_pairing_with_quadrangles(self, small_sample):
        """(l_i - l_j)/2 on D_IJKL is +-1 when I, J can be antiparallel, else 0."""
        for m in small_sample:
            ints, _ = m.scaled
            for quad in quadrangles(m):
                vec = quadrangle_intersection_vector(m, quad)
                mass = {part: sum(ints[i - 1] for i in indices_of(part)) for part in quad.parts}
                for A in quad.parts:
                    for B in quad.parts:
                        if A == B:
                            continue
                        K, L = [X for X in quad.parts if X not in (A, B)]
                        window = abs(mass[K] - mass[L]) < abs(mass[A] - mass[B]) < mass[K] + mass[L]
                        expected = (1 if mass[A] < mass[B] else -1) if window else 0
                        for i in indices_of(A):
                            for j in indices_of(B):
                                assert Fraction(vec[i - 1] - vec[j - 1], 2) == expected


class TestDEpsilon:
    def test_two_element(self):
        assert expand_d_epsilon(bits_of([1, 2]), {1: 1, 2: 1}, 1) == divisor_class(1, 2)
        assert expand_d_epsilon(bits_of([1, 2]), {1: 1, 2: -1}, 1) == antidivisor_class(1, 2)

    def test_three_element(self):
        got = expand_d_epsilon(bits_of([1, 2, 3]), {1: 1, 2: 1, 3: 1}, 1)
        expected = RingElement.parse("1/4*p + 1/4*l1*l2 + 1/4*l1*l3 + 1/4*l2*l3")
        assert got == expected

    def test_coefficient_pattern(self):
        """Coefficients are 2^(1-|I|) eps_J on l_J p^k with |I minus J| = 2k + 1."""
        I = [1, 2, 4, 5]
        eps = {1: 1, 2: -1, 4: 1, 5: -1}
        got = expand_d_epsilon(bits_of(I), eps, 1)
        expected = {}
        for r in range(len(I) + 1):
            for J in combinations(I, r):
                rest = len(I) - r
                if rest % 2 == 1:
                    sign = 1
                    for j in J:
                        sign *= eps[j]
                    expected[Monomial(bits_of(J), (rest - 1) // 2)] = Fraction(sign, 2 ** (len(I) - 1))
        assert got == RingElement(expected)

    def test_center_independent(self):
        for members in ([1, 3, 4], [1, 2, 4, 5]):
            I = bits_of(members)
            for eps in SignVector.all_on(I):
                for center in members[1:]:
                    # recentre so the new center carries +1; each l_J picks up flip^|J|
                    flip = eps.signs[center]
                    recentred = {i: s * flip for i, s in eps.signs.items()}
                    moved = expand_d_epsilon(I, recentred, center) * flip ** (len(members) - 1)
                    assert moved == expand_d_epsilon(I, eps, members[0])

    def test_bad_center(self):
        with pytest.raises(BadCenter):
            expand_d_epsilon(bits_of([1, 2]), {1: 1, 2: 1}, 3)
        with pytest.raises(BadCenter):
            expand_d_epsilon(bits_of([1, 2]), {1: -1, 2: 1}, 1)
        with pytest.raises(BadCenter):
            SignVector({1: -1, 2: 1}, 1)

    @pytest.mark.parametrize("size", range(1, 6))
    def test_sign_sum_recovers_monomial(self, size):
        I = bits_of(range(1, size + 1))
        for r in range(size + 1):
            for J in combinations(range(1, size + 1), r):
                if (size - r) % 2 == 0:
                    continue
                total = RingElement()
                for eps in SignVector.all_on(I):
                    total = total + expand_d_epsilon(I, eps, eps.gamma) * eps.product_over(bits_of(J))
                assert total == RingElement.monomial(Monomial(bits_of(J), (size - r - 1) // 2))

    def test_theorem_consistency_n5(self):
        """Sum of eps_J D_I^eps paired with complementary monomials matches the sign route."""
        for m in (W("1,1,1,1,1"), W("3,1,1,1,1"), W("3,3,3,1,1"), W("1,2,2,3,3"), W("5,4,3,2,1")):
            ints, total = m.scaled
            for size in range(2, 5):
                for I in combinations(range(1, 6), size):
                    if 2 * sum(ints[i - 1] for i in I) <= total:
                        continue
                    I_bits = bits_of(I)
                    for r in range(size + 1):
                        for J in combinations(I, r):
                            if (size - r) % 2 == 0:
                                continue
                            k = (size - r - 1) // 2
                            for X in monomial_basis(5, 2 - (r + 2 * k)):
                                Xe = RingElement.monomial(X)
                                lhs = sum(evaluate(m, expand_d_epsilon(I_bits, eps, eps.gamma) * Xe)
                                          * eps.product_over(bits_of(J))
                                          for eps in SignVector.all_on(I_bits))
                                rhs = evaluate(m, RingElement.monomial(Monomial(bits_of(J), k)) * Xe)
                                assert lhs == rhs

    def test_top_d_epsilon_closed_form(self, small_sample):
        """For |I| = n - 2, D_I^eps pairs to eps_I sgn(s) inside the window, else 0."""
        for m in small_sample[::2]:
            ints, _ = m.scaled
            n = m.n
            for I in combinations(range(1, n + 1), n - 2):
                a, b = [i for i in range(1, n + 1) if i not in I]
                for eps in SignVector.all_on(bits_of(I)):
                    s = sum(eps.signs[i] * ints[i - 1] for i in I)
                    inside = abs(ints[a - 1] - ints[b - 1]) < abs(s) < ints[a - 1] + ints[b - 1]
                    expected = (1 if s > 0 else -1) * eps.product_over(bits_of(I)) if inside else 0
                    got = evaluate(m, expand_d_epsilon(bits_of(I), eps, eps.gamma), route="cycles")
                    assert got == expected
