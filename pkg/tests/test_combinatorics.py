from itertools import combinations
from math import comb

import pytest
from hypothesis import given
from hypothesis import strategies as st

from semiflag.combinatorics import (
    Alphabet,
    Cmp,
    Kind,
    SubsetSyntaxError,
    allowed_count,
    canonical_product,
    comparable,
    compare_products,
    compare_rowsets,
    enumerate_allowed,
    forbidden_literal,
    forbidden_pair_position,
    is_allowed,
    is_chain,
    k_value,
    snake,
    subset_leq,
    tr,
    truncate,
)

A4 = Alphabet(Kind.A, 4)
A8 = Alphabet(Kind.A, 8)


def rowsets(n):
    sets = [c for k in range(1, n) for c in combinations(range(1, n + 1), k)]
    return st.sampled_from(sets)


def products(n, max_factors=3):
    return st.lists(rowsets(n), min_size=1, max_size=max_factors).map(canonical_product)


class TestAlphabet:
    def test_parse_type_c(self):
        c = Alphabet(Kind.C, 3)
        assert c.parse("1,2b,3") == (1, 4, 5)
        assert c.format((1, 4, 5)) == "1,2b,3"

    @pytest.mark.parametrize(
        "text,pos",
        [("1,x", 2), ("1, 9", 3), ("1,2b", 2), ("", 0)],
    )
    def test_error_positions(self, text, pos):
        with pytest.raises(SubsetSyntaxError) as e:
            A4.parse(text)
        assert e.value.position == pos

    def test_compact_product(self):
        assert A8.parse_product("123|46|1|1") == ((1, 2, 3), (4, 6), (1,), (1,))

    def test_weights(self):
        c = Alphabet(Kind.C, 2)
        assert c.weight(c.parse("1,1b,2b")) == (0, -1)

    def test_type_c_generators_are_allowed(self):
        c = Alphabet(Kind.C, 3)
        assert all(is_allowed(g) for g in c.generators())
        assert len(c.generators(2)) == allowed_count(3, 2)


class TestPartialOrder:
    def test_basic(self):
        assert subset_leq((1, 2), (3, 4)) is Cmp.LE
        assert subset_leq((2, 3), (1, 4)) is Cmp.INCOMPARABLE
        assert subset_leq((1, 2, 3), (4,)) is Cmp.LE
        assert is_chain([(1, 2, 3), (1, 2), (2,)])

    def test_truncation(self):
        assert tr((2, 6, 8)) == (6, 8)
        assert truncate((1, 2, 6, 8), 2) == (2, 6, 8)


class TestProductOrder:
    @pytest.mark.parametrize(
        "lhs,rhs",
        [("123|46|1|1", "78|67|36|45"), ("126|15|1|1", "123|46|3|1")],
    )
    def test_golden(self, lhs, rhs):
        assert compare_products(A8.parse_product(lhs), A8.parse_product(rhs)) == 1
        assert compare_products(A8.parse_product(rhs), A8.parse_product(lhs)) == -1

    @given(products(5), products(5))
    def test_antisymmetric_and_total(self, P, Q):
        c = compare_products(P, Q)
        assert c == -compare_products(Q, P)
        assert (c == 0) == (P == Q)

    @given(products(4), products(4), products(4))
    def test_transitive(self, P, Q, R):
        if compare_products(P, Q) > 0 and compare_products(Q, R) > 0:
            assert compare_products(P, R) > 0

    @given(products(5, 2), products(5, 2), products(5, 2))
    def test_multiplicative(self, P, Q, R):
        c = compare_products(P, Q)
        assert compare_products(canonical_product(P + R), canonical_product(Q + R)) == c

    @given(rowsets(6), rowsets(6))
    def test_single_set_order_is_restriction(self, I, J):
        assert compare_rowsets(I, J) == compare_products((I,), (J,))


class TestSnake:
    def test_examples(self):
        s = snake((2, 3), (1, 4))
        assert s.elements == (3, 2, 1) and s.k == 1
        s = snake((1, 4, 5), (2, 3, 6))
        assert s.elements == (5, 4, 3, 2, 1) and s.k == 2

    def test_orientation_free(self):
        assert snake((1, 4), (2, 3)) == snake((2, 3), (1, 4))

    @given(rowsets(6), rowsets(6))
    def test_k_vanishes_exactly_on_comparable(self, I, J):
        if I == J:
            return
        assert (k_value(I, J) == 0) == comparable(I, J)

    @given(rowsets(7), rowsets(7))
    def test_snake_strictly_decreasing(self, I, J):
        if not comparable(I, J):
            xs = snake(I, J).elements
            assert all(a > b for a, b in zip(xs, xs[1:]))


class TestAllowed:
    @pytest.mark.parametrize("n", range(2, 6))
    def test_counts(self, n):
        for l in range(2, n + 1):
            assert len(enumerate_allowed(n, l)) == comb(2 * n, l) - comb(2 * n, l - 2)

    @pytest.mark.parametrize("n", range(1, 5))
    def test_three_criteria_agree(self, n):
        for l in range(1, n + 1):
            for J in combinations(range(1, 2 * n + 1), l):
                a = is_allowed(J)
                assert a == (not forbidden_literal(J)) == (forbidden_pair_position(J) is None)

    def test_examples(self):
        assert not is_allowed((1, 2))
        assert is_allowed((3, 4))
