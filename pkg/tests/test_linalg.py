from fractions import Fraction
from itertools import permutations

from hypothesis import given
from hypothesis import strategies as st

from semiflag.linalg import bareiss_det, rank, solve


def leibniz(M):
    n = len(M)
    total = 0
    for p in permutations(range(n)):
        sign = 1
        for i in range(n):
            for j in range(i + 1, n):
                if p[i] > p[j]:
                    sign = -sign
        term = sign
        for i in range(n):
            term *= M[i][p[i]]
        total += term
    return total


square = st.integers(1, 4).flatmap(
    lambda n: st.lists(st.lists(st.integers(-4, 4), min_size=n, max_size=n), min_size=n, max_size=n)
)


@given(square)
def test_bareiss_matches_leibniz(M):
    assert bareiss_det(M) == leibniz(M)


@given(square)
def test_rank_full_iff_det_nonzero(M):
    rows = [{j: v for j, v in enumerate(r) if v} for r in M]
    assert (rank(rows) == len(M)) == (leibniz(M) != 0)


def test_rank_with_fractions_and_dependency():
    rows = [{0: Fraction(1, 2), 1: 1}, {0: 1, 1: 2}, {2: 3}]
    assert rank(rows) == 2


def test_solve():
    x = solve([[2, 1], [1, 3]], [3, 5])
    assert x == [Fraction(4, 5), Fraction(7, 5)]
