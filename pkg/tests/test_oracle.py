import json
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from semiflag.combinatorics import Alphabet, Kind
from semiflag.jetpoly import evaluate_series
from semiflag.minors import GenericJetMatrix
from semiflag.oracle import (
    dumps,
    evaluate_monomial,
    mat_identity,
    point_from_json,
    random_sl_point,
    random_sp_point,
    series_det,
    sl_point_from_parts,
    sp_point_from_blocks,
)


def test_identity_parts():
    I = mat_identity(2, 3)
    pt = sl_point_from_parts(2, 3, I, [[1, 0, 0, 0]], I)
    assert pt.matrix == I
    assert evaluate_monomial(pt, [((1,), 0)]) == 1
    assert evaluate_monomial(pt, [((1,), 1)]) == 0


def test_geometric_inverse():
    I = mat_identity(2, 3)
    pt = sl_point_from_parts(2, 3, I, [[Fraction(1), Fraction(1), 0, 0]], I)
    assert pt.matrix[1][1] == [1, -1, 1, -1]
    assert evaluate_monomial(pt, [((1,), 1)]) == 1


def test_zero_factors_give_identity():
    pt = random_sp_point(2, 2, seed=0, nfactors=0)
    assert pt.matrix == mat_identity(4, 2) and pt.check()


@given(st.integers(0, 2**63 - 1), st.integers(2, 4))
def test_sl_points_have_unit_determinant(seed, n):
    pt = random_sl_point(n, 2, seed)
    assert series_det(pt.matrix) == [1, 0, 0]


@given(st.integers(0, 2**63 - 1), st.integers(1, 3))
def test_sp_points_preserve_form(seed, n):
    assert random_sp_point(n, 2, seed).check()


def test_rank_one_is_sl2():
    pt = random_sp_point(1, 3, 7)
    assert series_det(pt.matrix) == [1, 0, 0, 0]


@pytest.mark.parametrize("n", [2, 3])
def test_isotropy_relations_vanish(n):
    pt = random_sp_point(n, 4, 11)
    for u in range(1, n + 1):
        for v in range(1, n + 1):
            acc = [Fraction(0)] * 5
            for l in range(1, n + 1):
                a, b = pt.entry(2 * l - 1, u), pt.entry(2 * l, v)
                c, d = pt.entry(2 * l, u), pt.entry(2 * l - 1, v)
                for i in range(5):
                    for j in range(5 - i):
                        acc[i + j] += a[i] * b[j] - c[i] * d[j]
            assert not any(acc)


def test_corrupted_block_is_caught():
    B = mat_identity(2, 1)
    B[0][1] = [Fraction(1), Fraction(0)]
    with pytest.raises(AssertionError):
        sp_point_from_blocks(1, 1, [[B[0][0], B[0][1]], [B[1][0], [Fraction(2), 0]]])


@pytest.mark.parametrize("kind,n", [(Kind.A, 3), (Kind.C, 2)])
def test_evaluation_commutes_with_symbolic_minors(kind, n):
    a = Alphabet(kind, n)
    pt = random_sl_point(n, 2, 5) if kind is Kind.A else random_sp_point(n, 2, 5)
    M = GenericJetMatrix(a, 2)
    values = pt.values()
    for I in a.row_sets():
        assert evaluate_series(M.minor(I), values) == pt.minor(I)


def test_jet_beyond_truncation_rejected():
    with pytest.raises(ValueError):
        evaluate_monomial(random_sl_point(2, 1, 0), [((1,), 2)])


def test_json_round_trip_and_determinism():
    pt = random_sp_point(2, 2, 42)
    assert dumps(pt) == dumps(random_sp_point(2, 2, 42))
    back = point_from_json(json.loads(dumps(pt)))
    assert back.matrix == pt.matrix and back.check()
