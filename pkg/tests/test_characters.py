import json
from itertools import combinations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from semiflag.basis import degree_counts, enumerate_basis
from semiflag.characters import (
    component_character,
    from_json,
    local_weyl_character,
    pochhammer,
    pochhammer_inv,
    q_mul,
    to_csv,
    to_json,
    weyl_character,
)
from semiflag.combinatorics import Alphabet, Kind, allowed_count, rowset_key


def partitions_at_most(r, d):
    """Count partitions of d into at most r parts by direct recursion."""

    def rec(rem, parts, biggest):
        if rem == 0:
            return 1
        if parts == 0:
            return 0
        return sum(rec(rem - k, parts - 1, k) for k in range(1, min(rem, biggest) + 1))

    return rec(d, r, d)


@given(st.integers(0, 5), st.integers(0, 12))
def test_pochhammer_inv_counts_partitions(r, d):
    assert pochhammer_inv(r, 12)[d] == partitions_at_most(r, d)


def test_pochhammer_inverse_pair():
    assert q_mul(pochhammer(3, 10), pochhammer_inv(3, 10)) == [1] + [0] * 10
    assert pochhammer_inv(0, 3) == [1, 0, 0, 0]
    assert pochhammer_inv(1, 3) == [1, 1, 1, 1]
    assert pochhammer_inv(2, 4)[4] == 3


def test_component_examples():
    assert component_character({(1,): 1}, 4) == [1] * 5
    assert component_character({(2, 3): 1, (1, 4): 1}, 4) == [0, 1, 2, 3, 4]
    assert component_character({(1, 4, 5): 1, (2, 3, 6): 1}, 4) == [0, 0, 1, 2, 3]


def test_weyl_small_cases():
    assert weyl_character("C", 1, (1,), 3) == {(-1,): [1] * 4, (1,): [1] * 4}
    assert weyl_character("A", 2, (1,), 3) == {(0, 1): [1] * 4, (1, 0): [1] * 4}
    q0 = weyl_character("C", 2, (0, 1), 0)
    assert sum(f[0] for f in q0.values()) == 5


@pytest.mark.parametrize("kind,n", [("A", 2), ("A", 3), ("A", 4), ("C", 1), ("C", 2), ("C", 3)])
def test_fundamental_dimensions(kind, n):
    a = Alphabet(Kind(kind), n)
    for p in range(1, a.max_len + 1):
        lam = tuple(int(i == p) for i in range(1, a.max_len + 1))
        loc = local_weyl_character(kind, n, lam)
        assert loc.status == "ok"
        expected = allowed_count(n, p) if kind == "C" else len(list(combinations(range(n), p)))
        assert loc.dimension == expected


def test_zero_weight():
    loc = local_weyl_character("A", 3, (0, 0))
    assert loc.series == {(0, 0, 0): [1] + [0] * 12}


def test_inconclusive_when_window_too_small():
    loc = local_weyl_character("A", 3, (2, 1), qmax=1)
    assert loc.status == "inconclusive" and loc.degree_bound > 1


def reversed_key(I):
    return tuple(-x for x in sorted(I, reverse=True)), -len(I)


@pytest.mark.parametrize("kind,n,lam", [("A", 3, (1, 1)), ("A", 4, (1, 0, 1)), ("C", 2, (1, 1)), ("C", 2, (2, 0))])
def test_local_character_independent_of_linear_order(kind, n, lam):
    a = local_weyl_character(kind, n, lam)
    b = local_weyl_character(kind, n, lam, order_key=reversed_key)
    assert a.series == b.series and a.status == b.status == "ok"


@pytest.mark.parametrize("kind,n", [("A", 3), ("A", 4), ("C", 2), ("C", 3)])
def test_characters_match_basis_counts(kind, n):
    a = Alphabet(Kind(kind), n)
    gens = a.generators()
    for I, J in combinations(gens, 2):
        r = {I: 1, J: 2}
        assert degree_counts(enumerate_basis(r, 5), 5) == component_character(r, 5)


def test_nonnegative_coefficients():
    ch = weyl_character("C", 2, (1, 1), 8)
    assert all(c >= 0 and isinstance(c, int) for f in ch.values() for c in f)


def test_exports_round_trip():
    ch = weyl_character("C", 2, (0, 1), 3)
    assert from_json(json.loads(json.dumps(to_json(ch)))) == ch
    rows = to_csv(ch).splitlines()
    assert rows[0] == "weight,q_power,coefficient" and len(rows) == 1 + 5 * 4
