"""Exact rank by fraction-free sparse row reduction, and small dense solves."""
from __future__ import annotations

from fractions import Fraction
from functools import reduce
from math import gcd, lcm
from typing import Hashable, Iterable, Mapping, Sequence


def _integral(row: Mapping[Hashable, int | Fraction]) -> dict:
    den = 1
    for c in row.values():
        if isinstance(c, Fraction):
            den = lcm(den, c.denominator)
    out = {k: int(c * den) for k, c in row.items() if c}
    return _primitive(out)


def _primitive(row: dict) -> dict:
    g = reduce(gcd, row.values(), 0)
    if g > 1:
        row = {k: v // g for k, v in row.items()}
    return row


class RowEchelon:
    """Incremental echelon basis over the rationals, kept in integer form.

    Each stored row is primitive and indexed by its smallest column key;
    reduction of an incoming row uses only integer cross-multiplication.
    """

    def __init__(self):
        self.pivots: dict[Hashable, dict] = {}

    def reduce(self, row: Mapping) -> dict:
        r = _integral(row)
        while r:
            lead = min(r)
            p = self.pivots.get(lead)
            if p is None:
                return r
            a, b = p[lead], r[lead]
            g = gcd(a, b)
            a, b = a // g, b // g
            new = {k: a * v for k, v in r.items()}
            for k, v in p.items():
                x = new.get(k, 0) - b * v
                if x:
                    new[k] = x
                else:
                    new.pop(k, None)
            r = _primitive(new)
        return r

    def add(self, row: Mapping) -> bool:
        """Insert a row; returns True if it increased the rank."""
        r = self.reduce(row)
        if not r:
            return False
        self.pivots[min(r)] = r
        return True

    @property
    def rank(self) -> int:
        return len(self.pivots)


def rank(rows: Iterable[Mapping]) -> int:
    ech = RowEchelon()
    for r in rows:
        ech.add(r)
    return ech.rank


def bareiss_det(M: Sequence[Sequence[int]]) -> int:
    """Determinant of an integer matrix by fraction-free (Bareiss) elimination."""
    A = [list(r) for r in M]
    n = len(A)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if A[k][k] == 0:
            for i in range(k + 1, n):
                if A[i][k] != 0:
                    A[k], A[i] = A[i], A[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev
        prev = A[k][k]
    return sign * A[n - 1][n - 1]


def solve(M: Sequence[Sequence], b: Sequence) -> list[Fraction]:
    """Solve the square system ``M x = b`` exactly; raises on singular ``M``."""
    n = len(M)
    A = [[Fraction(x) for x in row] + [Fraction(bi)] for row, bi in zip(M, b)]
    for c in range(n):
        piv = next((r for r in range(c, n) if A[r][c] != 0), None)
        if piv is None:
            raise ZeroDivisionError("singular system")
        A[c], A[piv] = A[piv], A[c]
        inv = 1 / A[c][c]
        A[c] = [x * inv for x in A[c]]
        for r in range(n):
            if r != c and A[r][c] != 0:
                f = A[r][c]
                A[r] = [x - f * y for x, y in zip(A[r], A[c])]
    return [A[r][n] for r in range(n)]
