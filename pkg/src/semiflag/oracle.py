"""Random exact points of the truncated jet groups SL_n[[s]] and Sp_2n[[s]].

Type C points are built in the block basis ``(1..n, 1bar..nbar)`` with form
``[[0, E], [-E, 0]]`` and then permuted to the interleaved row order
``1, 1bar, 2, 2bar, ...`` used for alphabet codes.  Minor ``m_I`` reads the
unbarred columns, which in the interleaved order are ``1, 3, 5, ...``.
"""
from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .combinatorics import Kind, RowSet
from .jetpoly import JetVariable, z

Series = list  # list[Fraction], index = power of s


def s_zero(D: int) -> Series:
    return [Fraction(0)] * (D + 1)


def s_one(D: int) -> Series:
    return [Fraction(1)] + [Fraction(0)] * D


def s_add(f: Series, g: Series) -> Series:
    return [a + b for a, b in zip(f, g)]


def s_sub(f: Series, g: Series) -> Series:
    return [a - b for a, b in zip(f, g)]


def s_mul(f: Series, g: Series) -> Series:
    D = min(len(f), len(g)) - 1
    out = [Fraction(0)] * (D + 1)
    for i, a in enumerate(f[: D + 1]):
        if a:
            for j in range(D + 1 - i):
                if g[j]:
                    out[i + j] += a * g[j]
    return out


def s_inv(f: Series) -> Series:
    """Multiplicative inverse; requires a nonzero constant term."""
    if not f[0]:
        raise ZeroDivisionError("series with zero constant term is not a unit")
    D = len(f) - 1
    out = [Fraction(0)] * (D + 1)
    out[0] = 1 / Fraction(f[0])
    for d in range(1, D + 1):
        acc = sum((f[k] * out[d - k] for k in range(1, d + 1)), Fraction(0))
        out[d] = -acc * out[0]
    return out


def mat_mul(A, B):
    D = len(A[0][0]) - 1
    n, m, p = len(A), len(B), len(B[0])
    out = []
    for i in range(n):
        row = []
        for j in range(p):
            acc = s_zero(D)
            for k in range(m):
                if any(A[i][k]) and any(B[k][j]):
                    acc = s_add(acc, s_mul(A[i][k], B[k][j]))
            row.append(acc)
        out.append(row)
    return out


def mat_identity(N: int, D: int):
    return [[s_one(D) if i == j else s_zero(D) for j in range(N)] for i in range(N)]


def transpose(A):
    return [list(r) for r in zip(*A)]


def series_det(A) -> Series:
    """Determinant by Laplace expansion along columns with memoised row subsets."""
    N = len(A)
    D = len(A[0][0]) - 1 if N else 0
    memo: dict = {}

    def rec(rows: tuple) -> Series:
        if not rows:
            return s_one(D)
        if rows in memo:
            return memo[rows]
        k = len(rows) - 1
        acc = s_zero(D)
        for p, r in enumerate(rows):
            if not any(A[r][k]):
                continue
            t = s_mul(A[r][k], rec(rows[:p] + rows[p + 1 :]))
            acc = s_sub(acc, t) if (p + k) % 2 else s_add(acc, t)
        memo[rows] = acc
        return acc

    return rec(tuple(range(N)))


def omega(n: int, D: int):
    """Standard form in interleaved order: ``Omega[2p][2p+1] = 1`` (0-based)."""
    W = [[s_zero(D) for _ in range(2 * n)] for _ in range(2 * n)]
    for p in range(n):
        W[2 * p][2 * p + 1] = s_one(D)
        W[2 * p + 1][2 * p] = [-x for x in s_one(D)]
    return W


@dataclass
class GroupJetPoint:
    kind: Kind
    n: int
    D: int
    seed: int | None
    matrix: list
    _minors: dict = field(default_factory=dict, repr=False, compare=False)

    @property
    def size(self) -> int:
        return self.n if self.kind is Kind.A else 2 * self.n

    def column_index(self, col: int) -> int:
        """0-based matrix column for minor column ``col`` (1-based)."""
        return col - 1 if self.kind is Kind.A else 2 * col - 2

    def entry(self, row: int, col: int) -> Series:
        return self.matrix[row - 1][self.column_index(col)]

    def minor(self, rows: RowSet) -> Series:
        """``m_rows(s)`` on columns ``1..len(rows)``; zero for repeated rows."""
        rows = tuple(rows)
        if len(set(rows)) < len(rows):
            return s_zero(self.D)
        hit = self._minors.get(rows)
        if hit is not None:
            return hit
        if not rows:
            out = s_one(self.D)
        else:
            k = len(rows)
            out = s_zero(self.D)
            for p, r in enumerate(rows):
                e = self.entry(r, k)
                if not any(e):
                    continue
                t = s_mul(e, self.minor(rows[:p] + rows[p + 1 :]))
                out = s_sub(out, t) if (p + k - 1) % 2 else s_add(out, t)
        self._minors[rows] = out
        return out

    def values(self, max_col: int | None = None) -> dict[JetVariable, Fraction]:
        """Assignment of every jet variable ``z_{row,col}^{(k)}`` for the used columns."""
        cols = max_col if max_col is not None else (self.n - 1 if self.kind is Kind.A else self.n)
        out = {}
        for r in range(1, self.size + 1):
            for c in range(1, cols + 1):
                for k, x in enumerate(self.entry(r, c)):
                    out[z(r, c, k)] = x
        return out

    def check(self) -> bool:
        if self.kind is Kind.A:
            return series_det(self.matrix) == s_one(self.D)
        W = omega(self.n, self.D)
        return mat_mul(mat_mul(self.matrix, W), transpose(self.matrix)) == W


def _rand_coeff(rng: random.Random) -> Fraction:
    return Fraction(rng.randint(-3, 3), rng.randint(1, 3))


def _rand_series(rng: random.Random, D: int) -> Series:
    return [_rand_coeff(rng) for _ in range(D + 1)]


def _rand_unit(rng: random.Random, D: int) -> Series:
    f = _rand_series(rng, D)
    while not f[0]:
        f[0] = _rand_coeff(rng)
    return f


def sl_point_from_parts(n: int, D: int, lower, diag: Sequence[Series], upper, seed=None) -> GroupJetPoint:
    """``N * H * M`` with ``H = diag(a_1, ..., a_{n-1}, (a_1...a_{n-1})^{-1})``."""
    H = mat_identity(n, D)
    prod = s_one(D)
    for i, a in enumerate(diag):
        H[i][i] = list(a)
        prod = s_mul(prod, a)
    H[n - 1][n - 1] = s_inv(prod)
    M = mat_mul(mat_mul(lower, H), upper)
    pt = GroupJetPoint(Kind.A, n, D, seed, M)
    if not pt.check():
        raise AssertionError("constructed SL point fails det = 1")
    return pt


def random_sl_point(n: int, D: int, seed: int) -> GroupJetPoint:
    if n < 2:
        raise ValueError("n >= 2 required")
    rng = random.Random(seed)
    N = mat_identity(n, D)
    U = mat_identity(n, D)
    for i in range(n):
        for j in range(i):
            N[i][j] = _rand_series(rng, D)
            U[j][i] = _rand_series(rng, D)
    diag = [_rand_unit(rng, D) for _ in range(n - 1)]
    return sl_point_from_parts(n, D, N, diag, U, seed)


def _interleave(n: int) -> list[int]:
    # block index -> interleaved index
    return [2 * p for p in range(n)] + [2 * p + 1 for p in range(n)]


def sp_elementary(n: int, D: int, rng: random.Random):
    """One random symplectic factor in block form."""
    E = mat_identity(2 * n, D)
    choice = rng.randrange(4)
    c = _rand_series(rng, D)
    if choice in (0, 1):
        i, j = rng.randrange(n), rng.randrange(n)
        if choice == 0:  # [[I, S], [0, I]]
            E[i][n + j] = list(c)
            E[j][n + i] = list(c)
        else:  # [[I, 0], [S, I]]
            E[n + i][j] = list(c)
            E[n + j][i] = list(c)
    elif choice == 2 and n > 1:  # [[A, 0], [0, A^-T]], A = I + c e_ij
        i, j = rng.sample(range(n), 2)
        E[i][j] = list(c)
        E[n + j][n + i] = [-x for x in c]
    else:  # torus in one (l, lbar) pair
        l = rng.randrange(n)
        a = _rand_unit(rng, D)
        E[l][l] = a
        E[n + l][n + l] = s_inv(a)
    return E


def sp_point_from_blocks(n: int, D: int, B, seed=None) -> GroupJetPoint:
    pos = _interleave(n)
    M = [[None] * (2 * n) for _ in range(2 * n)]
    for i in range(2 * n):
        for j in range(2 * n):
            M[pos[i]][pos[j]] = B[i][j]
    pt = GroupJetPoint(Kind.C, n, D, seed, M)
    if not pt.check():
        raise AssertionError("constructed Sp point fails the form identity")
    return pt


def random_sp_point(n: int, D: int, seed: int, nfactors: int | None = None) -> GroupJetPoint:
    if n < 1:
        raise ValueError("n >= 1 required")
    rng = random.Random(seed)
    count = rng.randint(10, 30) if nfactors is None else nfactors
    B = mat_identity(2 * n, D)
    for _ in range(count):
        B = mat_mul(B, sp_elementary(n, D, rng))
    return sp_point_from_blocks(n, D, B, seed)


def random_point(kind: Kind, n: int, D: int, seed: int) -> GroupJetPoint:
    return random_sl_point(n, D, seed) if kind is Kind.A else random_sp_point(n, D, seed)


def derivative(f: Series, order: int) -> Series:
    out = []
    for d in range(len(f) - order):
        c = 1
        for t in range(d + 1, d + order + 1):
            c *= t
        out.append(f[d + order] * c)
    return out


def evaluate_terms(point: GroupJetPoint, terms: Iterable) -> Series:
    """Value of ``sum c * d^k m_left * m_right`` at the point, by power of s."""
    terms = list(terms)
    D = point.D - max((t.deriv for t in terms), default=0)
    if D < 0:
        raise ValueError("derivative order beyond truncation")
    acc = s_zero(D)
    for t in terms:
        f = derivative(point.minor(t.left), t.deriv)[: D + 1]
        if t.right:
            f = s_mul(f, point.minor(t.right)[: D + 1])
        acc = s_add(acc, [x * t.coeff for x in f])
    return acc


def evaluate_monomial(point: GroupJetPoint, factors: Iterable[tuple[RowSet, int]]) -> Fraction:
    """``prod m_I^{(l)}`` at the point: the product of the s^l coefficients."""
    out = Fraction(1)
    for I, l in factors:
        if l > point.D:
            raise ValueError(f"jet degree {l} beyond truncation {point.D}")
        out *= point.minor(I)[l]
        if not out:
            return out
    return out


def evaluate_product_series(point: GroupJetPoint, rowsets: Iterable[RowSet]) -> Series:
    """``prod m_I(s)`` as a series at the point."""
    out = s_one(point.D)
    for I in rowsets:
        out = s_mul(out, point.minor(I))
    return out


def point_to_json(pt: GroupJetPoint) -> dict:
    return {
        "kind": pt.kind.value,
        "n": pt.n,
        "D": pt.D,
        "seed": pt.seed,
        "matrix": [[[str(x) for x in e] for e in row] for row in pt.matrix],
    }


def point_from_json(d: dict) -> GroupJetPoint:
    M = [[[Fraction(x) for x in e] for e in row] for row in d["matrix"]]
    return GroupJetPoint(Kind(d["kind"]), int(d["n"]), int(d["D"]), d.get("seed"), M)


def dumps(pt: GroupJetPoint) -> str:
    return json.dumps(point_to_json(pt), sort_keys=True)
