"""Minor series of the generic jet matrix and their toric leading terms."""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Sequence

from .combinatorics import Alphabet, Kind, RowSet
from .jetpoly import (
    ONE,
    ZERO,
    JetPolynomial,
    JetVariable,
    TruncatedSeries,
    mono_shape,
    series_mul,
    z,
)


@dataclass
class GenericJetMatrix:
    """Generic matrix whose (u, v) entry is ``sum_k z_{uv}^{(k)} s^k``.

    Rows are alphabet codes (``1..n`` in type A, ``1..2n`` in type C); only
    the columns ``1..max_len`` that minors use are materialised.  Minors on
    row sets are cached per instance and built by expanding along the last
    column, so every minor reuses the minors on shorter column prefixes.
    """

    alphabet: Alphabet
    trunc: int = 4
    _cache: dict = field(default_factory=dict, repr=False)

    @property
    def universe(self):
        return (self.alphabet.kind.value, self.alphabet.n)

    @property
    def ncols(self) -> int:
        return self.alphabet.max_len

    def entry(self, row: int, col: int) -> TruncatedSeries:
        return TruncatedSeries(
            [JetPolynomial.variable(z(row, col, k)) for k in range(self.trunc + 1)],
            self.trunc,
            self.universe,
        )

    def minor(self, rows: RowSet) -> TruncatedSeries:
        rows = tuple(rows)
        if len(rows) > self.ncols:
            raise ValueError(f"{len(rows)} rows but only {self.ncols} columns")
        if any(r < 1 or r > self.alphabet.size for r in rows):
            raise ValueError(f"row outside alphabet: {rows}")
        if len(set(rows)) != len(rows):
            return TruncatedSeries([], self.trunc, self.universe)
        if list(rows) != sorted(rows):
            raise ValueError("rows must be increasing")
        return self._minor(rows)

    def _minor(self, rows: RowSet) -> TruncatedSeries:
        if not rows:
            return TruncatedSeries([ONE], self.trunc, self.universe)
        hit = self._cache.get(rows)
        if hit is not None:
            return hit
        k = len(rows)
        acc = TruncatedSeries([], self.trunc, self.universe)
        for p, r in enumerate(rows):
            sub = self._minor(rows[:p] + rows[p + 1 :])
            term = series_mul(self.entry(r, k), sub, self.trunc)
            acc = acc - term if (p + k - 1) % 2 else acc + term
        self._cache[rows] = acc
        return acc


def minor_series(I: RowSet, M: GenericJetMatrix, D: int | None = None) -> TruncatedSeries:
    """``m_I(s)``: rows ``I`` against columns ``1..|I|``, truncated at ``D``."""
    f = M.minor(I)
    if D is None or D == f.trunc:
        return f
    if D > f.trunc:
        raise ValueError("matrix truncation is smaller than requested bound")
    return TruncatedSeries(f.coeffs[: D + 1], D, f.universe)


def leading_series(I: RowSet, M: GenericJetMatrix, D: int | None = None) -> TruncatedSeries:
    """``d_I(s) = z_{i_1 1}(s) z_{i_2 2}(s) ...``."""
    D = M.trunc if D is None else D
    out = TruncatedSeries([ONE], D, M.universe)
    for col, row in enumerate(I, start=1):
        out = series_mul(out, M.entry(row, col), D)
    return out


def leading_term(p: JetPolynomial) -> JetPolynomial:
    """All terms of ``p`` whose jet-erased monomial is greatest.

    Variables are ordered by (column, row), monomials by degree and then
    lexicographically from the largest variable.  Jet indices are invisible
    to this order, so the result is in general a sum of several monomials
    sharing one jet-erased shape.
    """
    if not p:
        raise ValueError("zero polynomial has no leading term")
    best = max(mono_shape(m) for m in p.terms)
    return JetPolynomial({m: c for m, c in p.terms.items() if mono_shape(m) == best})


def leading_shape(p: JetPolynomial) -> tuple:
    return max(mono_shape(m) for m in p.terms)


def product_coefficient(
    factors: Sequence[tuple[RowSet, int]], series_of, cache: dict | None = None
) -> JetPolynomial:
    """Multiply ``series_of(I)[l]`` over the factors ``(I, l)``."""
    out = ONE
    for I, l in factors:
        key = (I, l)
        if cache is not None and key in cache:
            c = cache[key]
        else:
            c = series_of(I)[l]
            if cache is not None:
                cache[key] = c
        out = out * c
        if not out:
            return ZERO
    return out


def leading_monomial_product(factors: Iterable[tuple[RowSet, int]], M: GenericJetMatrix) -> JetPolynomial:
    """Product of the ``d_I^{(l)}`` over the factors."""
    return product_coefficient(list(factors), lambda I: leading_series(I, M))


def distinct_leading_check(products: Sequence[Sequence[tuple[RowSet, int]]], M: GenericJetMatrix) -> bool:
    """True iff the leading parts of the given jet products are pairwise distinct."""
    seen = set()
    for f in products:
        lt = leading_monomial_product(f, M)
        if lt in seen:
            return False
        seen.add(lt)
    return True


def comparable_pair_products(alphabet: Alphabet, max_jet: int) -> list[list[tuple[RowSet, int]]]:
    """All products ``m_I^{(a)} m_J^{(b)}`` over comparable generator pairs, jets <= max_jet."""
    from .combinatorics import comparable

    gens = alphabet.generators()
    out = []
    for I, J in combinations(gens, 2):
        if comparable(I, J):
            for a in range(max_jet + 1):
                for b in range(max_jet + 1):
                    out.append([(I, a), (J, b)])
    for I in gens:
        for a in range(max_jet + 1):
            for b in range(a, max_jet + 1):
                out.append([(I, a), (I, b)])
    return out


def renaming_c_to_a(factors: Iterable[tuple[RowSet, int]]) -> list[tuple[RowSet, int]]:
    """Rename type-C row letters into rows of a 2n x 2n type-A matrix.

    With the integer codes used throughout, ``u -> 2u-1`` and ``ubar -> 2u``
    is the identity on codes; it is spelled out to keep the correspondence
    visible at call sites.
    """
    out = []
    for I, l in factors:
        out.append((tuple(2 * ((x + 1) // 2) - (x % 2) for x in I), l))
    return out
