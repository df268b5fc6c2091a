"""Exact sparse polynomials in jet variables and s-truncated series over them.

A jet variable ``z_{uv}^{(k)}`` is the coefficient of ``s^k`` in the generic
matrix entry ``z_{uv}(s)``.  Polynomials are dictionaries from monomials to
exact rational coefficients; a monomial is a sorted tuple of
``(variable, exponent)`` pairs.  Coefficients are kept as ``int`` whenever
they are integral and as :class:`fractions.Fraction` otherwise.
"""
from __future__ import annotations

from fractions import Fraction
from math import prod
from typing import Iterable, Mapping, NamedTuple, Union

Rational = Union[int, Fraction]
Monomial = tuple  # tuple[tuple[JetVariable, int], ...]


class JetVariable(NamedTuple):
    """``z_{row,col}^{(jet)}``.

    Field order is (col, row, jet) so that tuple comparison realises the
    variable order used for leading terms: column first, then row.  The jet
    index only breaks ties for canonical storage.
    """

    col: int
    row: int
    jet: int


def z(row: int, col: int, jet: int = 0) -> JetVariable:
    return JetVariable(col, row, jet)


def _normalize(c: Rational) -> Rational:
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


def _as_rational(c) -> Rational:
    if isinstance(c, bool):
        raise TypeError("booleans are not coefficients")
    if isinstance(c, int):
        return c
    if isinstance(c, Fraction):
        return _normalize(c)
    if isinstance(c, str):
        return _normalize(Fraction(c))
    raise TypeError(f"not an exact rational: {c!r}")


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    d = dict(a)
    for v, e in b:
        d[v] = d.get(v, 0) + e
    return tuple(sorted(d.items()))


def mono_degree(m: Monomial) -> int:
    return sum(e for _, e in m)


def mono_jet_degree(m: Monomial) -> int:
    return sum(v.jet * e for v, e in m)


def mono_shape(m: Monomial) -> tuple:
    """Jet-erased comparison key: (degree, variables sorted descending)."""
    cells = []
    for v, e in m:
        cells.extend([(v.col, v.row)] * e)
    cells.sort(reverse=True)
    return (len(cells), tuple(cells))


class JetPolynomial:
    """Immutable sparse polynomial with exact rational coefficients."""

    __slots__ = ("terms", "_hash")

    def __init__(self, terms: Mapping[Monomial, Rational] | None = None):
        clean = {}
        if terms:
            for m, c in terms.items():
                c = _as_rational(c)
                if c:
                    clean[m] = c
        self.terms: dict[Monomial, Rational] = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict) -> "JetPolynomial":
        # terms already clean: nonzero normalized coefficients
        p = cls.__new__(cls)
        p.terms = terms
        p._hash = None
        return p

    @classmethod
    def constant(cls, c) -> "JetPolynomial":
        c = _as_rational(c)
        return cls._raw({(): c} if c else {})

    @classmethod
    def variable(cls, v: JetVariable) -> "JetPolynomial":
        return cls._raw({((v, 1),): 1})

    @classmethod
    def monomial(cls, m: Monomial, c=1) -> "JetPolynomial":
        return cls({m: c})

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, JetPolynomial):
            try:
                other = JetPolynomial.constant(other)
            except TypeError:
                return NotImplemented
        return self.terms == other.terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def _coerce(self, other) -> "JetPolynomial":
        if isinstance(other, JetPolynomial):
            return other
        return JetPolynomial.constant(other)

    def __add__(self, other) -> "JetPolynomial":
        other = self._coerce(other)
        if len(other.terms) > len(self.terms):
            big, small = other.terms, self.terms
        else:
            big, small = self.terms, other.terms
        out = dict(big)
        for m, c in small.items():
            s = out.get(m, 0) + c
            if s:
                out[m] = _normalize(s)
            else:
                out.pop(m, None)
        return JetPolynomial._raw(out)

    __radd__ = __add__

    def __neg__(self) -> "JetPolynomial":
        return JetPolynomial._raw({m: -c for m, c in self.terms.items()})

    def __sub__(self, other) -> "JetPolynomial":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "JetPolynomial":
        return self._coerce(other) - self

    def __mul__(self, other) -> "JetPolynomial":
        if not isinstance(other, JetPolynomial):
            c = _as_rational(other)
            if not c:
                return JetPolynomial._raw({})
            return JetPolynomial._raw({m: _normalize(v * c) for m, v in self.terms.items()})
        out: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = mono_mul(m1, m2)
                out[m] = out.get(m, 0) + c1 * c2
        return JetPolynomial._raw({m: _normalize(c) for m, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "JetPolynomial":
        if k < 0:
            raise ValueError("negative power")
        out = JetPolynomial.constant(1)
        for _ in range(k):
            out = out * self
        return out

    def variables(self) -> set[JetVariable]:
        return {v for m in self.terms for v, _ in m}

    def coefficient(self, m: Monomial) -> Rational:
        return self.terms.get(m, 0)

    def sorted_terms(self) -> list[tuple[Monomial, Rational]]:
        return sorted(self.terms.items())

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for m, c in self.sorted_terms():
            vs = "*".join(
                f"z{v.row}_{v.col}^{v.jet}" + (f"**{e}" if e > 1 else "") for v, e in m
            )
            parts.append(f"{c}*{vs}" if vs else f"{c}")
        return " + ".join(parts)


ZERO = JetPolynomial()
ONE = JetPolynomial.constant(1)


def evaluate(p: JetPolynomial, point: Mapping[JetVariable, Rational]) -> Rational:
    """Substitute exact rationals for every variable of ``p``."""
    total: Rational = 0
    for m, c in p.terms.items():
        term = c
        for v, e in m:
            try:
                x = point[v]
            except KeyError:
                raise KeyError(f"no value assigned to {v}") from None
            term = term * x**e
        total += term
    return _normalize(Fraction(total)) if isinstance(total, Fraction) else total


class TruncatedSeries:
    """``sum_{d <= trunc} coeffs[d] * s^d`` with :class:`JetPolynomial` coefficients.

    ``universe`` optionally names the variable universe (e.g. ``("A", 4)``);
    arithmetic between series tagged with different universes is refused.
    """

    __slots__ = ("coeffs", "trunc", "universe")

    def __init__(self, coeffs: Iterable, trunc: int, universe=None):
        if trunc < 0:
            raise ValueError("truncation bound must be >= 0")
        cs = [c if isinstance(c, JetPolynomial) else JetPolynomial.constant(c) for c in coeffs]
        cs = cs[: trunc + 1]
        cs += [ZERO] * (trunc + 1 - len(cs))
        self.coeffs: tuple[JetPolynomial, ...] = tuple(cs)
        self.trunc = trunc
        self.universe = universe

    def __getitem__(self, d: int) -> JetPolynomial:
        if 0 <= d <= self.trunc:
            return self.coeffs[d]
        raise IndexError(d)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __eq__(self, other) -> bool:
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self.trunc == other.trunc and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.trunc, self.coeffs))

    def _check(self, other: "TruncatedSeries"):
        if self.universe is not None and other.universe is not None and self.universe != other.universe:
            raise ValueError(f"mismatched universes {self.universe} and {other.universe}")
        return self.universe if self.universe is not None else other.universe

    def __add__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        u = self._check(other)
        D = min(self.trunc, other.trunc)
        return TruncatedSeries([self.coeffs[d] + other.coeffs[d] for d in range(D + 1)], D, u)

    def __neg__(self) -> "TruncatedSeries":
        return TruncatedSeries([-c for c in self.coeffs], self.trunc, self.universe)

    def __sub__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, TruncatedSeries):
            return series_mul(self, other, min(self.trunc, other.trunc))
        return TruncatedSeries([c * other for c in self.coeffs], self.trunc, self.universe)

    __rmul__ = __mul__

    def __repr__(self) -> str:
        return f"TruncatedSeries({list(self.coeffs)!r}, D={self.trunc})"


def series_mul(f: TruncatedSeries, g: TruncatedSeries, D: int) -> TruncatedSeries:
    """Cauchy product truncated at ``s^D``."""
    u = f._check(g)
    if D > min(f.trunc, g.trunc):
        raise ValueError(f"cannot multiply to s^{D}: inputs known only to s^{min(f.trunc, g.trunc)}")
    out = []
    for d in range(D + 1):
        acc = ZERO
        for a in range(d + 1):
            fa, gb = f.coeffs[a], g.coeffs[d - a]
            if fa and gb:
                acc = acc + fa * gb
        out.append(acc)
    return TruncatedSeries(out, D, u)


def falling(d: int, k: int) -> int:
    """(d+1)(d+2)...(d+k)."""
    return prod(range(d + 1, d + k + 1))


def series_derivative(f: TruncatedSeries, order: int) -> TruncatedSeries:
    """k-th derivative in s; the truncation bound drops by ``order``."""
    if order < 0:
        raise ValueError("derivative order must be >= 0")
    if order == 0:
        return f
    if order > f.trunc:
        raise ValueError("derivative order exceeds truncation bound")
    D = f.trunc - order
    return TruncatedSeries(
        [f.coeffs[d + order] * falling(d, order) for d in range(D + 1)], D, f.universe
    )


def evaluate_series(f: TruncatedSeries, point: Mapping[JetVariable, Rational]) -> list[Rational]:
    return [evaluate(c, point) for c in f.coeffs]
