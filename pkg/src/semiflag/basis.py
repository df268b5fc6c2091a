"""Basis monomials with the offset condition and rank certification of the presentation.

Ranks are taken per class: all generator products sharing the size profile
``lambda``, the torus weight and the jet degree.  Products with different
multiplicity vectors ``r`` can be dependent within such a class (classical
Pluecker relations mix them), so the rank is compared with the basis count
summed over every ``r`` in the class.
"""
from __future__ import annotations

import json
from collections import defaultdict
from dataclasses import dataclass
from itertools import combinations_with_replacement
from typing import Callable, Iterable, Iterator, Mapping, Sequence

from .characters import component_character, r_weight
from .combinatorics import Alphabet, Kind, RowSet, k_value, rowset_key
from .jetpoly import ONE, JetPolynomial
from .linalg import RowEchelon
from .minors import GenericJetMatrix, leading_series, renaming_c_to_a

BasisMonomial = tuple  # tuple[(RowSet, jet), ...] sorted


def offsets(r: Mapping[RowSet, int], order_key: Callable = rowset_key, reverse: bool = False) -> dict[RowSet, int]:
    """``offset_I = sum_{J < I} k(I,J) r_J`` in the order given by ``order_key``."""
    idx = sorted((I for I, m in r.items() if m), key=order_key, reverse=reverse)
    out = {}
    for a, I in enumerate(idx):
        out[I] = sum(k_value(I, J) * r[J] for J in idx[:a])
    return out


def _jet_multisets(m: int, lo: int, budget: int) -> Iterator[tuple[int, ...]]:
    """Weakly increasing ``m``-tuples with entries >= lo and sum <= budget."""
    if m == 0:
        yield ()
        return
    for first in range(lo, budget // m + 1):
        for rest in _jet_multisets(m - 1, first, budget - first):
            yield (first,) + rest


def jet_assignments(r: Mapping[RowSet, int], Dmax: int, lows: Mapping[RowSet, int] | None = None) -> Iterator[BasisMonomial]:
    items = sorted((I, m) for I, m in r.items() if m)

    def rec(pos: int, budget: int, acc: tuple):
        if pos == len(items):
            yield acc
            return
        I, m = items[pos]
        lo = lows.get(I, 0) if lows else 0
        for jets in _jet_multisets(m, lo, budget):
            yield from rec(pos + 1, budget - sum(jets), acc + tuple((I, l) for l in jets))

    yield from rec(0, Dmax, ())


def jet_degree(mono: BasisMonomial) -> int:
    return sum(l for _, l in mono)


def enumerate_basis(r: Mapping[RowSet, int], Dmax: int, order_key: Callable = rowset_key, reverse: bool = False) -> list[BasisMonomial]:
    """Monomials ``prod m_I^{(l)}`` with weakly increasing jets per index, the
    smallest at least the offset of its index, and total jet degree <= Dmax."""
    if Dmax < 0:
        raise ValueError("Dmax >= 0 required")
    return list(jet_assignments(r, Dmax, offsets(r, order_key, reverse)))


def degree_counts(monos: Iterable[BasisMonomial], Dmax: int) -> list[int]:
    out = [0] * (Dmax + 1)
    for m in monos:
        out[jet_degree(m)] += 1
    return out


def multiplicity_vectors(alphabet: Alphabet, max_total: int, min_total: int = 1) -> Iterator[dict[RowSet, int]]:
    """All ``r`` over the generators with ``min_total <= sum r_I <= max_total``."""
    gens = alphabet.generators()
    for total in range(min_total, max_total + 1):
        for combo in combinations_with_replacement(gens, total):
            r: dict[RowSet, int] = {}
            for I in combo:
                r[I] = r.get(I, 0) + 1
            yield r


def shape(r: Mapping[RowSet, int], alphabet: Alphabet) -> tuple[int, ...]:
    lam = [0] * alphabet.max_len
    for I, m in r.items():
        lam[len(I) - 1] += m
    return tuple(lam)


def classes(alphabet: Alphabet, max_total: int) -> dict[tuple, list[dict]]:
    """Multiplicity vectors grouped by (shape, torus weight)."""
    out: dict[tuple, list[dict]] = defaultdict(list)
    for r in multiplicity_vectors(alphabet, max_total):
        out[(shape(r, alphabet), r_weight(alphabet, r))].append(r)
    return dict(sorted(out.items()))


@dataclass
class RankRow:
    shape: tuple
    weight: tuple
    jet_degree: int
    basis_count: int
    char_coeff: int
    rank: int
    products: int
    points: int | None = None

    @property
    def verdict(self) -> str:
        return "pass" if self.rank == self.basis_count == self.char_coeff else "fail"

    def to_json(self) -> dict:
        d = {
            "multidegree": {"lambda": list(self.shape), "weight": list(self.weight)},
            "jetDegree": self.jet_degree,
            "basisCount": self.basis_count,
            "charCoeff": self.char_coeff,
            "rank": self.rank,
            "products": self.products,
            "verdict": self.verdict,
        }
        if self.points is not None:
            d["points"] = self.points
        return d


def _symbolic_rank(monos: Sequence[BasisMonomial], M: GenericJetMatrix, cache: dict) -> int:
    ech = RowEchelon()
    for mono in monos:
        p = ONE
        for I, l in mono:
            key = (I, l)
            c = cache.get(key)
            if c is None:
                c = cache[key] = M.minor(I)[l]
            p = p * c
            if not p:
                break
        if p:
            ech.add(p.terms)
    return ech.rank


def _numeric_rank(monos: Sequence[BasisMonomial], points) -> int:
    from .oracle import evaluate_monomial

    ech = RowEchelon()
    for mono in monos:
        row = {i: evaluate_monomial(pt, mono) for i, pt in enumerate(points)}
        ech.add({k: v for k, v in row.items() if v})
    return ech.rank


def verify_presentation(
    alphabet: Alphabet,
    max_total: int,
    Dmax: int,
    mode: str = "symbolic",
    npoints: int | None = None,
    seed: int = 0,
    qmax: int | None = None,
) -> list[RankRow]:
    """Per class and jet degree: rank of all generator products vs basis count vs character.

    ``mode="symbolic"`` expands in the free jet ring (type A only);
    ``mode="numeric"`` evaluates at exact random group jet points, starting
    with ``npoints`` (default: basis count + 10) and doubling the sample
    twice before accepting a rank deficit.
    """
    if mode == "symbolic" and alphabet.kind is not Kind.A:
        raise ValueError("symbolic mode requires type A")
    if mode not in ("symbolic", "numeric"):
        raise ValueError(f"unknown mode {mode!r}")
    qmax = Dmax if qmax is None else qmax
    M = GenericJetMatrix(alphabet, Dmax) if mode == "symbolic" else None
    cache: dict = {}
    point_pool: list = []
    rows = []
    for (lam, w), rs in classes(alphabet, max_total).items():
        all_monos: dict[int, list] = defaultdict(list)
        basis = [0] * (Dmax + 1)
        char = [0] * (Dmax + 1)
        for r in rs:
            for m in jet_assignments(r, Dmax):
                all_monos[jet_degree(m)].append(m)
            for d, c in enumerate(degree_counts(enumerate_basis(r, Dmax), Dmax)):
                basis[d] += c
            for d, c in enumerate(component_character(r, qmax)[: Dmax + 1]):
                char[d] += c
        for d in range(Dmax + 1):
            monos = all_monos[d]
            if mode == "symbolic":
                rk = _symbolic_rank(monos, M, cache)
                rows.append(RankRow(lam, w, d, basis[d], char[d], rk, len(monos)))
                continue
            want = npoints if npoints is not None else basis[d] + 10
            rk = 0
            for attempt in range(3):
                n_pts = want * (2**attempt)
                _grow_points(point_pool, alphabet, n_pts, Dmax, seed)
                rk = _numeric_rank(monos, point_pool[:n_pts])
                if rk >= basis[d]:
                    break
            rows.append(RankRow(lam, w, d, basis[d], char[d], rk, len(monos), n_pts))
    return rows


def _grow_points(pool: list, alphabet: Alphabet, count: int, D: int, seed: int):
    from .oracle import random_point

    while len(pool) < count:
        pool.append(random_point(alphabet.kind, alphabet.n, D, seed * 100_003 + len(pool)))


def leading_part(mono: BasisMonomial, M: GenericJetMatrix, cache: dict | None = None) -> JetPolynomial:
    """``prod d_I^{(l)}``: the product of the toric leading coefficients."""
    cache = {} if cache is None else cache
    p = ONE
    for I, l in mono:
        c = cache.get((I, l))
        if c is None:
            c = cache[(I, l)] = leading_series(I, M)[l]
        p = p * c
    return p


@dataclass
class LeadingReport:
    classes: int
    monomials: int
    distinct: bool
    independent: bool
    renaming_ok: bool

    @property
    def ok(self) -> bool:
        return self.distinct and self.independent and self.renaming_ok


def leading_monomial_basis_check(alphabet: Alphabet, max_total: int, Dmax: int) -> LeadingReport:
    """Leading parts of the basis monomials: pairwise distinct and, per class and
    jet degree, linearly independent.  In type C the same parts are recomputed
    from a type-A matrix of size 2n after renaming the rows."""
    M = GenericJetMatrix(alphabet, Dmax)
    cache: dict = {}
    other = None
    if alphabet.kind is Kind.C:
        other = GenericJetMatrix(Alphabet(Kind.A, 2 * alphabet.n), Dmax)
    other_cache: dict = {}
    seen: set = set()
    distinct = independent = renaming_ok = True
    total = ncls = 0
    for (lam, w), rs in classes(alphabet, max_total).items():
        by_d: dict[int, list] = defaultdict(list)
        for r in rs:
            for m in enumerate_basis(r, Dmax):
                by_d[jet_degree(m)].append(m)
        for d, monos in by_d.items():
            ncls += 1
            ech = RowEchelon()
            for m in monos:
                lp = leading_part(m, M, cache)
                total += 1
                if lp in seen:
                    distinct = False
                seen.add(lp)
                if not ech.add(lp.terms):
                    independent = False
                if other is not None and leading_part(renaming_c_to_a(m), other, other_cache) != lp:
                    renaming_ok = False
    return LeadingReport(ncls, total, distinct, independent, renaming_ok)


def report_json(rows: Sequence[RankRow]) -> str:
    return json.dumps([r.to_json() for r in rows], sort_keys=True, indent=2)


def monomial_to_json(mono: BasisMonomial, alphabet: Alphabet) -> list:
    return [[alphabet.format(I), l] for I, l in mono]


def monomial_from_json(data: list, alphabet: Alphabet) -> BasisMonomial:
    return tuple((alphabet.parse(s), int(l)) for s, l in data)
