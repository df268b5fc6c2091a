"""Truncated q-series and the graded characters of the semi-infinite algebras."""
from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from itertools import combinations
from typing import Callable, Iterator, Mapping, Sequence

from .combinatorics import Alphabet, Kind, RowSet, k_value, rowset_key

QSeries = list  # list[int], index = power of q, length qmax + 1
WeightVectorR = Mapping  # RowSet -> multiplicity
WeightedQSeries = dict  # weight tuple -> QSeries


def q_zero(qmax: int) -> QSeries:
    return [0] * (qmax + 1)


def q_mul(f: QSeries, g: QSeries) -> QSeries:
    qmax = min(len(f), len(g)) - 1
    out = [0] * (qmax + 1)
    for i, a in enumerate(f[: qmax + 1]):
        if a:
            for j in range(qmax + 1 - i):
                out[i + j] += a * g[j]
    return out


def q_add(f: QSeries, g: QSeries) -> QSeries:
    return [a + b for a, b in zip(f, g)]


def q_shift(f: QSeries, e: int) -> QSeries:
    if e >= len(f):
        return [0] * len(f)
    return [0] * e + f[: len(f) - e]


def pochhammer(r: int, qmax: int) -> QSeries:
    """``(q)_r = (1-q)(1-q^2)...(1-q^r)``, truncated."""
    out = [1] + [0] * qmax
    for i in range(1, r + 1):
        out = [out[d] - (out[d - i] if d >= i else 0) for d in range(qmax + 1)]
    return out


def pochhammer_inv(r: int, qmax: int) -> QSeries:
    """``1 / (q)_r``: partitions into parts of size at most r."""
    if r < 0:
        raise ValueError("r >= 0 required")
    out = [1] + [0] * qmax
    for i in range(1, r + 1):
        for d in range(i, qmax + 1):
            out[d] += out[d - i]
    return out


def q_binomial_poly(m: int, parts: Sequence[int]) -> list[int]:
    """Exact q-multinomial ``[m; parts]`` as a polynomial (``sum(parts) == m``)."""
    if sum(parts) != m:
        raise ValueError("parts must sum to m")
    deg = (m * m - sum(p * p for p in parts)) // 2
    num = pochhammer(m, deg)
    den = [1] + [0] * deg
    for p in parts:
        den = q_mul(den, pochhammer_inv(p, deg))
    return q_mul(num, den)


def exponent(r: WeightVectorR, order_key: Callable = rowset_key) -> int:
    """``sum_{I < J} k(I,J) r_I r_J`` over the linear order given by ``order_key``."""
    idx = sorted((I for I, m in r.items() if m), key=order_key)
    return sum(k_value(I, J) * r[I] * r[J] for I, J in combinations(idx, 2))


def component_character(r: WeightVectorR, qmax: int, order_key: Callable = rowset_key) -> QSeries:
    out = q_shift([1] + [0] * qmax, exponent(r, order_key))
    for I, m in r.items():
        if m:
            out = q_mul(out, pochhammer_inv(m, qmax))
    return out


def index_sets(alphabet: Alphabet, p: int) -> list[RowSet]:
    return alphabet.generators(p)


def _compositions(total: int, slots: int) -> Iterator[tuple[int, ...]]:
    if slots == 0:
        if total == 0:
            yield ()
        return
    if slots == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in _compositions(total - first, slots - 1):
            yield (first,) + rest


def weight_vectors(alphabet: Alphabet, lam: Sequence[int]) -> Iterator[dict[RowSet, int]]:
    """Every ``r`` with ``sum_{|I|=p} r_I = lam_p`` over the generator index sets."""
    if len(lam) != alphabet.max_len:
        raise ValueError(f"lambda needs {alphabet.max_len} coordinates")
    if any(x < 0 for x in lam):
        raise ValueError("lambda must be dominant")
    per_size = []
    for p, lp in enumerate(lam, start=1):
        sets = index_sets(alphabet, p)
        per_size.append([{I: c for I, c in zip(sets, comp) if c} for comp in _compositions(lp, len(sets))])

    def rec(p: int, acc: dict):
        if p == len(per_size):
            yield dict(acc)
            return
        for part in per_size[p]:
            yield from rec(p + 1, {**acc, **part})

    yield from rec(0, {})


def r_weight(alphabet: Alphabet, r: WeightVectorR) -> tuple[int, ...]:
    w = [0] * alphabet.n
    for I, m in r.items():
        for i, x in enumerate(alphabet.weight(I)):
            w[i] += m * x
    return tuple(w)


def _add_into(out: WeightedQSeries, w, f: QSeries):
    out[w] = q_add(out[w], f) if w in out else list(f)


def weyl_character(kind: Kind | str, n: int, lam: Sequence[int], qmax: int = 12, order_key: Callable = rowset_key) -> WeightedQSeries:
    alphabet = Alphabet(Kind(kind), n)
    out: WeightedQSeries = {}
    for r in weight_vectors(alphabet, lam):
        _add_into(out, r_weight(alphabet, r), component_character(r, qmax, order_key))
    return dict(sorted(out.items()))


@dataclass
class LocalCharacter:
    status: str  # "ok" | "inconclusive" | "failed"
    series: WeightedQSeries
    degree_bound: int
    qmax: int

    @property
    def dimension(self) -> int:
        return sum(sum(f) for f in self.series.values())

    def specialized(self) -> QSeries:
        return specialize(self.series, self.qmax)


def degree_bound(alphabet: Alphabet, lam: Sequence[int], order_key: Callable = rowset_key) -> int:
    """Largest q-degree of the local character: the top over all ``r`` of the
    exponent plus the q-multinomial degrees."""
    best = 0
    for r in weight_vectors(alphabet, lam):
        d = exponent(r, order_key)
        for p, lp in enumerate(lam, start=1):
            d += (lp * lp - sum(m * m for I, m in r.items() if len(I) == p)) // 2
        best = max(best, d)
    return best


def local_weyl_multinomial(kind: Kind | str, n: int, lam: Sequence[int], order_key: Callable = rowset_key) -> WeightedQSeries:
    """Exact local character: ``sum_r q^{e(r)} prod_p [lam_p; r_p]_q`` as polynomials."""
    alphabet = Alphabet(Kind(kind), n)
    out: dict = {}
    for r in weight_vectors(alphabet, lam):
        poly = [1]
        for p, lp in enumerate(lam, start=1):
            parts = [m for I, m in r.items() if len(I) == p]
            f = q_binomial_poly(lp, parts)
            poly = _poly_mul(poly, f)
        poly = [0] * exponent(r, order_key) + poly
        w = r_weight(alphabet, r)
        prev = out.get(w, [])
        size = max(len(prev), len(poly))
        out[w] = [(prev[i] if i < len(prev) else 0) + (poly[i] if i < len(poly) else 0) for i in range(size)]
    return dict(sorted(out.items()))


def _poly_mul(f, g):
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        for j, b in enumerate(g):
            out[i + j] += a * b
    return out


def local_weyl_character(kind: Kind | str, n: int, lam: Sequence[int], qmax: int = 12, order_key: Callable = rowset_key) -> LocalCharacter:
    """``(q)_lam * ch`` of the global module, truncated at ``q^qmax``.

    The status is ``"inconclusive"`` when ``qmax`` is below the degree bound,
    since polynomiality cannot then be read off the window.  Otherwise the
    window is checked to vanish above the bound, to have nonnegative
    coefficients, and to match the exact q-multinomial expansion.
    """
    alphabet = Alphabet(Kind(kind), n)
    glob = weyl_character(kind, n, lam, qmax, order_key)
    ql = [1] + [0] * qmax
    for lp in lam:
        ql = q_mul(ql, pochhammer(lp, qmax))
    series = {w: q_mul(f, ql) for w, f in glob.items()}
    bound = degree_bound(alphabet, lam, order_key)
    if qmax < bound:
        return LocalCharacter("inconclusive", series, bound, qmax)
    exact = local_weyl_multinomial(kind, n, lam, order_key)
    ok = set(exact) == set(series)
    for w, f in series.items():
        if any(c < 0 for c in f) or any(f[bound + 1 :]):
            ok = False
        e = exact.get(w, [])
        if f != (e + [0] * (qmax + 1))[: qmax + 1]:
            ok = False
    return LocalCharacter("ok" if ok else "failed", series, bound, qmax)


def specialize(ch: WeightedQSeries, qmax: int) -> QSeries:
    """Set every torus weight to 1."""
    out = q_zero(qmax)
    for f in ch.values():
        out = q_add(out, f)
    return out


def to_csv(ch: WeightedQSeries) -> str:
    buf = io.StringIO()
    wr = csv.writer(buf, lineterminator="\n")
    wr.writerow(["weight", "q_power", "coefficient"])
    for w, f in sorted(ch.items()):
        for d, c in enumerate(f):
            if c:
                wr.writerow([" ".join(str(x) for x in w), d, c])
    return buf.getvalue()


def to_json(ch: WeightedQSeries) -> dict:
    return {",".join(str(x) for x in w): list(f) for w, f in sorted(ch.items())}


def from_json(d: Mapping) -> WeightedQSeries:
    return {tuple(int(x) for x in k.split(",")) if k else (): list(v) for k, v in d.items()}


def dumps(ch: WeightedQSeries) -> str:
    return json.dumps(to_json(ch), sort_keys=True)
