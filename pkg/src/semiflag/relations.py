"""Quadratic relation families, their verification, and straightening."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Mapping, Sequence

from .combinatorics import (
    Alphabet,
    Kind,
    ProductIndex,
    RowSet,
    canonical_pair,
    canonical_product,
    compare_products,
    compare_rowsets,
    comparable,
    forbidden_pair_position,
    is_allowed,
    snake,
)
from .jetpoly import Rational, TruncatedSeries, _normalize, series_derivative, series_mul
from .linalg import solve
from .minors import GenericJetMatrix


class RelationError(ValueError):
    pass


@dataclass(frozen=True)
class RelationTerm:
    """``coeff * d^deriv m_left(s) / ds^deriv * m_right(s)``; ``right == ()`` means 1."""

    coeff: Rational
    deriv: int
    left: RowSet
    right: RowSet

    @property
    def product(self) -> ProductIndex:
        return canonical_product(f for f in (self.left, self.right) if f)


@dataclass(frozen=True)
class RelationRecord:
    alphabet: Alphabet
    family: str
    pair: tuple[RowSet, RowSet]
    kprime: int
    terms: tuple[RelationTerm, ...]
    meta: dict = field(default_factory=dict, compare=False, hash=False)

    def __len__(self):
        return len(self.terms)


def perm_sign(seq: Sequence[int]) -> int:
    """Sign of the permutation sorting ``seq`` (distinct entries)."""
    s = 1
    for a, b in combinations(seq, 2):
        if a > b:
            s = -s
    return s


def _exchange_terms(head_i, head_j, pool, first_size, lead_subset, kprime):
    """Antisymmetrize over ``pool``: rows ``head_i + A`` against ``head_j + (pool - A)``.

    Each determinant with unsorted rows is rewritten as a signed minor on
    sorted rows; terms with a repeated row vanish and are dropped.  The
    result is scaled so that the ``lead_subset`` term has coefficient 1.
    """
    pool = tuple(sorted(pool))
    raw = []
    for A in combinations(pool, first_size):
        rest = tuple(x for x in pool if x not in A)
        left = tuple(head_i) + A
        right = tuple(head_j) + rest
        if len(set(left)) < len(left) or len(set(right)) < len(right):
            continue
        c = perm_sign(A + rest) * perm_sign(left) * perm_sign(right)
        raw.append((A, c, tuple(sorted(left)), tuple(sorted(right))))
    lead = [c for A, c, _, _ in raw if set(A) == set(lead_subset)]
    if not lead:
        raise RelationError("leading exchange term vanishes")
    norm = lead[0]
    return tuple(RelationTerm(c * norm, kprime, l, r) for _, c, l, r in raw)


def finite_pluecker(I: RowSet, J: RowSet, alphabet: Alphabet | None = None) -> RelationRecord:
    """Classical quadratic relation for an incomparable pair.

    With ``s`` the last position where ``i_s > j_s`` and
    ``A = {j_1..j_s, i_s..i_k}`` the exchange runs over subsets ``B`` of
    ``A`` with ``|B| = k - s + 1`` so that both factors keep their sizes.
    """
    if comparable(I, J):
        raise RelationError(f"{I} and {J} are comparable")
    I, J = canonical_pair(I, J)
    s = max(p for p in range(1, len(J) + 1) if I[p - 1] > J[p - 1])
    A = set(J[:s]) | set(I[s - 1 :])
    head_i = tuple(x for x in I[: s - 1])
    head_j = tuple(x for x in J[s:])
    if alphabet is None:
        alphabet = Alphabet(Kind.A, max(I + J) + 1)
    terms = _exchange_terms(head_i, head_j, A, len(I) - s + 1, I[s - 1 :], 0)
    return RelationRecord(alphabet, "finite", (I, J), 0, terms)


def _snake_terms(I: RowSet, J: RowSet, kprime: int):
    sn = snake(I, J)
    in_s_i = set(sn.tagged("I"))
    in_s_j = set(sn.tagged("J"))
    head_i = tuple(x for x in sn.I if x not in in_s_i)
    head_j = tuple(x for x in sn.J if x not in in_s_j)
    terms = _exchange_terms(head_i, head_j, sn.elements, len(in_s_i), in_s_i, kprime)
    return sn, terms


def semiinf_pluecker(
    I: RowSet, J: RowSet, kprime: int, alphabet: Alphabet | None = None, *, check_D: int | None = None
) -> RelationRecord:
    """Snake relation ``sum_A +- d^{k'} m_{(I-S)+A}(s) m_{(J-S)+(S-A)}(s) = 0``.

    Requires ``0 <= k' < k(I, J)``.  With ``check_D`` set (type A only) the
    relation is expanded symbolically up to ``s^check_D`` and rejected if it
    does not vanish.
    """
    sn, terms = _snake_terms(I, J, kprime)
    if not 0 <= kprime < sn.k:
        raise RelationError(f"k'={kprime} outside 0..k(I,J)-1 = {sn.k - 1}")
    if alphabet is None:
        alphabet = Alphabet(Kind.A, max(sn.I + sn.J) + 1)
    rel = RelationRecord(alphabet, "snake", (sn.I, sn.J), kprime, terms, {"snake": sn.elements, "k": sn.k})
    if check_D is not None and not verify_relation_symbolic(rel, check_D):
        raise RelationError(f"snake relation for {sn.I},{sn.J}, k'={kprime} does not vanish")
    return rel


def snake_sum(I: RowSet, J: RowSet, kprime: int, alphabet: Alphabet) -> RelationRecord:
    """The snake alternating sum for any ``k'``, without the range guard."""
    sn, terms = _snake_terms(I, J, kprime)
    return RelationRecord(alphabet, "snake-sum", (sn.I, sn.J), kprime, terms, {"k": sn.k})


def generate_relations(alphabet: Alphabet, max_size: int | None = None, check_D: int | None = None):
    """All snake relations among generators of the alphabet."""
    gens = [g for g in alphabet.generators() if max_size is None or len(g) <= max_size]
    out = []
    for I, J in combinations(gens, 2):
        if comparable(I, J):
            continue
        k = snake(I, J).k
        for kp in range(k):
            out.append(semiinf_pluecker(I, J, kp, alphabet, check_D=check_D))
    return out


def relation_leading_term(rel: RelationRecord) -> RelationTerm | None:
    """The unique smallest term of the relation in the product order, if any.

    Straightening replaces this term by the others, which all compare larger.
    """
    best = []
    for t in rel.terms:
        if not best:
            best = [t]
            continue
        c = compare_products(t.product, best[0].product)
        if c < 0:
            best = [t]
        elif c == 0:
            best.append(t)
    return best[0] if len(best) == 1 else None


# ---------------------------------------------------------------- verification


@lru_cache(maxsize=32)
def generic_matrix(kind: str, n: int, trunc: int) -> GenericJetMatrix:
    return GenericJetMatrix(Alphabet(Kind(kind), n), trunc)


def relation_series(rel: RelationRecord, D: int, M: GenericJetMatrix | None = None) -> TruncatedSeries:
    need = D + max((t.deriv for t in rel.terms), default=0)
    if M is None:
        M = generic_matrix(rel.alphabet.kind.value, rel.alphabet.n, need)
    acc = TruncatedSeries([], D, M.universe)
    for t in rel.terms:
        left = series_derivative(M.minor(t.left), t.deriv)
        left = TruncatedSeries(left.coeffs[: D + 1], D, M.universe)
        prod = series_mul(left, M.minor(t.right), D) if t.right else left
        acc = acc + prod * t.coeff
    return acc


def verify_relation_symbolic(rel: RelationRecord, D: int) -> bool:
    """Expand in the free jet ring; True iff every s^d coefficient, d <= D, is zero."""
    if rel.alphabet.kind is not Kind.A:
        raise RelationError("symbolic verification is sound only in type A")
    if not rel.terms:
        return True
    return relation_series(rel, D).is_zero()


def verify_relation_numeric(rel: RelationRecord, points) -> bool:
    """Evaluate at exact group jet points; True iff every value vanishes."""
    from .oracle import evaluate_terms

    return all(not any(evaluate_terms(p, rel.terms)) for p in points)


# ---------------------------------------------------------------- type C


def symplectic_sum_relation(I: RowSet, n: int) -> RelationRecord:
    """``sum_l m_{I + {l, lbar}}(s) = 0`` on the symplectic group; zero minors omitted."""
    I = tuple(I)
    if len(I) > n - 2:
        raise RelationError(f"|I| = {len(I)} exceeds n - 2 = {n - 2}")
    terms = []
    for l in range(1, n + 1):
        a, b = 2 * l - 1, 2 * l
        if a in I or b in I:
            continue
        terms.append(RelationTerm(1, 0, tuple(sorted(I + (a, b))), ()))
    return RelationRecord(Alphabet(Kind.C, n), "symplectic-sum", (I, ()), 0, tuple(terms))


def inclusion_matrix(s: int) -> list[list[int]]:
    """Rows: s-subsets of a (2s+1)-set; columns: (s+1)-subsets; entry 1 iff row subset of column."""
    base = range(2 * s + 1)
    rows = list(combinations(base, s))
    cols = list(combinations(base, s + 1))
    return [[1 if set(r) <= set(c) else 0 for c in cols] for r in rows]


def _bar(p: int) -> int:
    return 2 * p


def _unbar(p: int) -> int:
    return 2 * p - 1


def straighten_forbidden(J: RowSet, n: int, _memo: dict | None = None) -> dict[RowSet, Rational]:
    """Express a forbidden minor through allowed minors (modulo the sum relations).

    Returns ``{K: c_K}`` with ``m_J = sum c_K m_K`` on the symplectic group.
    Allowed input is returned as ``{J: 1}``.
    """
    J = tuple(J)
    if is_allowed(J):
        return {J: 1}
    memo = {} if _memo is None else _memo
    if J in memo:
        return memo[J]
    b = forbidden_pair_position(J)
    if b is None:
        raise RelationError(f"forbidden set {J} has no position b with j_b = b, j_(b+1) = bbar")
    A = [a for a in range(1, b) if _unbar(a) in J and _bar(a) in J]
    Cs = [c for c in range(1, b) if _unbar(c) not in J and _bar(c) not in J]
    if len(A) != len(Cs):
        raise RelationError("unbalanced pair counts below b")
    s = len(A)
    D = sorted(A + Cs + [b])
    strip = set()
    for a in A + [b]:
        strip |= {_unbar(a), _bar(a)}
    J0 = tuple(x for x in J if x not in strip)
    rows = list(combinations(D, s))
    cols = list(combinations(D, s + 1))
    M = [[1 if set(E) <= set(F) else 0 for F in cols] for E in rows]
    # right-hand side: minus the terms with l outside D, as a combination of minors
    rhs: list[dict[RowSet, Rational]] = []
    for E in rows:
        I_E = tuple(sorted(J0 + tuple(x for e in E for x in (_unbar(e), _bar(e)))))
        acc: dict[RowSet, Rational] = {}
        for l in range(1, n + 1):
            if l in D:
                continue
            u, v = _unbar(l), _bar(l)
            if u in I_E or v in I_E:
                continue
            K = tuple(sorted(I_E + (u, v)))
            acc[K] = acc.get(K, 0) - 1
        rhs.append(acc)
    target = cols.index(tuple(sorted(A + [b])))
    keys = sorted({K for acc in rhs for K in acc})
    result: dict[RowSet, Rational] = {}
    for K in keys:
        x = solve(M, [acc.get(K, 0) for acc in rhs])[target]
        if not x:
            continue
        for K2, c2 in straighten_forbidden(K, n, memo).items():
            v = result.get(K2, 0) + _normalize(Fraction(x) * c2)
            if v:
                result[K2] = _normalize(Fraction(v))
            else:
                result.pop(K2, None)
    memo[J] = result
    return result


def forbidden_relation(J: RowSet, n: int) -> RelationRecord:
    """``m_J - sum c_K m_K = 0`` from :func:`straighten_forbidden`."""
    combo = straighten_forbidden(J, n)
    terms = [RelationTerm(1, 0, tuple(J), ())]
    terms += [RelationTerm(-c, 0, K, ()) for K, c in sorted(combo.items())]
    return RelationRecord(Alphabet(Kind.C, n), "forbidden", (tuple(J), ()), 0, tuple(terms))


# ---------------------------------------------------------------- straightening products


def straighten_product(I: RowSet, J: RowSet, alphabet: Alphabet | None = None, max_steps: int = 10_000):
    """Rewrite ``m_I m_J`` (jet degree 0) as a combination of comparable products.

    The smallest incomparable product present is replaced using its
    classical relation, whose other terms all compare larger; the process
    stops when only comparable pairs remain.
    """
    expr: dict[ProductIndex, Rational] = {canonical_product((I, J)): 1}
    for _ in range(max_steps):
        bad = [P for P in expr if len(P) == 2 and not comparable(*P)]
        if not bad:
            return expr
        P = bad[0]
        for Q in bad[1:]:
            if compare_products(Q, P) < 0:
                P = Q
        c = expr.pop(P)
        rel = finite_pluecker(P[0], P[1], alphabet)
        lead = [t for t in rel.terms if t.product == P]
        if len(lead) != 1:
            raise RelationError(f"no unique term {P} in its own relation")
        lc = lead[0].coeff
        for t in rel.terms:
            if t is lead[0]:
                continue
            key = t.product
            v = expr.get(key, 0) - Fraction(c) * t.coeff / lc
            if v:
                expr[key] = _normalize(Fraction(v))
            else:
                expr.pop(key, None)
    raise RelationError("straightening did not terminate")


def product_relation(I: RowSet, J: RowSet, expr: Mapping[ProductIndex, Rational], alphabet: Alphabet) -> RelationRecord:
    """``m_I m_J - sum c_P m_P = 0`` as a record, for symbolic checking."""
    terms = [RelationTerm(1, 0, tuple(I), tuple(J))]
    for P, c in sorted(expr.items()):
        left, right = (P + ((),))[:2]
        terms.append(RelationTerm(-c, 0, left, right))
    return RelationRecord(alphabet, "straightened", (tuple(I), tuple(J)), 0, tuple(terms))


# ---------------------------------------------------------------- JSON


def _fmt_coeff(c) -> str:
    c = Fraction(c)
    return f"{c.numerator}/{c.denominator}"


def relation_to_json(rel: RelationRecord) -> dict:
    a = rel.alphabet
    return {
        "family": rel.family,
        "type": a.kind.value,
        "n": a.n,
        "pair": [a.format(rel.pair[0]), a.format(rel.pair[1]) if rel.pair[1] else ""],
        "kprime": rel.kprime,
        "terms": [
            {
                "coeff": _fmt_coeff(t.coeff),
                "deriv": t.deriv,
                "left": a.format(t.left),
                "right": a.format(t.right) if t.right else "",
            }
            for t in rel.terms
        ],
    }


def relation_from_json(d: Mapping) -> RelationRecord:
    a = Alphabet(Kind(d["type"]), int(d["n"]))

    def rs(text: str) -> RowSet:
        return a.parse(text) if text else ()

    terms = tuple(
        RelationTerm(_normalize(Fraction(t["coeff"])), int(t["deriv"]), rs(t["left"]), rs(t["right"]))
        for t in d["terms"]
    )
    return RelationRecord(a, d["family"], (rs(d["pair"][0]), rs(d["pair"][1])), int(d["kprime"]), terms)


def dumps(rels: Iterable[RelationRecord]) -> str:
    return json.dumps([relation_to_json(r) for r in rels], sort_keys=True, indent=2)
