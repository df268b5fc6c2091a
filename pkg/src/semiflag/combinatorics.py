"""Index sets, the order on products of minors, snakes and allowed sets.

Elements of both alphabets are encoded as positive integers.  Type A uses
``1..n`` directly.  Type C uses the order-preserving embedding
``p -> 2p-1``, ``pbar -> 2p`` of ``1 < 1bar < 2 < 2bar < ... < n < nbar``
into ``1..2n``, so every order-theoretic operation below is the same code
for both types.  A row set is a strictly increasing tuple of such codes and
a product of minors is a tuple of row sets.
"""
from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass
from enum import Enum
from itertools import combinations
from math import comb
from typing import Iterable, Sequence

RowSet = tuple  # strictly increasing tuple[int, ...]
ProductIndex = tuple  # tuple[RowSet, ...], canonical order see canonical_product


class Kind(str, Enum):
    A = "A"
    C = "C"


class SubsetSyntaxError(ValueError):
    """Malformed subset text; ``position`` is the 0-based character offset."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


@dataclass(frozen=True)
class Alphabet:
    kind: Kind
    n: int

    def __post_init__(self):
        object.__setattr__(self, "kind", Kind(self.kind))
        if self.n < 1 or (self.kind is Kind.A and self.n < 2):
            raise ValueError(f"rank too small for type {self.kind.value}: n={self.n}")

    @property
    def size(self) -> int:
        return self.n if self.kind is Kind.A else 2 * self.n

    @property
    def max_len(self) -> int:
        """Largest size of a row set indexing a generator."""
        return self.n - 1 if self.kind is Kind.A else self.n

    @property
    def elements(self) -> tuple[int, ...]:
        return tuple(range(1, self.size + 1))

    def label(self, x: int) -> str:
        if self.kind is Kind.A:
            return str(x)
        p, barred = (x + 1) // 2, x % 2 == 0
        return f"{p}b" if barred else str(p)

    def format(self, rs: RowSet) -> str:
        return ",".join(self.label(x) for x in rs)

    def format_product(self, P: ProductIndex) -> str:
        return "|".join(self.format(rs) for rs in P)

    def parse(self, text: str, offset: int = 0) -> RowSet:
        """Parse ``"1,2b,3"``.  Errors carry the offending character position."""
        if not text.strip():
            raise SubsetSyntaxError("empty subset", offset)
        out = []
        pos = 0
        for tok in text.split(","):
            start = offset + pos + (len(tok) - len(tok.lstrip()))
            t = tok.strip()
            m = re.fullmatch(r"(\d+)(b?)", t)
            if not m:
                raise SubsetSyntaxError(f"malformed element {t!r}", start)
            p = int(m.group(1))
            barred = bool(m.group(2))
            if self.kind is Kind.A:
                if barred:
                    raise SubsetSyntaxError(f"barred element {t!r} in type A", start)
                if not 1 <= p <= self.n:
                    raise SubsetSyntaxError(f"element {t!r} outside 1..{self.n}", start)
                out.append(p)
            else:
                if not 1 <= p <= self.n:
                    raise SubsetSyntaxError(f"element {t!r} outside 1..{self.n}", start)
                out.append(2 * p if barred else 2 * p - 1)
            pos += len(tok) + 1
        if len(set(out)) != len(out):
            raise SubsetSyntaxError("repeated element", offset)
        return tuple(sorted(out))

    def parse_product(self, text: str) -> ProductIndex:
        factors = []
        pos = 0
        for part in text.split("|"):
            if "," not in part and part.strip().isdigit() and self.kind is Kind.A and len(part.strip()) > 1 and self.n < 10:
                # compact digit form "123" for one-digit alphabets
                digits = ",".join(part.strip())
                factors.append(self.parse(digits, pos))
            else:
                factors.append(self.parse(part, pos))
            pos += len(part) + 1
        return canonical_product(factors)

    def weight(self, rs: RowSet) -> tuple[int, ...]:
        """Torus weight in the epsilon basis; barred letters count negatively."""
        w = [0] * self.n
        for x in rs:
            if self.kind is Kind.A:
                w[x - 1] += 1
            elif x % 2:
                w[(x + 1) // 2 - 1] += 1
            else:
                w[x // 2 - 1] -= 1
        return tuple(w)

    def row_sets(self, size: int | None = None) -> list[RowSet]:
        sizes = [size] if size is not None else range(1, self.max_len + 1)
        return [c for k in sizes for c in combinations(self.elements, k)]

    def generators(self, size: int | None = None) -> list[RowSet]:
        """Row sets indexing the generators: all proper ones (A) or allowed ones (C)."""
        sets = self.row_sets(size)
        if self.kind is Kind.C:
            sets = [s for s in sets if is_allowed(s)]
        return sets

    def validate(self, rs: RowSet) -> RowSet:
        rs = tuple(rs)
        if not rs:
            raise ValueError("row sets are nonempty")
        if any(b <= a for a, b in zip(rs, rs[1:])):
            raise ValueError(f"not strictly increasing: {rs}")
        if rs[0] < 1 or rs[-1] > self.size:
            raise ValueError(f"element outside alphabet: {rs}")
        if len(rs) > self.max_len:
            raise ValueError(f"row set too long for rank {self.n}: {rs}")
        return rs


def iota(p: int, barred: bool = False) -> int:
    """Integer code of the type-C letter ``p`` or ``pbar``."""
    return 2 * p if barred else 2 * p - 1


# ---------------------------------------------------------------- subset order


class Cmp(str, Enum):
    LE = "I<=J"
    GE = "J<=I"
    EQUAL = "equal"
    INCOMPARABLE = "incomparable"


def _leq(I: RowSet, J: RowSet) -> bool:
    return len(I) >= len(J) and all(i <= j for i, j in zip(I, J))


def subset_leq(I: RowSet, J: RowSet) -> Cmp:
    """Partial order: I <= J iff |I| >= |J| and i_s <= j_s for s <= |J|."""
    if tuple(I) == tuple(J):
        return Cmp.EQUAL
    if _leq(I, J):
        return Cmp.LE
    if _leq(J, I):
        return Cmp.GE
    return Cmp.INCOMPARABLE


def comparable(I: RowSet, J: RowSet) -> bool:
    return subset_leq(I, J) is not Cmp.INCOMPARABLE


def is_chain(sets: Sequence[RowSet]) -> bool:
    return all(comparable(a, b) for a, b in combinations(sets, 2))


# ---------------------------------------------------------------- monomial order


def tr(L: RowSet, times: int = 1) -> RowSet:
    """Delete the ``times`` smallest elements (empty when nothing remains)."""
    return tuple(L[times:])


def truncate(I: RowSet, l: int) -> RowSet:
    """``tr^{l-1}(I) = (i_l, ..., i_|I|)``."""
    if l < 1:
        raise ValueError("level must be >= 1")
    return tr(I, l - 1)


def canonical_product(factors: Iterable[RowSet]) -> ProductIndex:
    """Sort factors by weakly decreasing size, then lexicographically."""
    return tuple(sorted((tuple(f) for f in factors), key=lambda f: (-len(f), f)))


def set_order_key(U: RowSet):
    """Key for the lexicographic set order in which a proper prefix is larger.

    ``U < V`` iff at the first difference ``u_c < v_c``, or ``V`` is a proper
    prefix of ``U``.  In particular the empty set is the largest.
    """
    # pad with +inf so that a prefix compares larger
    return tuple(U) + (float("inf"),)


def _weight_cmp(P: ProductIndex, Q: ProductIndex) -> int:
    cp = Counter(x for f in P for x in f)
    cq = Counter(x for f in Q for x in f)
    for d in sorted(set(cp) | set(cq), reverse=True):
        if cp[d] != cq[d]:
            return 1 if cp[d] > cq[d] else -1
    return 0


def _sign(x: int) -> int:
    return (x > 0) - (x < 0)


def compare_products(P: Iterable[RowSet], Q: Iterable[RowSet]) -> int:
    """Compare two products of minors; returns 1 (P > Q), -1 (P < Q) or 0.

    Stages, each consulted only when the previous ones tie:

    1. more factors is larger;
    2. factor sizes (sorted decreasingly) compared lexicographically;
    3. element counts, scanned from the largest element down: more is larger;
    4. with ``l`` minimal such that the l-fold truncations agree, the
       multisets of elements of the (l-1)-fold truncations are compared
       from the smallest element up (more is larger), and then the counts
       ``p_{a,U}`` of factors with ``tr^{l-1} = U + {a}``, ``tr^l = U``
       are compared scanning ``a`` from the largest down and, for fixed
       ``a``, ``U`` from the largest down in the set order where a proper
       prefix is larger.

    Jet indices are not part of the input; products that differ only in jets
    are equivalent.
    """
    P = canonical_product(P)
    Q = canonical_product(Q)
    if len(P) != len(Q):
        return _sign(len(P) - len(Q))
    sp = [len(f) for f in P]
    sq = [len(f) for f in Q]
    if sp != sq:
        return 1 if sp > sq else -1
    w = _weight_cmp(P, Q)
    if w:
        return w
    if sorted(P) == sorted(Q):
        return 0
    top = max(sp)
    l = 0
    for t in range(top, -1, -1):
        if sorted(tr(f, t) for f in P) != sorted(tr(f, t) for f in Q):
            l = t + 1
            break
    # tr^l agrees, tr^{l-1} does not
    cp = Counter(x for f in P for x in tr(f, l - 1))
    cq = Counter(x for f in Q for x in tr(f, l - 1))
    for c in sorted(set(cp) | set(cq)):
        if cp[c] != cq[c]:
            return 1 if cp[c] > cq[c] else -1
    pp = _p_counts(P, l)
    pq = _p_counts(Q, l)
    keys = sorted(set(pp) | set(pq), key=lambda aU: (aU[0], set_order_key(aU[1])), reverse=True)
    for k in keys:
        if pp[k] != pq[k]:
            return 1 if pp[k] > pq[k] else -1
    return 0


def _p_counts(P: ProductIndex, l: int) -> Counter:
    out: Counter = Counter()
    for f in P:
        if len(f) >= l:
            head = tr(f, l - 1)
            out[(head[0], head[1:])] += 1
    return out


def rowset_key(I: RowSet):
    """Sort key realising the restriction of :func:`compare_products` to single sets.

    Longer sets are larger; among equal sizes the set holding the largest
    element of the symmetric difference is larger.
    """
    return (len(I), tuple(sorted(I, reverse=True)))


def compare_rowsets(I: RowSet, J: RowSet) -> int:
    a, b = rowset_key(I), rowset_key(J)
    return (a > b) - (a < b)


# ---------------------------------------------------------------- snakes


@dataclass(frozen=True)
class SnakeData:
    I: RowSet
    J: RowSet
    sequence: tuple[tuple[int, str], ...]  # (element, "I" | "J"), strictly decreasing
    k: int

    @property
    def elements(self) -> tuple[int, ...]:
        return tuple(x for x, _ in self.sequence)

    def tagged(self, tag: str) -> tuple[int, ...]:
        return tuple(x for x, t in self.sequence if t == tag)


def canonical_pair(I: RowSet, J: RowSet) -> tuple[RowSet, RowSet]:
    """Order a pair so that |I| >= |J| and, for equal sizes, the highest
    differing coordinate has ``i < j``."""
    I, J = tuple(I), tuple(J)
    if len(I) < len(J):
        return J, I
    if len(I) == len(J):
        for a, b in zip(reversed(I), reversed(J)):
            if a != b:
                return (I, J) if a < b else (J, I)
    return I, J


def snake(I: RowSet, J: RowSet) -> SnakeData:
    """The snake S(I,J) and k(I,J) = |S| - |I| for the canonicalized pair."""
    I, J = canonical_pair(I, J)
    seq: list[tuple[int, str]] = [(I[p], "I") for p in range(len(I) - 1, len(J) - 1, -1)]
    on_i = True
    for p in range(len(J) - 1, -1, -1):
        i, j = I[p], J[p]
        if on_i:
            if i <= j:
                seq.append((i, "I"))
            else:
                seq += [(i, "I"), (j, "J")]
                on_i = False
        else:
            if i >= j:
                seq.append((j, "J"))
            else:
                seq += [(j, "J"), (i, "I")]
                on_i = True
    xs = [x for x, _ in seq]
    if any(b >= a for a, b in zip(xs, xs[1:])):
        raise AssertionError(f"snake of {I},{J} is not strictly decreasing: {xs}")
    return SnakeData(I, J, tuple(seq), len(seq) - len(I))


def k_value(I: RowSet, J: RowSet) -> int:
    return snake(I, J).k if tuple(I) != tuple(J) else 0


# ---------------------------------------------------------------- type C


def is_allowed(J: RowSet) -> bool:
    """Allowed iff the p-th smallest code is at least 2p-1."""
    return all(x >= 2 * p - 1 for p, x in enumerate(J, start=1))


def forbidden_literal(J: RowSet) -> bool:
    """Some position b holds the barred letter abar with a < b."""
    return any(x % 2 == 0 and x // 2 < b for b, x in enumerate(J, start=1))


def forbidden_pair_position(J: RowSet) -> int | None:
    """Smallest b with j_b = b and j_{b+1} = bbar, or None."""
    for b in range(1, len(J)):
        if J[b - 1] == 2 * b - 1 and J[b] == 2 * b:
            return b
    return None


def allowed_count(n: int, l: int) -> int:
    if l < 1 or l > n:
        raise ValueError("need 1 <= l <= n")
    if l == 1:
        return 2 * n
    return comb(2 * n, l) - comb(2 * n, l - 2)


def enumerate_allowed(n: int, l: int) -> list[RowSet]:
    return [c for c in combinations(range(1, 2 * n + 1), l) if is_allowed(c)]
