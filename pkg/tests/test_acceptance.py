"""Acceptance gate: one test and one printed verdict line per criterion."""
import time
from dataclasses import replace
from itertools import combinations, combinations_with_replacement
from math import comb

from semiflag.basis import leading_monomial_basis_check, verify_presentation
from semiflag.characters import local_weyl_character
from semiflag.combinatorics import (
    Alphabet,
    Kind,
    allowed_count,
    canonical_product,
    comparable,
    compare_products,
    enumerate_allowed,
    forbidden_literal,
    forbidden_pair_position,
    is_allowed,
    snake,
)
from semiflag.linalg import bareiss_det
from semiflag.oracle import random_sp_point
from semiflag.relations import (
    forbidden_relation,
    inclusion_matrix,
    relation_leading_term,
    semiinf_pluecker,
    snake_sum,
    symplectic_sum_relation,
    verify_relation_numeric,
    verify_relation_symbolic,
)

SEED = 20240601

ORDER_GOLDEN = [
    ("123|46|1|1", "78|67|36|45"),
    ("126|15|1|1", "123|46|3|1"),
    ("1268|157|1|1", "2468|467|3|1"),
    ("1268|157|1|1", "2568|127|3|1"),
]


def test_criterion_1_order(report):
    t0 = time.time()
    a = Alphabet(Kind.A, 8)
    golden = [compare_products(a.parse_product(l), a.parse_product(r)) == 1 for l, r in ORDER_GOLDEN]
    a4 = Alphabet(Kind.A, 4)
    gens = a4.row_sets()
    by_len = {k: list(combinations_with_replacement(gens, k)) for k in (1, 2)}
    violations = checked = 0
    for rlen in (1, 2):
        pool = [P for k in range(1, 4 - rlen) for P in by_len[k]]
        for R in by_len[rlen]:
            for i, P in enumerate(pool):
                for Q in pool[i + 1 :]:
                    c = compare_products(canonical_product(P), canonical_product(Q))
                    d = compare_products(canonical_product(P + R), canonical_product(Q + R))
                    checked += 1
                    violations += c != d
    elapsed = time.time() - t0
    ok = all(golden) and violations == 0 and elapsed < 60
    failed = [f"{l} > {r}" for (l, r), g in zip(ORDER_GOLDEN, golden) if not g]
    report(
        "criterion 1: order golden comparisons + monomial-order axiom",
        ok,
        f"golden {sum(golden)}/4 (failing: {failed or 'none'}); axiom {checked} triples, {violations} violations; {elapsed:.1f}s",
    )
    assert ok


def test_criterion_2_allowed(report):
    counts_ok = all(
        len(enumerate_allowed(n, l)) == comb(2 * n, l) - comb(2 * n, l - 2) == allowed_count(n, l)
        for n in range(2, 6)
        for l in range(2, n + 1)
    )
    agree = True
    total = 0
    for n in range(1, 5):
        for l in range(1, n + 1):
            for J in combinations(range(1, 2 * n + 1), l):
                total += 1
                agree &= is_allowed(J) == (not forbidden_literal(J)) == (forbidden_pair_position(J) is None)
    ok = counts_ok and agree
    report("criterion 2: allowed counts and criteria agreement", ok, f"counts {counts_ok}; {total} subsets, agree {agree}")
    assert ok


def test_criterion_3_type_a_relations(report):
    t0 = time.time()
    generated = vanish = lead = nonvanish = pairs = 0
    for n in (2, 3, 4):
        a = Alphabet(Kind.A, n)
        for I, J in combinations(a.generators(), 2):
            if comparable(I, J) or len(I) > 3 or len(J) > 3:
                continue
            pairs += 1
            k = snake(I, J).k
            for kp in range(k):
                rel = semiinf_pluecker(I, J, kp, a)
                generated += 1
                vanish += verify_relation_symbolic(rel, 4)
                t = relation_leading_term(rel)
                lead += t is not None and t.product == canonical_product((I, J))
            nonvanish += not verify_relation_symbolic(snake_sum(I, J, k, a), 4)
    elapsed = time.time() - t0
    ok = generated > 0 and vanish == lead == generated and nonvanish == pairs and elapsed < 600
    report(
        "criterion 3: type-A semi-infinite relations",
        ok,
        f"{generated} relations, {vanish} vanish, {lead} led by (I,J); {nonvanish}/{pairs} nonzero at k'=k; {elapsed:.1f}s",
    )
    assert ok


def test_criterion_4_type_c_relations(report):
    t0 = time.time()
    zero_ok = True
    negative_ok = True
    counts = []
    for n in (2, 3, 4):
        pts = [random_sp_point(n, 4, SEED + 1000 * n + i) for i in range(20)]
        sums = [symplectic_sum_relation(I, n) for s in range(n - 1) for I in combinations(range(1, 2 * n + 1), s)]
        forb = [
            forbidden_relation(J, n)
            for l in range(1, n + 1)
            for J in combinations(range(1, 2 * n + 1), l)
            if not is_allowed(J)
        ]
        counts.append((n, len(sums), len(forb)))
        zero_ok &= all(verify_relation_numeric(r, pts) for r in sums + forb)
        for fam in (sums, forb):
            rel = max(fam, key=len)
            broken = replace(rel, terms=(replace(rel.terms[0], coeff=2 * rel.terms[0].coeff),) + rel.terms[1:])
            negative_ok &= not verify_relation_numeric(broken, pts)
    dets = [bareiss_det(inclusion_matrix(s)) for s in range(4)]
    elapsed = time.time() - t0
    ok = zero_ok and negative_ok and all(dets) and elapsed < 600
    report(
        "criterion 4: type-C identities at symplectic points",
        ok,
        f"(n, sums, forbidden) {counts}; zero {zero_ok}; negative controls {negative_ok}; dets {dets}; seed {SEED}; {elapsed:.1f}s",
    )
    assert ok


def test_criterion_5_count_character_rank(report):
    t0 = time.time()
    rows_a = verify_presentation(Alphabet(Kind.A, 3), 3, 4, mode="symbolic")
    rows_c = verify_presentation(Alphabet(Kind.C, 2), 2, 4, mode="numeric", npoints=40, seed=SEED)
    bad = [r.to_json() for r in rows_a + rows_c if r.verdict != "pass"]
    elapsed = time.time() - t0
    ok = not bad and elapsed < 1800
    report(
        "criterion 5: count = character = rank",
        ok,
        f"type A {len(rows_a)} class-degrees, type C {len(rows_c)} at 40 points (seed {SEED}); failures {bad[:3]}; {elapsed:.1f}s",
    )
    assert ok


def test_criterion_6_character_sanity(report):
    cases = [("A", n) for n in (2, 3, 4)] + [("C", n) for n in (1, 2, 3)]
    bad = []
    checked = 0
    for kind, n in cases:
        a = Alphabet(Kind(kind), n)
        m = a.max_len
        lams = [tuple(int(i == p) for i in range(m)) for p in range(m)]
        lams += [tuple((i == p) + (i == q) for i in range(m)) for p in range(m) for q in range(p, m)]
        for lam in lams:
            loc = local_weyl_character(kind, n, lam, qmax=12)
            checked += 1
            if loc.status != "ok":
                bad.append((kind, n, lam, loc.status))
            if sum(lam) == 1:
                p = lam.index(1) + 1
                want = allowed_count(n, p) if kind == "C" else comb(n, p)
                if loc.dimension != want:
                    bad.append((kind, n, lam, loc.dimension, want))
    sp4 = local_weyl_character("C", 2, (0, 1), 12).dimension
    ok = not bad and sp4 == 5
    report("criterion 6: local characters are nonnegative polynomials", ok, f"{checked} weights; sp4 omega2 dim {sp4}; bad {bad}")
    assert ok


def test_criterion_7_leading_distinct(report):
    t0 = time.time()
    ra = leading_monomial_basis_check(Alphabet(Kind.A, 3), 3, 4)
    rc = leading_monomial_basis_check(Alphabet(Kind.C, 2), 2, 4)
    elapsed = time.time() - t0
    ok = ra.ok and rc.ok and elapsed < 300
    report("criterion 7: toric leading monomials distinct", ok, f"A3 {ra}; C2 {rc}; {elapsed:.1f}s")
    assert ok
