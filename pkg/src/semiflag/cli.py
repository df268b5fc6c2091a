"""Command line interface.

Exit status: 0 on success, 1 when a verification fails or is inconclusive,
2 on usage errors (including malformed subset text).
"""
from __future__ import annotations

import argparse
import json
import os
import re
import sys
from collections import Counter
from typing import Sequence

from . import basis, characters, oracle, relations
from .combinatorics import (
    Alphabet,
    Kind,
    SubsetSyntaxError,
    allowed_count,
    compare_products,
    comparable,
    enumerate_allowed,
    is_allowed,
    snake,
)


class UsageError(Exception):
    pass


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def _seed(args) -> int:
    if args.seed is not None:
        return args.seed
    env = os.environ.get("SEMIFLAG_SEED")
    if env is None:
        return 0
    try:
        return int(env)
    except ValueError:
        raise UsageError(f"SEMIFLAG_SEED is not an integer: {env!r}") from None


def _alphabet(args, *texts: str) -> Alphabet:
    kind = Kind(args.type)
    n = args.n
    if n is None:
        compact = kind is Kind.A and any(t and re.fullmatch(r"[\d|]+", t) and re.search(r"\d\d", t) for t in texts)
        pattern = r"\d" if compact else r"\d+"
        nums = [int(x) for t in texts if t for x in re.findall(pattern, t)]
        if not nums:
            raise UsageError("--n is required")
        n = max(nums) + 1 if kind is Kind.A else max(nums)
    try:
        return Alphabet(kind, n)
    except ValueError as e:
        raise UsageError(str(e)) from None


def _lambda(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError:
        raise UsageError(f"malformed --lambda {text!r}") from None


def _r_vector(alphabet: Alphabet, text: str) -> dict:
    if not text:
        return {}
    P = alphabet.parse_product(text)
    for I in P:
        alphabet.validate(I)
    return dict(Counter(P))


def _emit(args, text: str):
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def cmd_order(args) -> int:
    a = _alphabet(args, args.lhs, args.rhs)
    c = compare_products(a.parse_product(args.lhs), a.parse_product(args.rhs))
    verdict = {1: "GT", -1: "LT", 0: "EQ"}[c]
    _emit(args, verdict if args.format == "plain" else _dump(verdict))
    return 0


def cmd_snake(args) -> int:
    a = _alphabet(args, args.lhs, args.rhs)
    I, J = a.parse(args.lhs), a.parse(args.rhs)
    if comparable(I, J):
        out = {"S": [], "k": 0}
    else:
        sn = snake(I, J)
        out = {"S": [int(x) if a.kind is Kind.A else a.label(x) for x in sn.elements], "k": sn.k}
    _emit(args, _dump(out) if args.format != "plain" else f"S={out['S']} k={out['k']}")
    return 0


def cmd_allowed(args) -> int:
    a = Alphabet(Kind.C, args.n)
    if args.subset:
        J = a.parse(args.subset)
        _emit(args, _dump({"subset": a.format(J), "allowed": is_allowed(J)}))
        return 0
    sizes = [args.size] if args.size else range(1, args.n + 1)
    out = []
    ok = True
    for l in sizes:
        sets = enumerate_allowed(args.n, l)
        ok &= len(sets) == allowed_count(args.n, l)
        out.append({"size": l, "count": len(sets), "formula": allowed_count(args.n, l), "sets": [a.format(s) for s in sets]})
    _emit(args, _dump(out))
    return 0 if ok else 1


def cmd_relations_generate(args) -> int:
    a = _alphabet(args)
    if a.kind is Kind.C:
        rels = [relations.symplectic_sum_relation(I, a.n) for k in range(0, a.n - 1) for I in _c_sets(a, k)]
    else:
        try:
            rels = relations.generate_relations(a, args.max_size, check_D=args.D if args.check else None)
        except relations.RelationError as e:
            print(f"error: {e}", file=sys.stderr)
            return 1
    _emit(args, _dump([relations.relation_to_json(r) for r in rels]))
    return 0


def _c_sets(a: Alphabet, size: int):
    from itertools import combinations

    return list(combinations(a.elements, size))


def cmd_relations_verify(args) -> int:
    with open(args.input) as fh:
        data = json.load(fh)
    rels = [relations.relation_from_json(d) for d in data]
    seed = _seed(args)
    results = []
    for r in rels:
        if r.alphabet.kind is Kind.A:
            ok = relations.verify_relation_symbolic(r, args.D)
        else:
            pts = [oracle.random_sp_point(r.alphabet.n, args.D, seed * 1000 + i) for i in range(args.points)]
            ok = relations.verify_relation_numeric(r, pts)
        results.append({"family": r.family, "kprime": r.kprime, "verified": ok})
    _emit(args, _dump({"seed": seed, "results": results}))
    return 0 if all(x["verified"] for x in results) else 1


def cmd_straighten_minor(args) -> int:
    a = Alphabet(Kind.C, args.n)
    J = a.parse(args.subset)
    combo = relations.straighten_forbidden(J, args.n)
    seed = _seed(args)
    pts = [oracle.random_sp_point(args.n, args.D, seed * 1000 + i) for i in range(args.points)]
    ok = relations.verify_relation_numeric(relations.forbidden_relation(J, args.n), pts)
    out = {
        "subset": a.format(J),
        "combination": {a.format(K): relations._fmt_coeff(c) for K, c in sorted(combo.items())},
        "seed": seed,
        "verified": ok,
    }
    _emit(args, _dump(out))
    return 0 if ok else 1


def cmd_straighten_product(args) -> int:
    a = _alphabet(args, args.lhs, args.rhs)
    I, J = a.parse(args.lhs), a.parse(args.rhs)
    expr = relations.straighten_product(I, J, a) if not comparable(I, J) else {(I, J): 1}
    ok = relations.verify_relation_symbolic(relations.product_relation(I, J, expr, a), 0)
    out = {
        "product": a.format_product((I, J)),
        "combination": {a.format_product(P): relations._fmt_coeff(c) for P, c in sorted(expr.items())},
        "verified": ok,
    }
    _emit(args, _dump(out))
    return 0 if ok else 1


def _character_out(args, ch) -> str:
    if args.format == "csv":
        return characters.to_csv(ch).rstrip("\n")
    return _dump(characters.to_json(ch))


def cmd_character(args) -> int:
    if args.which == "component":
        a = _alphabet(args, args.r)
        r = _r_vector(a, args.r)
        f = characters.component_character(r, args.qmax)
        _emit(args, _dump({"coefficients": f, "exponent": characters.exponent(r)}) if args.format != "csv" else "\n".join(f"{d},{c}" for d, c in enumerate(f)))
        return 0
    lam = _lambda(args.lam)
    a = _alphabet(args)
    if len(lam) != a.max_len:
        raise UsageError(f"--lambda needs {a.max_len} coordinates for type {a.kind.value} n={a.n}")
    if args.which == "weyl":
        _emit(args, _character_out(args, characters.weyl_character(a.kind, a.n, lam, args.qmax)))
        return 0
    loc = characters.local_weyl_character(a.kind, a.n, lam, args.qmax)
    if args.format == "csv":
        _emit(args, _character_out(args, loc.series))
    else:
        _emit(
            args,
            _dump(
                {
                    "status": loc.status,
                    "dimension": loc.dimension,
                    "degreeBound": loc.degree_bound,
                    "qmax": loc.qmax,
                    "specialized": loc.specialized(),
                    "series": characters.to_json(loc.series),
                }
            ),
        )
    return 0 if loc.status == "ok" else 1


def cmd_basis_enumerate(args) -> int:
    a = _alphabet(args, args.r)
    r = _r_vector(a, args.r)
    monos = basis.enumerate_basis(r, args.D)
    out = {
        "counts": basis.degree_counts(monos, args.D),
        "character": characters.component_character(r, args.D),
        "monomials": [basis.monomial_to_json(m, a) for m in monos],
    }
    _emit(args, _dump(out))
    return 0 if out["counts"] == out["character"] else 1


def cmd_basis_verify(args) -> int:
    a = _alphabet(args)
    mode = args.mode or ("symbolic" if a.kind is Kind.A else "numeric")
    seed = _seed(args)
    rows = basis.verify_presentation(a, args.max_total, args.D, mode, args.points, seed)
    _emit(args, _dump({"seed": seed, "mode": mode, "rows": [r.to_json() for r in rows]}))
    return 0 if all(r.verdict == "pass" for r in rows) else 1


def cmd_oracle(args) -> int:
    seed = _seed(args)
    pt = oracle.random_point(Kind(args.type), args.n, args.D, seed)
    _emit(args, _dump(oracle.point_to_json(pt)))
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="semiflag", description="Semi-infinite flag minors toolkit")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, typed=True, need_n=False):
        if typed:
            sp.add_argument("--type", choices=["A", "C"], default="A")
        sp.add_argument("--n", type=int, required=need_n)
        sp.add_argument("--seed", type=int)
        sp.add_argument("--format", choices=["json", "csv", "plain"], default="json")
        sp.add_argument("--output")

    order = sub.add_parser("order").add_subparsers(dest="sub", required=True)
    sp = order.add_parser("compare")
    common(sp)
    sp.add_argument("--lhs", required=True)
    sp.add_argument("--rhs", required=True)
    sp.set_defaults(func=cmd_order)

    sp = sub.add_parser("snake")
    common(sp)
    sp.add_argument("--lhs", required=True)
    sp.add_argument("--rhs", required=True)
    sp.set_defaults(func=cmd_snake)

    sp = sub.add_parser("allowed")
    common(sp, typed=False, need_n=True)
    sp.add_argument("--size", type=int)
    sp.add_argument("--subset")
    sp.set_defaults(func=cmd_allowed)

    rel = sub.add_parser("relations").add_subparsers(dest="sub", required=True)
    sp = rel.add_parser("generate")
    common(sp, need_n=True)
    sp.add_argument("--max-size", type=int)
    sp.add_argument("--D", type=int, default=4)
    sp.add_argument("--check", action="store_true")
    sp.set_defaults(func=cmd_relations_generate)
    sp = rel.add_parser("verify")
    common(sp, typed=False)
    sp.add_argument("--input", required=True)
    sp.add_argument("--D", type=int, default=4)
    sp.add_argument("--points", type=int, default=20)
    sp.set_defaults(func=cmd_relations_verify)

    st = sub.add_parser("straighten").add_subparsers(dest="sub", required=True)
    sp = st.add_parser("minor")
    common(sp, typed=False, need_n=True)
    sp.add_argument("--subset", required=True)
    sp.add_argument("--D", type=int, default=2)
    sp.add_argument("--points", type=int, default=20)
    sp.set_defaults(func=cmd_straighten_minor)
    sp = st.add_parser("product")
    common(sp)
    sp.add_argument("--lhs", required=True)
    sp.add_argument("--rhs", required=True)
    sp.set_defaults(func=cmd_straighten_product)

    ch = sub.add_parser("character").add_subparsers(dest="which", required=True)
    for name in ("component", "weyl", "local"):
        sp = ch.add_parser(name)
        common(sp)
        sp.add_argument("--qmax", type=int, default=12)
        if name == "component":
            sp.add_argument("--r", required=True, help='multiset of index sets, e.g. "2,3|1,4"')
        else:
            sp.add_argument("--lambda", dest="lam", required=True)
        sp.set_defaults(func=cmd_character)

    bs = sub.add_parser("basis").add_subparsers(dest="sub", required=True)
    sp = bs.add_parser("enumerate")
    common(sp)
    sp.add_argument("--r", required=True)
    sp.add_argument("--D", type=int, default=4)
    sp.set_defaults(func=cmd_basis_enumerate)
    sp = bs.add_parser("verify")
    common(sp, need_n=True)
    sp.add_argument("--max-total", type=int, default=2)
    sp.add_argument("--D", type=int, default=3)
    sp.add_argument("--mode", choices=["symbolic", "numeric"])
    sp.add_argument("--points", type=int)
    sp.set_defaults(func=cmd_basis_verify)

    orc = sub.add_parser("oracle").add_subparsers(dest="sub", required=True)
    sp = orc.add_parser("sample")
    common(sp, need_n=True)
    sp.add_argument("--D", type=int, default=4)
    sp.set_defaults(func=cmd_oracle)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except SubsetSyntaxError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except (UsageError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
