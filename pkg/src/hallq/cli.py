"""Command-line front end.

    hallq classify --quiver FILE --dim d1,d2,...
    hallq product  --quiver FILE --expr "E[...] K(...) F[...]" [--reduced]
    hallq verify   --quiver FILE --suite relations|serre|drinfeld|assoc|oracle|all

Exit codes: 0 success, 1 a verification check failed, 2 validation or
parse errors, 3 an enumeration bound was exceeded.  Output is
deterministic for identical invocations (modulo --timing).  The
structure-constant cache is an append-only JSONL file selected with
--cache or the HALLQ_CACHE environment variable.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import re
import sys
import time
from concurrent.futures import ThreadPoolExecutor

from .cache import CacheStore
from .cplx import ComplexCategory
from .dh import DHAlgebra
from .hall import HallAlgebra
from .quiver import QuiverError, kv_neg, parse_quiver
from .repcat import Bounds, CacheCorruption, EnumerationTooLarge, RepCategory
from .scalar import parse_scalar
from .uq import RelationVerifier

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_BOUNDS = 0, 1, 2, 3


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (QuiverError, ExprError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except EnumerationTooLarge as exc:
        print(f"enumeration bound exceeded: {exc}", file=sys.stderr)
        return EXIT_BOUNDS
    except CacheCorruption as exc:
        print(f"cache audit failed: {exc}", file=sys.stderr)
        return EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hallq", description="Exact Hall-algebra computations for quivers"
    )
    sub = parser.add_subparsers(required=True)

    def common(p):
        p.add_argument("--quiver", required=True, help="quiver description file")
        p.add_argument("--json", action="store_true", help="machine-readable output")
        p.add_argument("--cache", default=None, help="cache file (or $HALLQ_CACHE)")
        p.add_argument("--audit-cache", action="store_true",
                       help="recompute on every cache hit and compare")
        p.add_argument("--max-total-dim", type=int, default=None,
                       help="override the total-dimension enumeration bound")

    p = sub.add_parser("classify", help="list isomorphism classes of one dimension")
    common(p)
    p.add_argument("--dim", required=True, help="comma-separated dimension vector")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("product", help="normal-ordered expansion of an expression")
    common(p)
    p.add_argument("--expr", required=True)
    p.add_argument("--reduced", action="store_true",
                   help="reduce the result (fold Kd into K)")
    p.set_defaults(func=cmd_product)

    p = sub.add_parser("verify", help="run a verification suite")
    common(p)
    p.add_argument("--suite", default="all",
                   choices=["relations", "serre", "drinfeld", "assoc", "oracle", "all"])
    p.add_argument("--max-dim", type=int, default=2,
                   help="dimension cap for drinfeld/assoc/oracle suites")
    p.add_argument("--serre-cap", type=int, default=4,
                   help="total-degree cap for Serre relation checks")
    p.add_argument("--seed", type=int, default=20259,
                   help="seed for the randomized associativity triples")
    p.add_argument("--random", type=int, default=10,
                   help="number of random associativity triples")
    p.add_argument("--jobs", type=int, default=1, help="suite worker threads")
    p.add_argument("--timing", action="store_true", help="print elapsed times")
    p.set_defaults(func=cmd_verify)
    return parser


def _load_context(args):
    with open(args.quiver, "r", encoding="utf-8") as fh:
        quiver = parse_quiver(fh.read())
    cache_path = args.cache or os.environ.get("HALLQ_CACHE")
    store = CacheStore(cache_path, audit=args.audit_cache) if (
        cache_path or args.audit_cache
    ) else None
    bounds = Bounds()
    if args.max_total_dim is not None:
        bounds = Bounds(max_total_dim=args.max_total_dim)
    return RepCategory(quiver, bounds=bounds, store=store)


# ----------------------------------------------------------------------
# classify

def cmd_classify(args) -> int:
    cat = _load_context(args)
    dim = tuple(int(x) for x in args.dim.split(","))
    classes = cat.classify(dim)
    if args.json:
        rows = [
            {
                "key": c.key,
                "dim": list(c.dim),
                "aut": c.aut_order,
                "kclass": list(c.kclass),
            }
            for c in classes
        ]
        print(json.dumps({"dim": list(dim), "classes": rows}, sort_keys=True))
    else:
        for c in classes:
            print(
                f"{c.key}  dim={','.join(map(str, c.dim))}  aut={c.aut_order}"
                f"  class={cat.quiver.render_kvector(c.kclass)}"
            )
    return EXIT_OK


# ----------------------------------------------------------------------
# product

class ExprError(ValueError):
    pass


_TOKEN = re.compile(
    r"\s*(?:(?P<plus>\+)|(?P<minus>-)|(?P<gen>E|F|Kd|K)\s*(?:\[(?P<cls>[^\]]*)\]|"
    r"\((?P<vec>[^)]*)\))|(?P<scal>(?:\d+(?:/\d+)?\*?)?v(?:\^\(?-?\d+(?:/\d+)?\)?)?|"
    r"\d+(?:/\d+)?)|(?P<star>\*))"
)


def parse_expr(dh: DHAlgebra, text: str):
    """EXPR := term (('+'|'-') term)*; a term is juxtaposed factors.

    Factors: E[key], F[key], K(a1,...), Kd(a1,...), rational or v-power
    scalar literals.  The empty expression is the unit.
    """
    if not text.strip():
        return dh.one()
    result = dh.zero()
    term = dh.one()
    sign = 1
    saw_factor = False
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            if text[pos:].strip():
                raise ExprError(f"cannot parse expression at {text[pos:]!r}")
            break
        pos = m.end()
        if m.group("plus") or m.group("minus"):
            if saw_factor:
                result = result + term.scale(sign)
            term = dh.one()
            saw_factor = False
            sign = -1 if m.group("minus") else 1
            continue
        if m.group("star"):
            continue
        saw_factor = True
        if m.group("gen"):
            kind = m.group("gen")
            if kind in ("E", "F"):
                if m.group("cls") is None:
                    raise ExprError(f"{kind} needs a class key in brackets")
                cls = dh.cat.class_by_key(m.group("cls").strip())
                factor = dh.e_elem(cls.key) if kind == "E" else dh.f_elem(cls.key)
            else:
                if m.group("vec") is None:
                    raise ExprError(f"{kind} needs a coordinate vector in parentheses")
                coords = tuple(
                    int(x) for x in m.group("vec").split(",") if x.strip() != ""
                )
                if len(coords) != dh.quiver.n:
                    raise ExprError(
                        f"{kind} vector needs {dh.quiver.n} coordinates"
                    )
                factor = dh.k_elem(coords) if kind == "K" else dh.kd_elem(coords)
            term = dh.product(term, factor)
        else:
            term = term.scale(parse_scalar(dh.ring, m.group("scal")))
    if saw_factor:
        result = result + term.scale(sign)
    return result


def cmd_product(args) -> int:
    cat = _load_context(args)
    dh = DHAlgebra(cat)
    value = parse_expr(dh, args.expr)
    if args.reduced:
        value = dh.reduce(value)
    if args.json:
        print(json.dumps({"expr": args.expr, "reduced": bool(args.reduced),
                          "terms": dh.to_json(value)}, sort_keys=True))
    else:
        print(dh.render(value))
    return EXIT_OK


# ----------------------------------------------------------------------
# verify

def cmd_verify(args) -> int:
    cat = _load_context(args)
    suites = _build_suites(args, cat)
    results = {}
    timings = {}

    def run(item):
        name, fn = item
        t0 = time.monotonic()
        try:
            checks = fn()
        except EnumerationTooLarge as exc:
            checks = [{"id": name, "ok": None, "lhs": "", "rhs": "",
                       "residual": f"skipped: {exc}"}]
        return name, checks, time.monotonic() - t0

    if args.jobs > 1:
        with ThreadPoolExecutor(max_workers=args.jobs) as pool:
            for name, checks, dt in pool.map(run, suites):
                results[name], timings[name] = checks, dt
    else:
        for item in suites:
            name, checks, dt = run(item)
            results[name], timings[name] = checks, dt

    any_fail = False
    report = {"suite": args.suite, "config": {
        "quiver": cat.quiver.content_key(),
        "max_dim": args.max_dim, "seed": args.seed, "serre_cap": args.serre_cap,
    }, "checks": []}
    status_names = {True: "pass", False: "fail", None: "skipped"}
    for name, _fn in suites:
        for check in results[name]:
            row = {"suite": name, "status": status_names[check["ok"]], **check}
            report["checks"].append(row)
            if check["ok"] is False:
                any_fail = True
    if args.json:
        print(json.dumps(report, sort_keys=True))
    else:
        for row in report["checks"]:
            status = {True: "PASS", False: "FAIL", None: "SKIP"}[row["ok"]]
            print(f"{status}  [{row['suite']}] {row['id']}")
            if row["ok"] is False:
                print(f"      lhs: {row['lhs']}")
                print(f"      rhs: {row['rhs']}")
                print(f"      residual: {row['residual']}")
            elif row["ok"] is None and row["residual"]:
                print(f"      {row['residual']}")
        n_pass = sum(1 for r in report["checks"] if r["ok"] is True)
        n_fail = sum(1 for r in report["checks"] if r["ok"] is False)
        n_skip = sum(1 for r in report["checks"] if r["ok"] is None)
        print(f"{n_pass} passed, {n_fail} failed, {n_skip} skipped")
        if args.timing:
            for name, _fn in suites:
                print(f"time[{name}] = {timings[name]:.3f}s")
    return EXIT_FAIL if any_fail else EXIT_OK


def _build_suites(args, cat):
    suites = []
    want = args.suite

    if want in ("relations", "all"):
        suites.append((
            "relations",
            lambda: RelationVerifier(cat, serre_cap=args.serre_cap).verify_all(),
        ))
    if want == "serre":
        suites.append((
            "serre",
            lambda: RelationVerifier(cat, serre_cap=args.serre_cap).check_serre(),
        ))
    if want in ("drinfeld", "all"):
        suites.append(("drinfeld", lambda: _drinfeld_suite(cat, args.max_dim)))
    if want in ("assoc", "all"):
        suites.append((
            "assoc", lambda: _assoc_suite(cat, args.max_dim, args.seed, args.random)
        ))
    if want in ("oracle", "all"):
        suites.append(("oracle", lambda: _oracle_suite(cat, args.max_dim)))
    return suites


def _drinfeld_suite(cat, max_dim):
    hall = HallAlgebra(cat)
    dh = DHAlgebra(cat)
    classes = cat.classes_up_to_total_dim(max_dim)
    return [
        hall.check_dd_identity(a, b, dh) for a in classes for b in classes
    ]


def _generator_elements(cat, dh, max_dim):
    gens = []
    for c in cat.classes_up_to_total_dim(max_dim):
        if c.total_dim == 0:
            continue
        gens.append((f"E[{c.key}]", dh.e_elem(c.key)))
        gens.append((f"F[{c.key}]", dh.f_elem(c.key)))
    for i in range(cat.quiver.n):
        s = cat.quiver.simple_class(i)
        gens.append((f"K(S{i})", dh.k_elem(s)))
        gens.append((f"K(-S{i})", dh.k_elem(kv_neg(s))))
        gens.append((f"Kd(S{i})", dh.kd_elem(s)))
    return gens


def _assoc_suite(cat, max_dim, seed, n_random):
    dh = DHAlgebra(cat)
    gens = _generator_elements(cat, dh, min(max_dim, 1))
    checks = []
    for na, xa in gens:
        for nb, xb in gens:
            for nc, xc in gens:
                lhs = dh.product(dh.product(xa, xb), xc)
                rhs = dh.product(xa, dh.product(xb, xc))
                checks.append({
                    "id": f"assoc {na} {nb} {nc}",
                    "ok": (lhs - rhs).is_zero(),
                    "lhs": dh.render(lhs), "rhs": dh.render(rhs),
                    "residual": dh.render(lhs - rhs),
                })
    rng = random.Random(seed)
    pool = _generator_elements(cat, dh, max_dim)
    for t in range(n_random):
        (na, xa), (nb, xb), (nc, xc) = (rng.choice(pool) for _ in range(3))
        cid = f"assoc random#{t} {na} {nb} {nc}"
        try:
            lhs = dh.product(dh.product(xa, xb), xc)
            rhs = dh.product(xa, dh.product(xb, xc))
        except EnumerationTooLarge as exc:
            checks.append({"id": cid, "ok": None, "lhs": "", "rhs": "",
                           "residual": f"skipped: {exc}"})
            continue
        checks.append({
            "id": cid,
            "ok": (lhs - rhs).is_zero(),
            "lhs": dh.render(lhs), "rhs": dh.render(rhs),
            "residual": dh.render(lhs - rhs),
        })
    return checks


def _oracle_suite(cat, max_dim):
    if any(cat.quiver.loops):
        return [{"id": "oracle", "ok": None, "lhs": "", "rhs": "",
                 "residual": "skipped: quiver has loops, no finite projectives"}]
    cpx = ComplexCategory(cat)
    dh = DHAlgebra(cat)
    gens = _generator_elements(cat, dh, max_dim)
    checks = []
    for na, xa in gens:
        for nb, xb in gens:
            product_dh = dh.product(xa, xb)
            direct = cpx.normalize(
                cpx.product(_loc_of(cpx, dh, xa), _loc_of(cpx, dh, xb))
            )
            via_dh = cpx.eval_dh_element(product_dh)
            ok = (direct - via_dh).is_zero()
            checks.append({
                "id": f"oracle {na} o {nb}",
                "ok": ok,
                "lhs": cpx.render(direct),
                "rhs": cpx.render(via_dh),
                "residual": cpx.render(direct - via_dh),
            })
    return checks


def _loc_of(cpx, dh, x):
    """Evaluate a one-monomial normal element on the complex side."""
    assert len(x.terms) == 1
    ((mono, coeff),) = x.terms.items()
    akey, alpha, bkey, beta = mono
    factors = []
    a = dh.cat.class_by_key(akey)
    b = dh.cat.class_by_key(bkey)
    if a.total_dim:
        factors.append(cpx.e_elem(a.rep))
    if any(alpha):
        factors.append(cpx.k_elem(alpha))
    if b.total_dim:
        factors.append(cpx.f_elem(b.rep))
    if any(beta):
        factors.append(cpx.kd_elem(beta))
    return cpx.product_all(factors).scale(coeff)


if __name__ == "__main__":
    sys.exit(main())
