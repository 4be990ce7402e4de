"""torsion6 command line."""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from .. import __version__
from ..ellcurve import EllipticCurveQ, curve_from_j, division_poly, primitive_division_poly, primitive_division_poly_integral
from ..exclusions import CheckConfig, check_ids, render_markdown, resolve, run_all
from ..exclusions.verdict import jsonable
from ..gl2group import (
    CeilingExceeded,
    FiniteMatrixGroup,
    borel,
    closure_quotient,
    gl2,
    label_group,
    label_registry,
    orbit,
    subgroups_up_to_conjugacy,
    to_rows,
)
from ..gl2group.group import DEFAULT_CEILING
from ..knowledgebase import FactsError, load_facts
from ..polyring import IntegerPolynomial, RationalPolynomial, full_factor, low_degree_factors, splitting_degree_exceeds
from ..polyring.factor import DEFAULT_SEED, PRIME_BUDGET
from .cache import DiskCache, atomic_write, default_cache_dir

# options whose values may legitimately start with "-"
SIGNED_OPTIONS = ("--j", "--a", "--b", "--coeffs", "--poly")
MAX_GL2_MODULUS = 25


class UsageError(Exception):
    pass


def pretty(f: RationalPolynomial) -> str:
    """Highest degree first: 3*x^4 + 12*x."""
    if f.is_zero():
        return "0"
    out = []
    for i in range(len(f.coefficients) - 1, -1, -1):
        c = f.coefficients[i]
        if c == 0:
            continue
        sign = "-" if c < 0 else "+"
        a = abs(c)
        mono = "" if i == 0 else ("x" if i == 1 else "x^%d" % i)
        if mono and a == 1:
            body = mono
        elif mono:
            body = "%s*%s" % (a, mono)
        else:
            body = str(a)
        out.append((sign, body))
    s = ("-" if out[0][0] == "-" else "") + out[0][1]
    for sign, body in out[1:]:
        s += " %s %s" % (sign, body)
    return s


def _rational(text: str, what: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise UsageError("%s must be a rational number, got %r" % (what, text)) from None


def _curve(args) -> EllipticCurveQ:
    if args.j is not None:
        if args.a is not None or args.b is not None:
            raise UsageError("give either --j or --a/--b, not both")
        j = _rational(args.j, "--j")
        try:
            return curve_from_j(j)
        except ValueError as e:
            raise UsageError(str(e)) from None
    if args.a is None or args.b is None:
        raise UsageError("need --j or both --a and --b")
    try:
        return EllipticCurveQ(_rational(args.a, "--a"), _rational(args.b, "--b"))
    except ValueError as e:
        raise UsageError(str(e)) from None


def _emit(text: str, path: str | None) -> None:
    if path:
        atomic_write(path, text)
    else:
        sys.stdout.write(text)


# -- divpoly and factor ---------------------------------------------------------------


def cmd_divpoly(args) -> int:
    if args.n < 1 or (args.primitive and args.n < 2):
        raise UsageError("--n must be at least %d" % (2 if args.primitive else 1))
    E = _curve(args)
    f = primitive_division_poly(E, args.n) if args.primitive else division_poly(E, args.n)
    out = {"curve": E.to_json(), "n": args.n, "primitive": args.primitive, "polynomial": pretty(f), "degree": f.degree}
    if args.factor_bound is not None:
        if args.factor_bound < 1:
            raise UsageError("--factor-bound must be positive")
        F, d = primitive_division_poly_integral(E, args.n)
        cert = low_degree_factors(F, args.factor_bound, seed=args.seed, prime_budget=args.prime_budget)
        out["factor_certificate"] = {
            "model_scale": str(d),
            "note": "factors are for f_n of the twist-minimal integral model; roots scale by model_scale",
            **cert.to_dict(),
        }
        out["factors"] = [pretty(RationalPolynomial(list(g.coefficients))) for g in cert.factors]
        out["splitting_witnesses"] = [splitting_degree_exceeds(g) for g in cert.factors]
    if args.json:
        print(json.dumps(jsonable(out), indent=2))
        return 0
    print(out["polynomial"])
    if args.factor_bound is not None:
        c = out["factor_certificate"]
        print("certificate: %s (bound %d, %d primes)" % (c["kind"], c["bound"], len(c["witness_primes"])))
        for g, w in zip(out["factors"], out["splitting_witnesses"]):
            print("factor: %s  [splitting witness: %s]" % (g, w))
    return 0


def _parse_poly(args) -> IntegerPolynomial:
    if args.coeffs:
        try:
            cs = [Fraction(c) for c in args.coeffs.split(",")]
        except ValueError:
            raise UsageError("--coeffs must be comma-separated rationals, lowest degree first") from None
        f = RationalPolynomial(cs)
    else:
        try:
            f = RationalPolynomial.from_text(args.poly)
        except ValueError as e:
            raise UsageError("cannot parse polynomial: %s" % e) from None
    if f.is_zero() or f.degree < 1:
        raise UsageError("need a non-constant polynomial")
    return IntegerPolynomial(f.primitive_integer())


def cmd_factor(args) -> int:
    f = _parse_poly(args)
    if args.bound is not None:
        if args.bound < 1:
            raise UsageError("--bound must be positive")
        cert = low_degree_factors(f, args.bound, seed=args.seed, prime_budget=args.prime_budget)
        out = cert.to_dict()
        out["factors_text"] = [pretty(RationalPolynomial(list(g.coefficients))) for g in cert.factors]
    else:
        fs = full_factor(f, seed=args.seed)
        out = {"factors": [g.to_json() for g in fs],
               "factors_text": [pretty(RationalPolynomial(list(g.coefficients))) for g in fs]}
    if args.json:
        print(json.dumps(out, indent=2))
    else:
        if "kind" in out:
            print("certificate: %s" % out["kind"])
        for t in out["factors_text"]:
            print(t)
    return 0


# -- gl2 --------------------------------------------------------------------------------


def _parse_gens(text: str, n: int):
    gens = []
    for part in text.split(";"):
        part = part.strip()
        if not part:
            continue
        try:
            rows = json.loads(part)
            a, b = rows[0]
            c, d = rows[1]
        except (ValueError, TypeError, IndexError):
            raise UsageError("bad matrix %r; use [[a,b],[c,d]]" % part) from None
        gens.append((a % n, b % n, c % n, d % n))
    return gens


def _group_from_args(args) -> FiniteMatrixGroup:
    n = args.mod
    if n < 2 or n > MAX_GL2_MODULUS:
        raise UsageError("--mod must be between 2 and %d" % MAX_GL2_MODULUS)
    if getattr(args, "label", None):
        try:
            G = label_group(args.label)
        except KeyError:
            raise UsageError("unknown label %r; known: %s" % (args.label, ", ".join(sorted(label_registry())))) from None
        if G.modulus != n:
            raise UsageError("label %s lives mod %d, not mod %d" % (args.label, G.modulus, n))
        return G
    if getattr(args, "gens", None):
        return FiniteMatrixGroup(n, _parse_gens(args.gens, n))
    return gl2(n)


def _vector(text: str, n: int):
    try:
        x, y = (int(v) % n for v in text.split(","))
    except ValueError:
        raise UsageError("--vector must be two integers like 1,0") from None
    return (x, y)


def cmd_gl2(args) -> int:
    G = _group_from_args(args)
    n = G.modulus
    if args.gl2_cmd == "orbit":
        v = _vector(args.vector, n)
        o = orbit(G, v)
        out = {"modulus": n, "vector": list(v), "orbit_size": len(o)}
        if args.json:
            print(json.dumps(out))
        else:
            print(len(o))
        return 0
    if args.gl2_cmd == "quotient":
        v = _vector(args.vector, n)
        G.materialize(args.ceiling)
        Q = closure_quotient(G, v)
        out = {"modulus": n, "vector": list(v), "orbit_size": Q.degree, "quotient": Q.identify(), "order": Q.order}
        print(json.dumps(out) if args.json else out["quotient"])
        return 0
    # subgroups
    amb = borel(n) if args.ambient == "borel" else G
    hs = subgroups_up_to_conjugacy(
        amb, order=args.order, max_order=args.max_order,
        require_det_surjective=args.det_surjective, ceiling=args.ceiling,
    )
    rows = [{"order": H.order, "generators": [to_rows(g) for g in H.generators]} for H in hs]
    if args.json:
        print(json.dumps({"modulus": n, "count": len(rows), "subgroups": rows}, indent=2))
    else:
        print("%d subgroups" % len(rows))
        for r in rows:
            print("order %d: %s" % (r["order"], json.dumps(r["generators"], separators=(",", ":"))))
    return 0


# -- check / report ---------------------------------------------------------------------


def _config(args) -> CheckConfig:
    if args.seed < 0 or args.seed >= 2**64:
        raise UsageError("--seed must be a 64-bit non-negative integer")
    for name in ("prime_budget", "ceiling", "jobs"):
        if getattr(args, name) is not None and getattr(args, name) < 1:
            raise UsageError("--%s must be positive" % name.replace("_", "-"))
    if args.facts:
        try:
            load_facts(args.facts)
        except (OSError, FactsError) as e:
            raise UsageError("cannot load facts: %s" % e) from None
    return CheckConfig(seed=args.seed, prime_budget=args.prime_budget, ceiling=args.ceiling,
                       facts=os.path.abspath(args.facts) if args.facts else None, timings=args.timings)


def _cache(args):
    if args.no_cache:
        return None
    return DiskCache(args.cache_dir or default_cache_dir())


def _run_and_write(args, only) -> int:
    cfg = _config(args)
    report = run_all(cfg, only=only, jobs=args.jobs or os.cpu_count() or 1, cache=_cache(args)).to_json()
    text = json.dumps(report, indent=2) + "\n"
    if args.json or not args.markdown:
        _emit(text, args.json)
    if args.markdown:
        _emit(render_markdown(report), args.markdown)
    for c in report["checks"]:
        print("%-18s %s" % (c["id"], c["status"]), file=sys.stderr)
    failed = [c["id"] for c in report["checks"] if c["status"] == "failed"]
    if failed:
        print("internal failure in: %s" % ", ".join(failed), file=sys.stderr)
        return 1
    return 0


def cmd_check(args) -> int:
    if args.all and args.ids:
        raise UsageError("give check ids or --all, not both")
    if not args.all and not args.ids:
        raise UsageError("give check ids or --all; valid ids: %s" % ", ".join(check_ids()))
    only = None
    if args.ids:
        try:
            resolve(args.ids)
        except KeyError as e:
            raise UsageError("unknown check %s; valid ids: %s" % (e, ", ".join(check_ids()))) from None
        only = args.ids
    return _run_and_write(args, only)


def cmd_report(args) -> int:
    if args.input:
        try:
            report = json.loads(open(args.input, encoding="utf-8").read())
        except (OSError, ValueError) as e:
            raise UsageError("cannot read report: %s" % e) from None
        _emit(render_markdown(report), args.markdown)
        return 0
    return _run_and_write(args, None)


# -- facts --------------------------------------------------------------------------------


def cmd_facts(args) -> int:
    try:
        kb = load_facts(args.facts)
    except (OSError, FactsError) as e:
        raise UsageError("invalid facts: %s" % e) from None
    if args.key:
        try:
            print(json.dumps(kb.record(args.key).to_json(), indent=2))
        except KeyError:
            raise UsageError("unknown key %r; valid: %s" % (args.key, ", ".join(sorted(kb.records)))) from None
        return 0
    if args.dump:
        print(json.dumps(kb.to_json(), indent=2))
        return 0
    print("facts version %s from %s: %d records, %d cited facts" % (kb.version, kb.source, len(kb.records), len(kb.cited)))
    for k, r in kb.records.items():
        print("  %-32s %s" % (k, r.kind))
    return 0


# -- parser -------------------------------------------------------------------------------


def _run_options(p):
    p.add_argument("--json", metavar="PATH", help="write the JSON report here (default: standard output)")
    p.add_argument("--markdown", metavar="PATH", help="also write a markdown rendering")
    p.add_argument("--jobs", type=int, default=None, help="worker processes (default: all cores)")
    p.add_argument("--seed", type=lambda s: int(s, 0), default=DEFAULT_SEED)
    p.add_argument("--prime-budget", type=int, default=PRIME_BUDGET)
    p.add_argument("--ceiling", type=int, default=DEFAULT_CEILING, help="largest group materialized")
    p.add_argument("--cache-dir", help="cache directory (default: $TORSION6_CACHE or ~/.cache/torsion6)")
    p.add_argument("--no-cache", action="store_true")
    p.add_argument("--facts", metavar="PATH", help="alternative facts file")
    p.add_argument("--timings", action="store_true", help="record runtime_ms (reports are then not reproducible byte for byte)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="torsion6", description="Torsion of rational elliptic curves over sextic fields: exclusion checks.")
    parser.add_argument("--version", action="version", version="torsion6 " + __version__)
    sub = parser.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("divpoly", help="division polynomials and low-degree factor certificates")
    p.add_argument("--j")
    p.add_argument("--a")
    p.add_argument("--b")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--primitive", action="store_true", help="f_n (exact order n) instead of the full division polynomial")
    p.add_argument("--factor-bound", type=int)
    p.add_argument("--seed", type=lambda s: int(s, 0), default=DEFAULT_SEED)
    p.add_argument("--prime-budget", type=int, default=PRIME_BUDGET)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_divpoly)

    p = sub.add_parser("factor", help="factor an integer polynomial")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--poly", help="text like '1*x^2 + -2' (terms c*x^k)")
    g.add_argument("--coeffs", help="comma-separated coefficients, lowest degree first")
    p.add_argument("--bound", type=int, help="only certify factors up to this degree")
    p.add_argument("--seed", type=lambda s: int(s, 0), default=DEFAULT_SEED)
    p.add_argument("--prime-budget", type=int, default=PRIME_BUDGET)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_factor)

    p = sub.add_parser("gl2", help="inspect subgroups of GL2(Z/N)")
    gs = p.add_subparsers(dest="gl2_cmd", required=True)
    for name in ("orbit", "subgroups", "quotient"):
        q = gs.add_parser(name)
        q.add_argument("--mod", type=int, required=True)
        q.add_argument("--gens", help='generators "[[a,b],[c,d]];[[...]]" (default: all of GL2)')
        q.add_argument("--label", help="a stored group label such as 3B.1.1")
        q.add_argument("--ceiling", type=int, default=DEFAULT_CEILING)
        q.add_argument("--json", action="store_true")
        if name in ("orbit", "quotient"):
            q.add_argument("--vector", required=True)
        if name == "subgroups":
            q.add_argument("--order", type=int)
            q.add_argument("--max-order", type=int)
            q.add_argument("--det-surjective", action="store_true")
            q.add_argument("--ambient", choices=("group", "borel"), default="group")
    p.set_defaults(func=cmd_gl2)

    p = sub.add_parser("check", help="run exclusion checks")
    p.add_argument("ids", nargs="*", help="check ids or group labels")
    p.add_argument("--all", action="store_true")
    _run_options(p)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("report", help="run every check, or render an existing JSON report")
    p.add_argument("--input", metavar="PATH", help="render this JSON report instead of running")
    _run_options(p)
    p.set_defaults(func=cmd_report)

    p = sub.add_parser("facts", help="inspect or validate the facts file")
    p.add_argument("--facts", metavar="PATH")
    p.add_argument("--key")
    p.add_argument("--dump", action="store_true")
    p.set_defaults(func=cmd_facts)
    return parser


def _join_signed(argv: list[str]) -> list[str]:
    out = []
    i = 0
    while i < len(argv):
        a = argv[i]
        if a in SIGNED_OPTIONS and i + 1 < len(argv) and argv[i + 1].startswith("-"):
            out.append("%s=%s" % (a, argv[i + 1]))
            i += 2
            continue
        out.append(a)
        i += 1
    return out


def main(argv=None) -> int:
    argv = _join_signed(list(sys.argv[1:] if argv is None else argv))
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        return args.func(args)
    except UsageError as e:
        print("torsion6: error: %s" % e, file=sys.stderr)
        return 2
    except CeilingExceeded as e:
        print("torsion6: enumeration ceiling exceeded: %s" % e, file=sys.stderr)
        return 1
    except (MemoryError, OSError) as e:
        print("torsion6: %s" % e, file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
