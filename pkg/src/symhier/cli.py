"""Command line front end: ``symhier <command> ...``.

Exit codes: 0 on success, 1 when a symmetry search or check comes back
negative, 2 on usage, parse, or equation-validation errors.  Reports go to
stdout (text, or key-sorted JSON with ``--json``); diagnostics and the
optional ``--timing`` line go to stderr, so stdout is reproducible.
"""

from __future__ import annotations

import argparse
import json
import math
import shlex
import sys
import time
from fractions import Fraction

from .diffalg import NEG_INFINITY, DiffPoly, GradedSeries, bracket
from .errors import EquationError, HypothesisViolated, ParseError
from .integrability import (
    EvolutionEquation,
    actual_profile,
    classify,
    default_degree_cap,
    linear_profile,
    propagate_order_bounds,
    solve_symmetry,
    theorem3_bound,
    verify_symmetry,
)
from .parsing import parse_expression
from .symbolic import P, SymPoly, gd_transform, p_cofactor, t_factor

EXIT_OK, EXIT_NEGATIVE, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _terms_json(p: DiffPoly) -> list[dict]:
    return [
        {"monomial": {str(i): e for i, e in mono}, "coef": str(c)}
        for mono, c in p.sorted_terms()
    ]


def _sym_json(s: SymPoly) -> dict:
    return {
        "nvars": s.nvars,
        "text": str(s),
        "terms": [{"exponents": list(e), "coef": str(c)} for e, c in s.sorted_terms()],
    }


def _poly_json(p: DiffPoly) -> dict:
    return {"text": str(p), "terms": _terms_json(p)}


def _bound_str(b) -> str:
    return "-inf" if b is NEG_INFINITY else str(b)


def _equation(text: str) -> EvolutionEquation:
    return EvolutionEquation.from_poly(parse_expression(text))


# -- commands --------------------------------------------------------------
# each returns (report dict, text lines, exit code)

def cmd_bracket(args):
    F, G = parse_expression(args.F), parse_expression(args.G)
    result = bracket(F, G)
    report = {"status": "OK", "F": str(F), "G": str(G), "bracket": _poly_json(result)}
    return report, [str(result)], EXIT_OK


def cmd_transform(args):
    p = parse_expression(args.F)
    comps = p.components()
    if 0 in comps:
        raise UsageError(f"constant term {comps[0]} has no symbol")
    symbols = [(k, gd_transform(c)) for k, c in comps.items()]
    report = {
        "status": "OK",
        "input": str(p),
        "symbols": [dict(_sym_json(s), degree=k) for k, s in symbols],
    }
    lines = [f"degree {k}: {s}" for k, s in symbols] or ["0"]
    return report, lines, EXIT_OK


def cmd_P(args):
    s = P(args.k, args.m)
    return {"status": "OK", "k": args.k, "m": args.m, "P": _sym_json(s)}, [str(s)], EXIT_OK


def cmd_factor(args):
    if args.k < 2 or args.m < 2:
        raise UsageError("factor needs -k >= 2 and -m >= 2")
    Ps, t, p = P(args.k, args.m), t_factor(args.k, args.m), p_cofactor(args.k, args.m)
    report = {
        "status": "OK", "k": args.k, "m": args.m,
        "P": _sym_json(Ps), "t": _sym_json(t), "p": _sym_json(p),
    }
    return report, [f"P = {Ps}", f"t = {t}", f"p = {p}"], EXIT_OK


def cmd_classify(args):
    if args.m < 2:
        raise UsageError("classify needs -m >= 2")
    case = classify(args.m)
    first = case.first(4)
    members = ", ".join(map(str, first))
    report = {"status": "OK", "m": args.m, "case": case.name, "label": case.label, "first": first}
    return report, [f"orders: {case.label} {{{members}, ...}}"], EXIT_OK


def cmd_symmetry(args):
    eq = _equation(args.eq)
    cap = args.degree_cap
    if cap is None:
        try:
            cap = default_degree_cap(eq, args.order)
        except HypothesisViolated as exc:
            raise UsageError(f"--degree-cap is required here: {exc}") from None
    if args.order == eq.m:
        raise UsageError("--order equals the equation's own order")
    if args.order < 2 or cap < 2:
        raise UsageError("--order and --degree-cap must be >= 2")
    res = solve_symmetry(eq, args.order, cap, truncated=args.truncated)
    report = {
        "status": res.status.value,
        "equation": str(eq),
        "order": res.order,
        "degree_cap": res.cap,
        "components": [],
        "failure": None,
    }
    lines = [f"equation: {eq}", f"order: {res.order}", f"degree cap: {res.cap}",
             f"status: {res.status.value}"]
    if res.found:
        for k, comp in res.E.components.items():
            report["components"].append({"degree": k, "text": str(comp), "terms": _terms_json(comp)})
        lines.append(f"E = {res.E}")
        lines.extend(f"  degree {k}: {comp}" for k, comp in res.E.components.items())
        return report, lines, EXIT_OK
    report["failure"] = {"degree": res.failure_degree, "remainder": str(res.remainder)}
    lines.append(f"failing degree: {res.failure_degree}")
    lines.append(f"remainder: {res.remainder}")
    return report, lines, EXIT_NEGATIVE


def cmd_verify(args):
    eq = _equation(args.eq)
    G = parse_expression(args.cand)
    cap = args.degree_cap
    ok = verify_symmetry(eq, GradedSeries.from_poly(G, cap), cap)
    residual = bracket(eq.series(cap), GradedSeries.from_poly(G, cap))
    report = {
        "status": "SYMMETRY" if ok else "NOT_SYMMETRY",
        "equation": str(eq),
        "candidate": str(G),
        "degree_cap": cap,
        "residual": [
            {"degree": k, "text": str(c)} for k, c in residual.components.items()
        ],
    }
    lines = [f"equation: {eq}", f"candidate: {G}", f"degree cap: {cap}",
             f"symmetry: {'yes' if ok else 'no'}"]
    lines.extend(f"  residual degree {k}: {c}" for k, c in residual.components.items())
    return report, lines, EXIT_OK if ok else EXIT_NEGATIVE


def cmd_estimate(args):
    eq = _equation(args.eq)
    n = args.order
    if n < 2:
        raise UsageError("--order must be >= 2")
    try:
        d3, bound3 = theorem3_bound(eq, n)
    except HypothesisViolated:
        d3, bound3 = None, None
    cap = args.degree_cap or (max(bound3, 2) if bound3 is not None else None)
    if cap is None:
        raise UsageError("--degree-cap is required when order(f) > m - 2")
    if args.d is not None:
        d = Fraction(args.d)
        profile = linear_profile(eq.m, d, cap)
        actual = actual_profile(eq, cap)
        for k in range(2, cap + 1):
            if actual[k] > profile[k]:
                raise UsageError(f"f^{k} has order {actual[k]} > {_bound_str(profile[k])} required by d={d}")
    else:
        d = None
        profile = actual_profile(eq, cap)
    est = propagate_order_bounds(profile, n, cap, d=d)
    report = {
        "status": "OK",
        "equation": str(eq),
        "order": n,
        "degree_cap": cap,
        "d": None if d is None else str(d),
        "bounds": {str(k): _bound_str(b) for k, b in est.bounds.items()},
        "polynomial_bound": None if d3 is None else {
            "d": "inf" if d3 == math.inf else str(d3), "degree_bound": bound3,
        },
    }
    lines = [f"equation: {eq}", f"order: {n}", f"degree cap: {cap}"]
    if d is not None:
        lines.append(f"d: {d}")
    lines.extend(f"  degree {k}: order <= {_bound_str(b)}" for k, b in est.bounds.items())
    if d3 is not None:
        lines.append(f"polynomial bound: d = {'inf' if d3 == math.inf else d3}, degree <= {bound3}")
    else:
        lines.append("polynomial bound: not applicable (order(f) > m - 2)")
    return report, lines, EXIT_OK


# -- argument parsing ------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="symhier",
        description="Generalized symmetries and hierarchy orders of u_t = u_m + f.",
    )
    parser.add_argument("--timing", action="store_true", help="print elapsed time to stderr")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit a JSON report")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("bracket", parents=[common], help="{F, G} of two differential polynomials")
    p.add_argument("F")
    p.add_argument("G")
    p.set_defaults(func=cmd_bracket)

    p = sub.add_parser("transform", parents=[common], help="symbols of the homogeneous components")
    p.add_argument("F")
    p.set_defaults(func=cmd_transform)

    p = sub.add_parser("P", parents=[common], help="(x1+...+xk)^m - (x1^m+...+xk^m)")
    p.add_argument("-k", type=int, required=True)
    p.add_argument("-m", type=int, required=True)
    p.set_defaults(func=cmd_P)

    p = sub.add_parser("factor", parents=[common], help="P = t * p")
    p.add_argument("-k", type=int, required=True)
    p.add_argument("-m", type=int, required=True)
    p.set_defaults(func=cmd_factor)

    p = sub.add_parser("classify", parents=[common], help="possible hierarchy orders for u_m + ...")
    p.add_argument("-m", type=int, required=True)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("symmetry", parents=[common], help="construct a symmetry of order L")
    p.add_argument("--eq", required=True)
    p.add_argument("--order", type=int, required=True)
    p.add_argument("--degree-cap", type=int)
    p.add_argument("--truncated", action="store_true",
                   help="check the bracket only up to the degree cap")
    p.set_defaults(func=cmd_symmetry)

    p = sub.add_parser("verify", parents=[common], help="check {F, G} = 0 up to a degree")
    p.add_argument("--eq", required=True)
    p.add_argument("--cand", required=True)
    p.add_argument("--degree-cap", type=int, required=True)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("estimate", parents=[common], help="order bounds for a symmetry of order L")
    p.add_argument("--eq", required=True)
    p.add_argument("--order", type=int, required=True)
    p.add_argument("--d", help="use the linear profile m-1-(k-1)d (rational)")
    p.add_argument("--degree-cap", type=int)
    p.set_defaults(func=cmd_estimate)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    argv = list(sys.argv[1:] if argv is None else argv)
    args = parser.parse_args(argv)  # exits with 2 on usage errors
    start = time.perf_counter()
    try:
        report, lines, code = args.func(args)
    except (ParseError, EquationError, UsageError, ValueError) as exc:
        print(f"symhier {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.json:
        report = dict(report, command=shlex.join(["symhier", *argv]))
        print(json.dumps(report, sort_keys=True, indent=2))
    else:
        print("\n".join(lines))
    if args.timing:
        print(f"elapsed: {time.perf_counter() - start:.3f} s", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
