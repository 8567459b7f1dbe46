"""Command-line entry point.

Subcommands: ``expand`` (tail coefficients by one or all of the three
methods), ``implicitize`` (vanishing-polynomial reconstruction),
``henselize`` (reduced Henselian equation of the tail), ``certify``
(finite-depth vanishing certificate), ``oracle`` (Newton lifting), and
``selftest`` (built-in fixtures).  Every invocation writes one
deterministic JSON object.

Exit codes: 0 success, 1 negative mathematical result (not algebraic at
bounds, certification false, method disagreement, inconsistent seed),
2 input or precision error, 3 enumeration budget exceeded.
"""

from __future__ import annotations

import argparse
import os
import sys
from fractions import Fraction

from .bivar import BivarPoly
from .errors import (BudgetError, InputError, LiftError, NotAlgebraicError,
                     NotSimpleRootError, PrecisionError)
from .flajolet_soria import (DEFAULT_NODE_BUDGET, EnumerationBudget,
                             closed_form_coefficient, fs_coefficient)
from .henselization import branch_data, coefficient_after_branch, henselize, order_sequence
from .newton import newton_lift
from .serialize import (dumps, load_json, poly_from_obj, poly_to_obj, rat_to_str,
                        series_from_obj, series_to_obj, shape_from_obj)
from .series import TruncatedSeries
from .support import full_support
from .wilczynski import certify, reconstruct

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_INPUT = 2
EXIT_BUDGET = 3

BUDGET_ENV = "ALGSERIES_BUDGET"


def _budget_from(args) -> EnumerationBudget:
    limit = args.budget
    if limit is None:
        env = os.environ.get(BUDGET_ENV)
        limit = int(env) if env else DEFAULT_NODE_BUDGET
    if limit <= 0:
        raise InputError("budget must be positive")
    return EnumerationBudget(limit=limit)


def _emit(args, payload: dict) -> None:
    text = dumps(payload)
    if getattr(args, "output", None):
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _seed_for_expansion(P: BivarPoly, seed: TruncatedSeries):
    """Ensure the seed reaches one coefficient past the branch index,
    extending it by the uniquely determined next coefficient if it stops
    exactly at the branch point, and reject seeds whose order sequence is
    not that of a simple root."""
    bd = branch_data(P, seed)
    coeffs = list(seed.one_based())
    if len(coeffs) == bd.k0 + 1:
        coeffs.append(coefficient_after_branch(P, seed, bd.k0, bd.i_k0, bd.omega0))
    trace = order_sequence(P, TruncatedSeries(coeffs), len(coeffs))
    if trace.failure_at is not None:
        raise NotSimpleRootError(
            f"seed is not the prefix of any root (order stalled at k={trace.failure_at})"
        )
    for k in range(bd.k0, len(coeffs)):
        if trace.order_at(k + 1) != trace.order_at(k) + 1:
            raise NotSimpleRootError(f"order step at k={k} is not 1: seed leaves the branch")
    return bd, coeffs


def _cmd_expand(args) -> tuple[dict, int]:
    P = poly_from_obj(load_json(args.poly))
    seed = series_from_obj(load_json(args.seed))
    if args.count < 1:
        raise InputError("count must be at least 1")
    budget = _budget_from(args)
    bd, coeffs = _seed_for_expansion(P, seed)
    k = len(coeffs) - 1
    i_k = bd.i_k0 + (k - bd.k0)
    base = TruncatedSeries(coeffs, precision=len(coeffs), start=1)

    results: dict[str, list[Fraction]] = {}
    methods = ["newton", "fs", "closed"] if args.method == "all" else [args.method]
    for method in methods:
        if method == "newton":
            report = newton_lift(P, coeffs, k + 1 + args.count)
            results[method] = [report.series.coefficient(k + 1 + p)
                               for p in range(1, args.count + 1)]
        elif method == "fs":
            form = henselize(P, base, k)
            if form.polynomial_root is not None:
                results[method] = [Fraction(0)] * args.count
            else:
                results[method] = [fs_coefficient(form.eq, p, budget=budget)
                                   for p in range(1, args.count + 1)]
        else:
            results[method] = [
                closed_form_coefficient(P, coeffs, k, i_k, bd.omega0, p, budget=budget)
                for p in range(1, args.count + 1)
            ]

    payload = {
        "k": k,
        "k0": bd.k0,
        "i_k": i_k,
        "omega0": rat_to_str(bd.omega0),
        "seed": [rat_to_str(c) for c in coeffs],
    }
    if args.method == "all":
        agree = results["newton"] == results["fs"] == results["closed"]
        payload["coefficients"] = {m: [rat_to_str(c) for c in results[m]] for m in results}
        payload["agree"] = agree
        return payload, EXIT_OK if agree else EXIT_NEGATIVE
    payload["method"] = args.method
    payload["coefficients"] = [rat_to_str(c) for c in results[args.method]]
    return payload, EXIT_OK


def _cmd_implicitize(args) -> tuple[dict, int]:
    series = series_from_obj(load_json(args.series))
    shape = shape_from_obj(load_json(args.shape)) if args.shape else full_support(args.dx, args.dy)
    try:
        result = reconstruct(shape, series, args.dx, args.dy, minor_budget=args.minor_budget)
    except NotAlgebraicError as exc:
        return {"result": "not-algebraic-at-bounds", "detail": str(exc)}, EXIT_NEGATIVE
    payload = {
        "result": "algebraic",
        "conditional": result.conditional,
        "rank": result.rank,
        "polynomial": poly_to_obj(result.poly),
    }
    return payload, EXIT_OK


def _cmd_henselize(args) -> tuple[dict, int]:
    P = poly_from_obj(load_json(args.poly))
    seed = series_from_obj(load_json(args.seed))
    form = henselize(P, seed, args.k)
    if form.polynomial_root is not None:
        return {"polynomial_root": True,
                "z": [rat_to_str(c) for c in form.polynomial_root]}, EXIT_OK
    payload = {
        "k0": branch_data(P, seed).k0,
        "i_k": form.i_k,
        "omega0": rat_to_str(form.omega0),
        "b": [{"l": l, "m": m, "c": rat_to_str(c)}
              for (l, m), c in sorted(form.eq.terms.items())],
    }
    return payload, EXIT_OK


def _cmd_certify(args) -> tuple[dict, int]:
    P = poly_from_obj(load_json(args.poly))
    series = series_from_obj(load_json(args.series))
    ok = certify(P, series, args.dx, args.dy)
    tau = 2 * args.dx * args.dy
    return {"certified": ok, "tau": tau}, EXIT_OK if ok else EXIT_NEGATIVE


def _cmd_oracle(args) -> tuple[dict, int]:
    P = poly_from_obj(load_json(args.poly))
    seed = series_from_obj(load_json(args.seed))
    _, coeffs = _seed_for_expansion(P, seed)
    if args.count < len(coeffs):
        raise InputError("count must reach past the seed")
    report = newton_lift(P, coeffs, args.count)
    return series_to_obj(report.series), EXIT_OK


def _selftest_checks():
    from .flajolet_soria import ReducedHenselEq, fs_expand

    e4 = BivarPoly({(0, 2): 1, (2, 0): -1, (2, 1): -2, (2, 2): 1})

    def check_branch():
        seed = TruncatedSeries([1])
        bd = branch_data(e4, seed)
        assert (bd.k0, bd.i_k0, bd.omega0) == (0, 2, Fraction(2)), bd
        trace = order_sequence(e4, seed, 1)
        assert trace.order_at(0) == 2 and trace.order_at(1) == 3, trace

    def check_triple():
        seed = TruncatedSeries([1, 1])
        report = newton_lift(e4, [1, 1], 5)
        expect = [Fraction(0), Fraction(-1), Fraction(-1, 2)]
        assert [report.series.coefficient(n) for n in (3, 4, 5)] == expect
        form = henselize(e4, seed, 1)
        assert [fs_coefficient(form.eq, p) for p in (1, 2, 3)] == expect
        got = [closed_form_coefficient(e4, [1, 1], 1, 3, 2, p) for p in (1, 2, 3)]
        assert got == expect, got

    def check_implicitize():
        from .support import SupportShape

        shape = SupportShape(F=((2, 1), (0, 2), (2, 2)), G=((2, 0),))
        lifted = newton_lift(e4, [1, 1], 16).series
        result = reconstruct(shape, lifted, 2, 2)
        expect = BivarPoly({(2, 0): -1, (2, 1): -2, (0, 2): 1, (2, 2): 1})
        assert result.poly == expect, result.poly
        assert certify(result.poly, lifted, 2, 2)

    def check_catalan():
        q = ReducedHenselEq({(1, 0): 1, (0, 2): 1})
        got = fs_expand(q, 6).one_based()
        assert list(got) == [1, 1, 2, 5, 14, 42], got

    return [
        ("branch-data", check_branch),
        ("triple-agreement", check_triple),
        ("implicitize", check_implicitize),
        ("catalan", check_catalan),
    ]


def _cmd_selftest(args) -> tuple[dict, int]:
    passed = []
    for name, check in _selftest_checks():
        try:
            check()
        except AssertionError as exc:
            return {"selftest": "failed", "check": name, "detail": str(exc)}, EXIT_NEGATIVE
        passed.append(name)
    return {"selftest": "ok", "checks": passed}, EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="algseries",
        description="exact toolkit for algebraic power series",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--output", "-o", help="write the JSON result to this path")
        p.add_argument("--budget", type=int, default=None,
                       help=f"enumeration node budget (default {DEFAULT_NODE_BUDGET}, "
                            f"env {BUDGET_ENV})")

    p = sub.add_parser("expand", help="tail coefficients of a simple root")
    p.add_argument("--poly", required=True)
    p.add_argument("--seed", required=True)
    p.add_argument("--count", type=int, required=True)
    p.add_argument("--method", choices=["fs", "closed", "newton", "all"], default="all")
    common(p)
    p.set_defaults(handler=_cmd_expand)

    p = sub.add_parser("implicitize", help="reconstruct a vanishing polynomial")
    p.add_argument("--series", required=True)
    p.add_argument("--dx", type=int, required=True)
    p.add_argument("--dy", type=int, required=True)
    p.add_argument("--shape", default=None)
    p.add_argument("--minor-budget", type=int, default=512)
    common(p)
    p.set_defaults(handler=_cmd_implicitize)

    p = sub.add_parser("henselize", help="reduced Henselian equation of the tail")
    p.add_argument("--poly", required=True)
    p.add_argument("--seed", required=True)
    p.add_argument("--k", type=int, required=True)
    common(p)
    p.set_defaults(handler=_cmd_henselize)

    p = sub.add_parser("certify", help="finite-depth vanishing certificate")
    p.add_argument("--poly", required=True)
    p.add_argument("--series", required=True)
    p.add_argument("--dx", type=int, required=True)
    p.add_argument("--dy", type=int, required=True)
    common(p)
    p.set_defaults(handler=_cmd_certify)

    p = sub.add_parser("oracle", help="Newton lifting of a seeded root")
    p.add_argument("--poly", required=True)
    p.add_argument("--seed", required=True)
    p.add_argument("--count", type=int, required=True)
    common(p)
    p.set_defaults(handler=_cmd_oracle)

    p = sub.add_parser("selftest", help="run the built-in fixtures")
    common(p)
    p.set_defaults(handler=_cmd_selftest)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        payload, code = args.handler(args)
    except (InputError, PrecisionError) as exc:
        _emit(args, {"error": type(exc).__name__, "detail": str(exc)})
        return EXIT_INPUT
    except BudgetError as exc:
        _emit(args, {"error": "BudgetError", "detail": str(exc)})
        return EXIT_BUDGET
    except (NotSimpleRootError, LiftError, NotAlgebraicError) as exc:
        _emit(args, {"error": type(exc).__name__, "detail": str(exc)})
        return EXIT_NEGATIVE
    _emit(args, payload)
    return code


if __name__ == "__main__":
    sys.exit(main())
