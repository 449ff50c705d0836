"""Command-line front end: eval, verify, region, loop-dump.

Complex literals are written "re" or "re,im".  Exit status: 0 success,
1 domain/constraint error, 2 convergence failure (or a failed verification),
3 usage error.
"""

from __future__ import annotations

import argparse
import json
import re
import sys

import numpy as np

from . import contour, euler, identities, series
from .errors import (
    ConstraintError,
    DegenerateError,
    DiscontinuityError,
    DomainError,
    GeometryError,
    HornFPError,
    NoConvergence,
    NonIntegrable,
    PoleError,
    UnsupportedRegion,
)
from .result import EvalResult

EXIT_OK, EXIT_DOMAIN, EXIT_CONVERGENCE, EXIT_USAGE = 0, 1, 2, 3

ARITY = {"2f1": 3, "f1": 4, "h2": 5, "fp": 5}

REPRESENTATIONS = {
    "2f1": ("auto", "series", *euler.HYP2F1_FORMS, "loop-outside", "loop-inside"),
    "f1": ("auto", "series"),
    "h2": ("auto", "series", "series-3.2", *euler.H2_FORMS, "loop"),
    "fp": ("auto", "series", *euler.FP_FORMS),
}

_COMPLEX = re.compile(r"^\s*[-+]?[\d.]+(?:[eE][-+]?\d+)?\s*(?:,\s*[-+]?[\d.]+(?:[eE][-+]?\d+)?\s*)?$")


class UsageError(Exception):
    pass


def complex_literal(text: str) -> complex:
    """Parse "re" or "re,im"."""
    if not _COMPLEX.match(text):
        raise argparse.ArgumentTypeError(f"not a complex literal: {text!r} (use re or re,im)")
    parts = [float(p) for p in text.split(",")]
    return complex(parts[0], parts[1] if len(parts) == 2 else 0.0)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="hornfp", description="Evaluate and cross-check H2, F_P and 2F1.")
    # let "-0.5,0.2" be read as a value, not an option
    p._negative_number_matcher = re.compile(r"^-[\d.]")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)

    def common(sp):
        sp.add_argument("--format", choices=("text", "machine"), default="text")
        sp.add_argument("--out", help="write output to this file instead of stdout")
        sp._negative_number_matcher = p._negative_number_matcher

    ev = sub.add_parser("eval", help="evaluate one function value")
    ev.add_argument("function", choices=sorted(ARITY))
    ev.add_argument("--params", nargs="+", type=complex_literal, required=True)
    ev.add_argument("--x", type=complex_literal, required=True, help="x (or z for 2f1)")
    ev.add_argument("--y", type=complex_literal, default=None)
    ev.add_argument("--rep", default="auto", help="representation tag")
    ev.add_argument("--tol", type=float, default=1e-8)
    common(ev)

    ve = sub.add_parser("verify", help="run the identity suite or one identity")
    ve.add_argument("--suite", choices=sorted(identities.SUITE_SAMPLES), default="fast")
    ve.add_argument("--seed", type=int, default=42)
    ve.add_argument("--id", action="append", dest="ids", help="restrict to identity (repeatable)")
    ve.add_argument("--tol", type=float, default=1e-10)
    ve.add_argument("--jobs", type=int, default=1)
    common(ve)

    rg = sub.add_parser("region", help="CSV grid of region membership")
    rg.add_argument("--region", action="append", dest="regions", required=True,
                    choices=series.REGIONS)
    rg.add_argument("--xlim", nargs=2, type=float, default=(-2.0, 2.0))
    rg.add_argument("--ylim", nargs=2, type=float, default=(-2.0, 2.0))
    rg.add_argument("--n", nargs=2, type=int, default=(21, 21), metavar=("NX", "NY"))
    common(rg)

    ld = sub.add_parser("loop-dump", help="CSV of a double loop with tracked arguments")
    ld.add_argument("--epsilon", type=float, default=None)
    ld.add_argument("--t0", type=float, default=None)
    ld.add_argument("--group", type=complex_literal, default=None,
                    help="point enclosed together with 0")
    ld.add_argument("--exclude", nargs="*", type=complex_literal, default=[])
    ld.add_argument("--h2-point", nargs=2, type=complex_literal, metavar=("X", "Y"),
                    help="use the loop of the H2 double-loop integral at (X, Y)")
    ld.add_argument("--per-element", type=int, default=64)
    common(ld)
    return p


# ---------------------------------------------------------------------------


def _format_result(r: EvalResult, fmt: str) -> str:
    v = r.value
    if fmt == "machine":
        return json.dumps({
            "re": v.real, "im": v.imag, "err_estimate": r.err_estimate,
            "method": r.method, "terms_or_nodes": r.terms_or_nodes, "status": r.status,
        })
    return (
        f"value={v.real:.16g},{v.imag:.16g} err_estimate={r.err_estimate:.3e} "
        f"method={r.method} terms_or_nodes={r.terms_or_nodes}"
    )


def evaluate(function: str, params, x, y, rep: str, tol: float) -> EvalResult:
    if len(params) != ARITY[function]:
        raise UsageError(f"{function} takes {ARITY[function]} parameters, got {len(params)}")
    if rep not in REPRESENTATIONS[function]:
        raise UsageError(f"representation {rep!r} is not available for {function}; "
                         f"choose from {', '.join(REPRESENTATIONS[function])}")
    if function != "2f1" and y is None:
        raise UsageError(f"{function} needs --y")

    if function == "2f1":
        a, b, c = params
        if rep in ("auto", "series"):
            return series.hyp2f1(a, b, c, x, min(tol, 1e-14))
        if rep == "loop-outside":
            return contour.hyp2f1_loop("outside", a, b, c, x, tol=tol)
        if rep == "loop-inside":
            return contour.hyp2f1_loop("inside", a, b, c, x, tol=tol)
        return euler.hyp2f1_euler(rep, a, b, c, x, tol)

    if function == "f1":
        return series.appell_f1(*params, x, y, min(tol, 1e-14))

    if function == "h2":
        p = series.H2Params(*params)
        if rep == "auto":
            if series.in_omega1(x, y):
                return series.h2_series(p, x, y)
            try:
                return euler.h2_integral("H3.3", p, x, y, tol)
            except ConstraintError:
                return contour.kita_h2_loop(*params, x, y, tol=tol)
        if rep == "series":
            return series.h2_series(p, x, y)
        if rep == "series-3.2":
            return series.h2_series(p, x, y, form="3.2")
        if rep == "loop":
            return contour.kita_h2_loop(*params, x, y, tol=tol)
        return euler.h2_integral(rep, p, x, y, tol)

    p = series.FPParams(*params)
    if rep == "auto":
        if series.in_fp41(x, y) or series.in_fp44(x, y):
            return series.fp_series(p, x, y)
        return euler.fp_integral("FP-eq32", p, x, y, tol)
    if rep == "series":
        return series.fp_series(p, x, y)
    return euler.fp_integral(rep, p, x, y, tol)


def _region_csv(args) -> str:
    xs = np.linspace(*args.xlim, args.n[0])
    ys = np.linspace(*args.ylim, args.n[1])
    lines = [",".join(["x", "y", *args.regions])]
    for yv in ys:
        for xv in xs:
            cells = []
            for name in args.regions:
                try:
                    cells.append(str(series.region_contains(name, float(xv), float(yv))).lower())
                except UnsupportedRegion:
                    cells.append("")
            lines.append(",".join([f"{xv:.12g}", f"{yv:.12g}", *cells]))
    return "\n".join(lines) + "\n"


def _loop_csv(args) -> str:
    import io

    if args.h2_point is not None:
        spec = contour.kita_loop_spec(*args.h2_point, epsilon=args.epsilon, t0=args.t0)
    else:
        spec = contour.LoopSpec(args.epsilon, args.t0, args.group, tuple(args.exclude))
    buf = io.StringIO()
    contour.build_double_loop(spec).dump_csv(buf, args.per_element)
    return buf.getvalue()


def _emit(text: str, out: str | None):
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def dispatch(args) -> int:
    if args.command == "eval":
        r = evaluate(args.function, args.params, args.x, args.y, args.rep, args.tol)
        _emit(_format_result(r, args.format) + "\n", args.out)
        return EXIT_OK
    if args.command == "verify":
        try:
            reports = identities.run_suite(args.suite, args.seed, args.tol, args.ids, args.jobs)
        except KeyError as exc:
            raise UsageError(str(exc.args[0])) from exc
        _emit(identities.format_reports(reports, args.format), args.out)
        return EXIT_OK if all(r.status != "fail" for r in reports) else EXIT_CONVERGENCE
    if args.command == "region":
        _emit(_region_csv(args), args.out)
        return EXIT_OK
    if args.command == "loop-dump":
        _emit(_loop_csv(args), args.out)
        return EXIT_OK
    raise UsageError("a subcommand is required (eval, verify, region, loop-dump)")


_DOMAIN_ERRORS = (DomainError, ConstraintError, PoleError, GeometryError, UnsupportedRegion,
                  NonIntegrable, DegenerateError)
_CONVERGENCE_ERRORS = (NoConvergence, DiscontinuityError)


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return dispatch(args)
    except UsageError as exc:
        print(f"hornfp: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except _DOMAIN_ERRORS as exc:
        print(f"hornfp: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except _CONVERGENCE_ERRORS as exc:
        print(f"hornfp: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_CONVERGENCE
    except HornFPError as exc:
        print(f"hornfp: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
