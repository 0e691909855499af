"""Command-line interface: ``greensum {sumrule,verify,figure,eigs,identity}``.

Exit codes: 0 when every check passes, 1 when a check fails, 2 for a bad
selector (unknown module, case, identity or out-of-range parameter).
"""

import argparse
import json
import math
import sys
from decimal import Decimal

from . import __version__, boxlab, powerlaw, susy, verification
from .errors import DomainError, GreensumError
from .verification import Check

EXIT_OK, EXIT_FAIL, EXIT_SELECTOR = 0, 1, 2


class SelectorError(Exception):
    pass


def _document(reports, timing=False):
    body = {"version": __version__, "checks": [r.as_dict(timing) for r in sorted(reports, key=lambda r: r.check_id)]}
    return json.dumps(body, indent=2, sort_keys=True) + "\n"


def _emit(reports, out, timing=False):
    for r in reports:
        print(r.line())
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(_document(reports, timing))
    return EXIT_OK if all(r.passed for r in reports) else EXIT_FAIL


# -- sumrule -----------------------------------------------------------------


def _box_checks(case, k, tol):
    try:
        case = boxlab.BoundaryCase.of(case)
    except DomainError as exc:
        raise SelectorError(str(exc)) from None
    slots = {-2: 0, -4: 1}
    if k not in slots:
        raise SelectorError("box sum rules are available for k = -2 and k = -4")
    ref = boxlab.SUM_RULES[case][slots[k]]
    return [
        Check(
            f"boxlab.sumrule.case{case.value}.k{k}",
            "boxlab",
            1,
            f"Case {case.value}: int g_{k}(x,x) dx",
            "closed-form",
            tol or 1e-10,
            lambda: (boxlab.diagonal_sum(case, k), ref),
        )
    ]


def _powerlaw_checks(alpha, which, states, tol):
    try:
        p = powerlaw.PowerLawPotential(alpha)
        formula = {"alternating": powerlaw.sum_alternating, "even": powerlaw.sum_even, "odd": powerlaw.sum_odd}[which]
        value = formula(p.nu)
    except DomainError as exc:
        raise SelectorError(str(exc)) from None

    def run():
        sums = powerlaw.shooting_sums(alpha, states)
        return value, getattr(sums, which), f"{states} shooting states per parity + WKB tail"

    default = 1e-4 if which == "alternating" else 1e-3
    return [
        Check(
            f"powerlaw.sumrule.alpha{alpha:g}.{which}",
            "powerlaw",
            7,
            f"alpha={alpha:g}: {which} Gamma-function sum against shooting eigenvalues",
            "oracle",
            tol or default,
            run,
        )
    ]


def _oscillator_checks(tol):
    ref = math.pi**2 / 32
    return [
        Check("susy.oscillator.ss1", "susy", 6, "-2 int G^2 G'", "closed-form", tol or 1e-6,
              lambda: (susy.oscillator_suite().ss1, ref)),
        Check("susy.oscillator.ss2", "susy", 6, "-2 int G'^2 G", "closed-form", tol or 1e-6,
              lambda: (susy.oscillator_suite().ss2, ref)),
    ]


def cmd_sumrule(args):
    if args.box is not None:
        if args.k is None:
            raise SelectorError("--box needs --k")
        checks = _box_checks(args.box, args.k, args.tol)
    elif args.powerlaw is not None:
        which = "even" if args.even else "odd" if args.odd else "alternating"
        checks = _powerlaw_checks(args.powerlaw, which, args.states, args.tol)
    else:
        checks = _oscillator_checks(args.tol)
    return _emit([c.run() for c in checks], args.out)


# -- verify ------------------------------------------------------------------


def cmd_verify(args):
    try:
        checks = verification.select(module=args.only)
    except KeyError as exc:
        raise SelectorError(exc.args[0]) from None
    reports = verification.run_checks(checks, jobs=args.jobs)
    code = _emit(reports, args.out, args.timing)
    failed = sum(not r.passed for r in reports)
    print(f"{len(reports)} checks, {failed} failed")
    return code


# -- figure ------------------------------------------------------------------


def _fmt(v):
    # 12 significant digits in positional notation
    return format(Decimal(f"{float(v) + 0.0:.11e}"), "f")


def cmd_figure(args):
    if args.n not in (2, 4, 6, 8):
        raise SelectorError("figure data is produced for n in {2, 4, 6, 8}")
    if args.samples < 2:
        raise SelectorError("need at least two samples")
    data = powerlaw.emit_figure_data(args.n, tuple(args.range), args.samples)
    cols = ("x", "U", "U_partner", "groundstate")
    lines = [",".join(cols)]
    for row in zip(*(data[c] for c in cols)):
        lines.append(",".join(_fmt(v) for v in row))
    text = "\n".join(lines) + "\n"
    if args.out in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    return EXIT_OK


# -- eigs / identity ---------------------------------------------------------


def cmd_eigs(args):
    if args.count < 1:
        raise SelectorError("--count must be at least 1")
    try:
        powerlaw.PowerLawPotential(args.alpha)
    except DomainError as exc:
        raise SelectorError(str(exc)) from None
    solve = powerlaw.partner_spectrum if args.partner else powerlaw.spectrum
    for i, e in enumerate(solve(args.alpha, args.parity, args.count, args.h)):
        print(f"{i} {_fmt(e)}")
    return EXIT_OK


def cmd_identity(args):
    if args.id not in boxlab.IDENTITIES:
        raise SelectorError(f"unknown identity {args.id!r}; choose from q1..q8")
    if args.grid < 1:
        raise SelectorError("--grid must be at least 1")
    tol = 1e-8 if args.id in ("q6", "q7") else 1e-6
    check = Check(
        f"boxlab.identity.{args.id}",
        "boxlab",
        2,
        f"identity {args.id}: max |lhs - rhs| over a {args.grid}x{args.grid} grid",
        "closed-form",
        tol,
        lambda: (boxlab.identity_check(args.id, boxlab.default_grid(args.grid)).max_residual, 0.0),
    )
    return _emit([check.run()], args.out)


# -- parser ------------------------------------------------------------------


def build_parser():
    parser = argparse.ArgumentParser(prog="greensum", description="Green's-function sum rules and their checks.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sumrule", help="evaluate one sum rule against its reference")
    sel = p.add_mutually_exclusive_group(required=True)
    sel.add_argument("--box", type=int, metavar="CASE", help="box case 1..4")
    sel.add_argument("--powerlaw", type=float, metavar="ALPHA", help="U = |x|**ALPHA")
    sel.add_argument("--oscillator", action="store_true", help="second-order oscillator sum at eps = -1")
    p.add_argument("--k", type=int, help="exponent for --box (-2 or -4)")
    par = p.add_mutually_exclusive_group()
    par.add_argument("--alternating", action="store_true", help="alternating sum (default for --powerlaw)")
    par.add_argument("--even", action="store_true")
    par.add_argument("--odd", action="store_true")
    p.add_argument("--states", type=int, default=40, help="shooting states per parity (default 40)")
    p.add_argument("--tol", type=float, help="override the check tolerance")
    p.add_argument("--out", metavar="PATH", help="write a JSON report")
    p.set_defaults(func=cmd_sumrule)

    p = sub.add_parser("verify", help="run the verification suite")
    sel = p.add_mutually_exclusive_group(required=True)
    sel.add_argument("--all", action="store_true")
    sel.add_argument("--only", metavar="MODULE", help=f"one of: {', '.join(verification.MODULES)}")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--out", metavar="PATH", help="write a JSON report")
    p.add_argument("--timing", action="store_true", help="include wall times in the JSON report")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("figure", help="potential, partner and E = 0 state for U = |x|**n")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--range", type=float, nargs=2, default=(-2.0, 2.0), metavar=("A", "B"))
    p.add_argument("--samples", type=int, default=801)
    p.add_argument("--out", metavar="PATH", help="CSV destination (default stdout)")
    p.set_defaults(func=cmd_figure)

    p = sub.add_parser("eigs", help="shooting eigenvalues of U = |x|**alpha in one parity sector")
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--parity", choices=("even", "odd"), required=True)
    p.add_argument("--count", type=int, required=True)
    p.add_argument("--partner", action="store_true", help="use the partner potential instead")
    p.add_argument("--h", type=float, default=1e-3, help="grid step (default 1e-3)")
    p.set_defaults(func=cmd_eigs)

    p = sub.add_parser("identity", help="check one box integral identity q1..q8")
    p.add_argument("--id", required=True)
    p.add_argument("--grid", type=int, default=5)
    p.add_argument("--out", metavar="PATH", help="write a JSON report")
    p.set_defaults(func=cmd_identity)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except SelectorError as exc:
        print(f"greensum: error: {exc}", file=sys.stderr)
        return EXIT_SELECTOR
    except GreensumError as exc:
        print(f"greensum: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
