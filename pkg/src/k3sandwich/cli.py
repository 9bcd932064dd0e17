"""Command-line front end.  Stdout carries JSON only; logs go to stderr.

Exit codes: 0 verified, 1 verification failed, 2 usage or input error.
Polynomials are comma-separated rationals in ascending degree ("1,0,0,0,1"
is 1 + t^4); rational functions are "num;den".  Values starting with a minus
sign need the --opt=value spelling.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from fractions import Fraction

from . import __version__
from .errors import CriterionFailed, InputError, K3SandwichError, VerificationError
from .exactalg import as_rat, parse_poly, parse_ratfunc, poly_to_json, rat_str
from .lattice import (
    disc,
    disc_forms_isomorphic,
    discriminant_form,
    lattice_from_json,
    lattice_to_json,
    overlattice,
    signature,
)
from .quadform import criterion, lemma_report
from .ellsurf.fibers import euler_number, kodaira_classify
from .ellsurf.heights import height_report
from .ellsurf.model import SectionPoint, WeierstrassModel
from .isogeny import quotient_curve, sandwich_report
from .series import build_member, solve_section_series2, solve_section_series3, verify_sandwich

log = logging.getLogger("k3sandwich")


class UsageError(InputError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _exact(obj):
    if isinstance(obj, Fraction):
        return rat_str(obj)
    if isinstance(obj, dict):
        return {str(k): _exact(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_exact(v) for v in obj]
    if isinstance(obj, bool) or obj is None or isinstance(obj, str):
        return obj
    if isinstance(obj, int):
        return str(obj)
    return str(obj)


def _model_from_args(args) -> WeierstrassModel:
    if getattr(args, "family", None):
        params = [parse_poly(p) for p in (args.a, args.b) if p is not None]
        return build_member(args.family, params or None).model
    if args.form == "extended":
        return WeierstrassModel.extended(parse_poly(args.a), parse_poly(args.b))
    if args.form == "short":
        return WeierstrassModel.short(parse_poly(args.a), parse_poly(args.b))
    coeffs = [parse_poly(getattr(args, n) or "") for n in ("a1", "a2", "a3", "a4", "a6")]
    return WeierstrassModel(*coeffs)


def _fiber_rows(fibres) -> list:
    return [{"place": f.place.label(), "type": f.symbol, "euler": f.euler, "count": f.count}
            for f in fibres]


def cmd_lemma(args) -> tuple:
    rep = lemma_report(args.series, args.max, args.workers)
    return rep, 0 if rep["agree"] else 1


def cmd_fibers(args) -> tuple:
    W = _model_from_args(args)
    fibres = kodaira_classify(W)
    return {"fibers": _fiber_rows(fibres), "euler": euler_number(fibres)}, 0


def cmd_height(args) -> tuple:
    W = _model_from_args(args)
    P = SectionPoint(parse_ratfunc(args.px), parse_ratfunc(args.py))
    rep = height_report(W, P)
    pO = rep["pO"]
    return {
        "height": rep["height"],
        "components": rep["components"],
        "pO": pO.numerator if pO.denominator == 1 else pO,
    }, 0


def cmd_quotient(args) -> tuple:
    W = WeierstrassModel.extended(parse_poly(args.a), parse_poly(args.b))
    iso = quotient_curve(W)
    fibres = kodaira_classify(iso.target)
    return {
        "target": {"a": poly_to_json(iso.target.a), "b": poly_to_json(iso.target.b)},
        "fibers": _fiber_rows(fibres),
        "euler": euler_number(fibres),
    }, 0


def cmd_sandwich(args) -> tuple:
    W = WeierstrassModel.extended(parse_poly(args.a), parse_poly(args.b))
    rep = sandwich_report(W)
    return {"j_match": rep["j_match"], "quotient": rep["quotient"]}, 0 if rep["j_match"] else 1


def cmd_verify(args) -> tuple:
    member, section = None, None
    if args.alpha is not None or args.w is not None:
        if args.alpha is None or args.w is None:
            raise UsageError("--alpha and --w go together")
        solver = {2: solve_section_series2, 3: solve_section_series3}.get(args.series)
        if solver is None:
            raise UsageError("explicit sections exist only for series 2 and 3")
        member, section = solver(as_rat(args.alpha), parse_poly(args.w))
    elif args.n is not None and not criterion(args.series, args.n):
        raise CriterionFailed(f"N = {args.n} fails the series-{args.series} criterion")
    if section is None and args.a is not None:
        params = [parse_poly(p) for p in (args.a, args.b) if p is not None]
        member = build_member(args.series, params)
    report = verify_sandwich(args.series, args.n, member, section)
    return report.to_json(), 0 if report.passed else 1


def cmd_lattice(args) -> tuple:
    L = lattice_from_json(args.gram)
    if args.op == "disc-form":
        q = discriminant_form(L)
        return {"lattice": lattice_to_json(L), "det": disc(L), "signature": list(signature(L)),
                "form": q.to_json()}, 0
    if args.op == "overlattice":
        if not args.glue:
            raise UsageError("overlattice needs --glue")
        glues = [[as_rat(x) for x in g] for g in json.loads(args.glue)]
        M = overlattice(L, glues)
        return {"lattice": lattice_to_json(M), "det": disc(M)}, 0
    if args.op == "iso":
        if not args.other:
            raise UsageError("iso needs --other")
        other = lattice_from_json(args.other)
        ok = disc_forms_isomorphic(discriminant_form(L), discriminant_form(other), negate=args.negate)
        return {"isomorphic": ok, "negate": args.negate}, 0
    raise UsageError(f"unknown lattice operation {args.op}")


def _add_model_args(p, family=True):
    p.add_argument("--form", choices=("extended", "short", "long"), default="extended")
    p.add_argument("--a", help="extended: a(t); short: A(t)")
    p.add_argument("--b", help="extended: b(t); short: B(t)")
    for n in ("a1", "a2", "a3", "a4", "a6"):
        p.add_argument(f"--{n}", help=f"long form coefficient {n}")
    if family:
        p.add_argument("--family", type=int, choices=(1, 2, 3),
                       help="build a family member from --a (and --b for series 1)")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="k3sandwich", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"k3sandwich {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("lemma", help="sweep a series criterion against brute force")
    p.add_argument("--series", type=int, choices=(1, 2, 3), required=True)
    p.add_argument("--max", type=int, default=5000)
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_lemma)

    p = sub.add_parser("fibers", help="Kodaira fibre table of a model")
    _add_model_args(p)
    p.set_defaults(func=cmd_fibers)

    p = sub.add_parser("height", help="height of a section")
    _add_model_args(p)
    p.add_argument("--px", required=True)
    p.add_argument("--py", required=True)
    p.set_defaults(func=cmd_height)

    p = sub.add_parser("quotient", help="2-isogenous quotient of y^2 = x(x^2 + ax + b)")
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    p.set_defaults(func=cmd_quotient)

    p = sub.add_parser("sandwich", help="double-quotient j-invariant check")
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    p.set_defaults(func=cmd_sandwich)

    p = sub.add_parser("verify", help="run the sandwich verification stages")
    p.add_argument("--series", type=int, choices=(1, 2, 3), required=True)
    p.add_argument("--n", type=int)
    p.add_argument("--alpha")
    p.add_argument("--w")
    p.add_argument("--a", help="family parameter a(t) (default: a generic member)")
    p.add_argument("--b", help="series 1 parameter b(t)")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("lattice", help="discriminant forms and overlattices of JSON lattices")
    p.add_argument("op", choices=("disc-form", "overlattice", "iso"))
    p.add_argument("--gram", required=True, help='{"gram": [[...]]} or a bare Gram matrix')
    p.add_argument("--glue", help="JSON list of glue vectors (rational strings)")
    p.add_argument("--other", help="second lattice for iso")
    p.add_argument("--negate", action="store_true")
    p.set_defaults(func=cmd_lattice)
    return parser


def _coerce_lattice_arg(text: str) -> str:
    data = json.loads(text)
    if isinstance(data, list):
        data = {"gram": data}
    return json.dumps(data)


def run(argv=None) -> tuple:
    """Returns (exit code, payload dict)."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                            stream=sys.stderr, format="%(levelname)s %(message)s")
        for name in ("gram", "other"):
            if getattr(args, name, None):
                setattr(args, name, _coerce_lattice_arg(getattr(args, name)))
        payload, code = args.func(args)
    except (InputError, json.JSONDecodeError, ValueError, ZeroDivisionError) as exc:
        log.error("%s", exc)
        return 2, {"error": type(exc).__name__, "message": str(exc)}
    except VerificationError as exc:
        log.error("%s", exc)
        return 1, {"error": type(exc).__name__, "message": str(exc)}
    except K3SandwichError as exc:
        log.error("%s", exc)
        return 1, {"error": type(exc).__name__, "message": str(exc)}
    echo = {"command": args.command}
    return code, {**echo, **_exact(payload), "version": __version__}


def main(argv=None) -> int:
    code, payload = run(argv)
    sys.stdout.write(json.dumps(payload, sort_keys=False) + "\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
