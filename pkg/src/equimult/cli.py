"""Command-line interface.

Every subcommand takes a surface expression in X, Y, Z and emits a JSON
report on stdout (resolve also supports text and DOT).  Failures produce a
machine-readable JSON object on stderr and a nonzero exit code.
"""

from __future__ import annotations

import argparse
import json
import sys

from .blowup import (invert_strict_transform, monoidal_transform,
                     quadratic_transform)
from .coordinates import ChartError, Direction
from .curves import (CurveError, CurveIdeal, axis_curve, curves_equal,
                     enumerate_smooth_equimultiple, normalize_curve)
from .driver import (DEFAULT_DEGREE_BOUND, DEFAULT_MAX_DEPTH,
                     HypothesisViolation, TheoremViolation, classify_transform,
                     levi_zariski_resolve, tree_steps, tree_to_dot,
                     tree_to_text, verify_lemma)
from .parser import ParseError, parse_expression
from .series import DEFAULT_PRECISION, SeriesError, precision_text
from .surface import SurfaceError, from_equation
from .weierstrass import NotRegular

USAGE_ERRORS = (ParseError, argparse.ArgumentError)
MATH_ERRORS = (SeriesError, SurfaceError, CurveError, ChartError, NotRegular,
               TheoremViolation, HypothesisViolation, ValueError)


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--precision", type=int, default=DEFAULT_PRECISION,
                        help="global truncation degree (default 24)")
    common.add_argument("--degree-bound", type=int, default=DEFAULT_DEGREE_BOUND,
                        help="degree bound for the smooth-curve search (default 8)")
    common.add_argument("--max-depth", type=int, default=DEFAULT_MAX_DEPTH,
                        help="resolution recursion cap (default 12)")
    common.add_argument("--format", choices=("json", "text", "dot"), default="json")

    parser = argparse.ArgumentParser(prog="equimult",
                                     description="algebroid surfaces, their smooth "
                                                 "equimultiple loci, and blow-ups")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", parents=[common],
                       help="multiplicity, Newton set, tangent cone, normalization history")
    p.add_argument("surface")

    p = sub.add_parser("blowup", parents=[common], help="transform a surface")
    p.add_argument("surface")
    p.add_argument("--kind", choices=("quadratic", "monoidal"), required=True)
    p.add_argument("--direction", required=True, help="comma-separated rationals, e.g. 1,0,0")
    p.add_argument("--privileged", choices=("X", "Y", "Z"))
    p.add_argument("--center", help="curve generator for monoidal centers (expression in X, Y)")

    p = sub.add_parser("curves", parents=[common], help="smooth equimultiple curves")
    p.add_argument("surface")

    p = sub.add_parser("invert", parents=[common],
                       help="invert the strict transform of a tangent curve")
    p.add_argument("--g", required=True, help="series in Y of order >= 2")

    p = sub.add_parser("classify", parents=[common],
                       help="classify a constant-multiplicity blow-up")
    p.add_argument("surface")
    p.add_argument("--kind", choices=("quadratic", "monoidal"), required=True)
    p.add_argument("--direction", required=True)
    p.add_argument("--privileged", choices=("X", "Y", "Z"))
    p.add_argument("--center")

    p = sub.add_parser("resolve", parents=[common], help="run the resolution driver")
    p.add_argument("surface")

    p = sub.add_parser("lemma", parents=[common],
                       help="verify the multiplicity drop of monoidal transforms")
    p.add_argument("surface")
    return parser


def _bounds(args) -> dict:
    return {"precision": args.precision, "degree_bound": args.degree_bound,
            "max_depth": args.max_depth}


def _surface(args):
    F = parse_expression(args.surface)
    return from_equation(F, args.precision,
                         provenance=({"op": "parse", "expression": args.surface},))


def _center_curve(args, S):
    if not getattr(args, "center", None):
        return None
    g = parse_expression(args.center, S.plane_vars)
    return CurveIdeal(g)


def _normalize_for_center(S, center, args, notes):
    if center is None or curves_equal(center, axis_curve(S, "X")):
        return S
    S2, change = normalize_curve(S, center, args.precision)
    notes.append({"normalized_center": center.normalized_generator().to_text(),
                  "change": change.to_json()})
    return S2


def run_command(argv) -> tuple:
    """Execute one invocation; returns (exit_code, stdout_text, stderr_text)."""
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return (int(exc.code or 0), "", "")
    try:
        payload = _dispatch(args)
    except USAGE_ERRORS as exc:
        error = {"error": {"type": type(exc).__name__, "message": str(exc)}}
        if isinstance(exc, ParseError):
            error["error"]["offset"] = exc.offset
        return (2, "", json.dumps(error, indent=2) + "\n")
    except MATH_ERRORS as exc:
        error = {"error": {"type": type(exc).__name__, "message": str(exc)}}
        return (1, "", json.dumps(error, indent=2) + "\n")
    if isinstance(payload, str):
        return (0, payload + "\n", "")
    return (0, json.dumps(payload, indent=2) + "\n", "")


def _dispatch(args):
    if args.command == "analyze":
        S = _surface(args)
        return {
            "n": S.n,
            "newton_set": [list(t) for t in S.newton_set()],
            "cone_plane": S.tangent_cone_is_plane(),
            "equation": S.to_text(),
            "precision": precision_text(S.precision()),
            "surface": S.to_json(),
            "bounds": _bounds(args),
        }

    if args.command == "blowup":
        S = _surface(args)
        d = Direction.parse(args.direction, args.privileged)
        notes = []
        if args.kind == "monoidal":
            S = _normalize_for_center(S, _center_curve(args, S), args, notes)
            result = monoidal_transform(S, d, args.precision)
        else:
            result = quadratic_transform(S, d, args.precision)
        return {
            "kind": args.kind,
            "chart": {"kind": args.kind, **d.to_json(),
                      **({"center": args.center} if args.center else {})},
            "surface": result.to_json(),
            "notes": notes,
            "bounds": _bounds(args),
        }

    if args.command == "curves":
        S = _surface(args)
        report = enumerate_smooth_equimultiple(S, args.degree_bound)
        out = report.to_json()
        out["curves"] = [{**c.to_json(), "verified_to_precision": "exact"}
                         for c in report.smooth_curves]
        out["bounds"] = _bounds(args)
        return out

    if args.command == "invert":
        g = parse_expression(args.g, ("Y",))
        inverse = invert_strict_transform(g, args.precision)
        out = inverse.to_json()
        out["bounds"] = _bounds(args)
        return out

    if args.command == "classify":
        S = _surface(args)
        d = Direction.parse(args.direction, args.privileged)
        notes = []
        center = _center_curve(args, S)
        if args.kind == "monoidal":
            S = _normalize_for_center(S, center, args, notes)
            center = axis_curve(S, "X")
        report = classify_transform(S, args.kind, d, center=center,
                                    degree_bound=args.degree_bound,
                                    precision=args.precision)
        out = report.to_json()
        out["notes"] = notes + out["notes"]
        out["bounds"] = _bounds(args)
        return out

    if args.command == "resolve":
        S = _surface(args)
        tree = levi_zariski_resolve(S, args.max_depth, args.degree_bound,
                                    args.precision)
        if args.format == "dot":
            return tree_to_dot(tree)
        if args.format == "text":
            return tree_to_text(tree)
        return {"steps": tree_steps(tree), "tree": tree.to_json(),
                "bounds": _bounds(args)}

    if args.command == "lemma":
        S = _surface(args)
        report = verify_lemma(S, args.degree_bound, args.precision)
        out = report.to_json()
        out["bounds"] = _bounds(args)
        return out

    raise ValueError(f"unknown command {args.command!r}")


def main(argv=None) -> int:
    code, out, err = run_command(argv if argv is not None else sys.argv[1:])
    if out:
        sys.stdout.write(out)
    if err:
        sys.stderr.write(err)
    return code


if __name__ == "__main__":
    raise SystemExit(main())
