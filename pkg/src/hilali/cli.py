"""Command-line front end.

Exit codes: 0 the check holds, 1 it is violated, 2 input error,
3 undecidable (truncation, precondition not met, or out of scope).
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from typing import Optional

from . import calculus, hyperbolic
from .errors import HilaliError, InputError, UnboundedSupport
from .maps import MapModel, ellipticity_of_map, kernel_profile
from .refs import MAP_REFS, SPACE_REFS, resolve, resolve_map, resolve_space
from .serialize import canonical_dumps, dumps_model, to_jsonable
from .series import evaluate
from .spaces import (
    classification_note,
    classify,
    default_truncation,
    euler,
    euler_pi,
    homotopy_poincare,
    poincare_polynomial,
)

EXIT_OK, EXIT_VIOLATED, EXIT_INPUT, EXIT_UNDECIDABLE = 0, 1, 2, 3


def _rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from None


def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return value


def _or_none(fn, *args):
    try:
        return fn(*args)
    except UnboundedSupport:
        return None


def space_report(x) -> dict:
    return {
        "name": x.name,
        "homology": x.homology,
        "homotopy": x.homotopy,
        "P": poincare_polynomial(x),
        "Ppi": homotopy_poincare(x),
        "classification": classify(x),
        "classificationNote": classification_note(x),
        "euler": _or_none(euler, x),
        "eulerPi": _or_none(euler_pi, x),
        "notes": x.notes,
    }


def map_report(f: MapModel) -> dict:
    profile = kernel_profile(f)
    ell = ellipticity_of_map(f, profile)
    report = {
        "name": f.name,
        "source": f.source.name,
        "target": f.target.name,
        "kernelProfile": profile,
        "ellipticity": {"kernel": ell.kernel, "cokernel": ell.cokernel},
        "KerP": calculus.ker_poincare(f, profile),
        "KerPpi": calculus.ker_poincare_pi(f, profile),
        "CokP": calculus.cok_poincare(f, profile),
        "CokPpi": calculus.cok_poincare_pi(f, profile),
    }
    if ell.elliptic_wrt_kernel:
        polys = calculus.map_polynomials(f)
        report.update({"Pf": polys.p, "Ppif": polys.p_pi,
                       "Pf(1)": evaluate(polys.p, 1), "Ppif(1)": evaluate(polys.p_pi, 1)})
    report["notes"] = f.notes
    return report


def verdict_report(v: calculus.HilaliVerdict) -> dict:
    return {"context": v.context, "at": v.at, "lhs": v.lhs, "rhs": v.rhs,
            "holds": v.holds, "strict": v.strict, "summary": str(v)}


def cmd_space_info(args):
    return space_report(resolve_space(args.ref, args.truncation)), EXIT_OK


def cmd_map_info(args):
    return map_report(resolve_map(args.ref, args.truncation)), EXIT_OK


def cmd_check(args):
    if args.kind == "hilali":
        v = calculus.hilali_check(resolve_space(args.ref, args.truncation), args.s)
        return verdict_report(v), EXIT_OK if v.holds else EXIT_VIOLATED
    f = resolve_map(args.ref, args.truncation)
    if args.kind == "relative-hilali":
        v = calculus.relative_hilali_check(f, args.s)
        return verdict_report(v), EXIT_OK if v.holds else EXIT_VIOLATED
    if args.kind == "identities":
        r = calculus.verify_exact_identities(f)
        return {"map": f.name, **to_jsonable(r)}, EXIT_OK if r.holds else EXIT_VIOLATED
    r = calculus.injectivity_probe(f)
    code = {"consistent": EXIT_OK, "counterexample": EXIT_VIOLATED}.get(r.status, EXIT_UNDECIDABLE)
    report = {"map": f.name, "hInjective": r.h_injective, "piInjective": r.pi_injective,
              "consistent": r.consistent, "inScope": r.in_scope, "status": r.status,
              "ellipticity": {"kernel": r.ellipticity.kernel, "cokernel": r.ellipticity.cokernel}}
    return report, code


def _threshold_code(found: Optional[int]) -> int:
    # not reaching the threshold within max-n is a cap, not a violation
    return EXIT_OK if found is not None else EXIT_UNDECIDABLE


def cmd_product_threshold(args):
    f = resolve_map(args.ref, args.truncation)
    r = calculus.product_threshold(f, args.s, args.max_n)
    return {"map": f.name, **to_jsonable(r)}, _threshold_code(r.exact_minimum)


def cmd_hyperbolic(args):
    truncation = max(args.truncation or default_truncation(), args.n)
    obj = resolve(args.ref, truncation)
    if args.experiment == "felix":
        r = hyperbolic.felix_check(obj, args.n)
        return to_jsonable(r), EXIT_OK if r.felix_bound_satisfied else EXIT_VIOLATED
    if args.experiment == "question":
        return to_jsonable(hyperbolic.question_experiment(obj, args.n)), EXIT_OK
    if not isinstance(obj, MapModel):
        raise InputError("the threshold experiment needs a map reference")
    if args.r is None:
        raise InputError("--r is required for the threshold experiment")
    r = hyperbolic.hyperbolic_threshold(obj, args.r, args.max_n, args.radius_source, args.n)
    return {"map": obj.name, **to_jsonable(r)}, _threshold_code(r.analytic_bound)


def cmd_catalog(args):
    spaces = {}
    for ref in SPACE_REFS:
        x = resolve_space(ref, args.truncation)
        spaces[ref] = {"name": x.name, "classification": classify(x)}
    maps = {}
    for ref in MAP_REFS:
        f = resolve_map(ref, args.truncation)
        ell = ellipticity_of_map(f)
        maps[ref] = {"name": f.name, "kernel": ell.kernel, "cokernel": ell.cokernel}
    return {"spaces": spaces, "maps": maps}, EXIT_OK


def cmd_export(args):
    return dumps_model(resolve(args.ref, args.truncation)), EXIT_OK


def _render_human(value, indent: int = 0) -> list:
    pad = "  " * indent
    lines = []
    if isinstance(value, dict):
        for k, v in value.items():
            if isinstance(v, dict) and "text" in v:
                lines.append(f"{pad}{k}: {v['text']}")
            elif isinstance(v, (dict, list)) and v:
                lines.append(f"{pad}{k}:")
                lines.extend(_render_human(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {_scalar(v)}")
    elif isinstance(value, list):
        for v in value:
            if isinstance(v, list) and not any(isinstance(e, (dict, list)) for e in v):
                lines.append(f"{pad}- " + "  ".join(_scalar(e) for e in v))
            elif isinstance(v, (dict, list)):
                lines.append(f"{pad}-")
                lines.extend(_render_human(v, indent + 1))
            else:
                lines.append(f"{pad}- {_scalar(v)}")
    else:
        lines.append(pad + _scalar(value))
    return lines


def _scalar(v) -> str:
    if v is None:
        return "n/a"
    if isinstance(v, bool):
        return "yes" if v else "no"
    if isinstance(v, dict):
        return "{}" if not v else str(v)
    if isinstance(v, list):
        return "[]"
    return str(v)


def emit(report, fmt: str, out=None) -> None:
    out = out or sys.stdout
    if isinstance(report, str):
        out.write(report)
        return
    data = to_jsonable(report)
    if fmt == "json":
        out.write(canonical_dumps(data))
    else:
        out.write("\n".join(_render_human(data)) + "\n")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("human", "json"), default="human")
    common.add_argument("--truncation", type=_positive_int, default=None,
                        help="truncation degree for infinite catalog entries (default: $HILALI_TRUNCATION or 24)")

    parser = argparse.ArgumentParser(prog="hilali", description="Poincaré polynomials of rational spaces and maps")
    sub = parser.add_subparsers(dest="command", required=True)

    space = sub.add_parser("space", help="inspect a space model")
    space_sub = space.add_subparsers(dest="action", required=True)
    p = space_sub.add_parser("info", parents=[common])
    p.add_argument("ref")
    p.set_defaults(func=cmd_space_info)

    map_ = sub.add_parser("map", help="inspect a map model")
    map_sub = map_.add_subparsers(dest="action", required=True)
    p = map_sub.add_parser("info", parents=[common])
    p.add_argument("ref")
    p.set_defaults(func=cmd_map_info)

    p = sub.add_parser("check", parents=[common], help="run an inequality or identity check")
    p.add_argument("kind", choices=("hilali", "relative-hilali", "identities", "injectivity"))
    p.add_argument("ref")
    p.add_argument("--s", type=_rational, default=Fraction(1), help="evaluation point (default 1)")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("product-threshold", parents=[common], help="threshold n for products of a map")
    p.add_argument("ref")
    p.add_argument("--s", type=_rational, default=Fraction(1))
    p.add_argument("--max-n", type=_positive_int, default=12)
    p.set_defaults(func=cmd_product_threshold)

    p = sub.add_parser("hyperbolic", parents=[common], help="Hilbert–Poincaré series experiments")
    p.add_argument("ref")
    p.add_argument("--n", type=_positive_int, default=60, help="series truncation")
    p.add_argument("--experiment", choices=("felix", "question", "threshold"), default="felix")
    p.add_argument("--radius-source", choices=hyperbolic.RADIUS_SOURCES, default="rX")
    p.add_argument("--r", type=float, default=None, help="evaluation point for the threshold experiment")
    p.add_argument("--max-n", type=_positive_int, default=12)
    p.set_defaults(func=cmd_hyperbolic)

    p = sub.add_parser("catalog", parents=[common], help="list catalog references")
    p.set_defaults(func=cmd_catalog)

    p = sub.add_parser("export", parents=[common], help="write a model as canonical JSON")
    p.add_argument("ref")
    p.set_defaults(func=cmd_export)
    return parser


def main(argv: Optional[list] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        report, code = args.func(args)
    except HilaliError as e:
        code = EXIT_INPUT if isinstance(e, InputError) else EXIT_UNDECIDABLE
        if args.format == "json":
            emit({"error": type(e).__name__, "message": str(e), "exitCode": code}, "json")
        else:
            print(f"{type(e).__name__}: {e}", file=sys.stderr)
        return code
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT
    emit(report, args.format)
    return code
