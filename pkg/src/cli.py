"""
Command-line front end.

Every subcommand is turned into a command document and run by the
workbench; stdout receives exactly one JSON object per command, logs go to
stderr.  Exit status: 0 decided, 3 Undetermined, 1 error.
"""

from __future__ import annotations

import argparse
import json
import logging
import re
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence

from src.errors import MaxsubError, ParseError
from src.parsers import COMMAND_NAMES
from src.utils.config import configure
from src.utils.logging_setup import setup_logging
from src.utils.report_generator import ReportGenerator, error_payload
from src.workbench import EXIT_ERROR, EXIT_OK, EXIT_UNDETERMINED, MaxsubWorkbench

logger = logging.getLogger(__name__)


def field_conductor(text: str) -> int:
    """``zeta:N`` (or plain ``N``) to the conductor N."""
    value = text.split(":", 1)[1] if text.startswith("zeta:") else text
    try:
        conductor = int(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected zeta:<N>, got {text!r}")
    if conductor < 1:
        raise argparse.ArgumentTypeError(f"the conductor must be positive, got {conductor}")
    return conductor


def load_document(text: str) -> Any:
    """JSON given inline or as the path of a .json file."""
    candidate = Path(text)
    if not text.lstrip().startswith(("{", "[")) and candidate.is_file():
        text = candidate.read_text(encoding="utf-8")
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON document: {exc.msg}", position=exc.pos) from exc


def point_coordinates(text: str) -> List[str]:
    """``a,b,c`` (or ``a:b:c``) or a JSON list of coordinate strings."""
    if text.lstrip().startswith("["):
        return [str(c) for c in load_document(text)]
    return [part.strip() for part in re.split(r"[,:]", text)]


def default_variables(arity: int) -> List[str]:
    """x, then x, y, then x1, ..., xn."""
    if arity <= 2:
        return ["x", "y"][:max(arity, 1)]
    return [f"x{i}" for i in range(1, arity + 1)]


def _add_alg(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--alg", required=True, help="descriptor JSON or path to a .json file")


def _add_curve_point(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--curve", required=True, help="affine equation in x, y")
    parser.add_argument("--point", required=True, help="projective point a,b,c")


def _add_construction(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--vars", help="comma-separated variables (default x, y, ... by point length)")
    parser.add_argument("--relation", action="append", default=[], help="defining relation (repeatable)")
    parser.add_argument("--laurent", default="", help="comma-separated inverted variables")
    parser.add_argument("--point", action="append", default=[], help="closed point c1,c2,... (repeatable)")
    parser.add_argument("--vector", help="tangent vector components v1,v2,...")
    parser.add_argument("--crucial", action="store_true", help="use the crucial ideal instead")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="maxsub",
        description="Membership, conductors and orbit tests for maximal subalgebras of k[t, t^-1, y].",
    )
    parser.add_argument("--prec", help="global precision cap (rational, e.g. 64 or 129/2)")
    parser.add_argument("--field", type=field_conductor, help="coefficient field zeta:<N>")
    parser.add_argument("--jobs", type=int, default=1, help="worker threads for --batch")
    parser.add_argument("--batch", type=Path, help="file with one JSON command per line")
    parser.add_argument("--text", action="store_true", help="readable text instead of JSON")
    parser.add_argument("-v", "--verbose", action="store_true", help="debug logging on stderr")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND")

    for name in ("member", "crucial"):
        p = sub.add_parser(name, help=f"{name} membership of an expression")
        _add_alg(p)
        p.add_argument("expr")

    p = sub.add_parser("conductor", help="generator of the conductor ideal")
    _add_alg(p)

    p = sub.add_parser("generators", help="degree-one generators over K")
    _add_alg(p)
    p.add_argument("-n", type=int, default=3)
    p.add_argument("--crucial", action="store_true")

    p = sub.add_parser("equiv", help="orbit test of two descriptors")
    p.add_argument("a")
    p.add_argument("b")

    p = sub.add_parser("puiseux", help="Puiseux expansion of the roots in y")
    p.add_argument("poly")
    p.add_argument("--prec", dest="precision", default="4", help="expansion precision (rational)")

    p = sub.add_parser("curve-infinity", help="points at infinity of a curve")
    p.add_argument("curve")

    for name in ("defined-at", "noncoord"):
        p = sub.add_parser(name, help="regularity of a function at a point" if name == "defined-at"
                           else "membership in the subalgebra of functions defined at a point")
        _add_curve_point(p)
        p.add_argument("--member", dest="expr", required=True, help="function in x, y")

    for name in ("tangency", "preconditions"):
        p = sub.add_parser(name, help="tangency order at infinity" if name == "tangency"
                           else "smoothness, tangency and point-count conditions")
        _add_curve_point(p)

    p = sub.add_parser("curve-basis", help="degree-filtered basis of functions defined at a point")
    _add_curve_point(p)
    p.add_argument("--degree", type=int, required=True)

    for name in ("glue", "tangent"):
        p = sub.add_parser(name, help=f"membership in the {name} construction")
        _add_construction(p)
        p.add_argument("--member", dest="expr", required=True, help="element of k[variables]")

    p = sub.add_parser("basis", help="degree-filtered basis of a construction")
    p.add_argument("kind")
    p.add_argument("degree", type=int)
    _add_construction(p)

    p = sub.add_parser("normalize", help="case i / case ii normalization")
    p.add_argument("--t", dest="contains_t", action="store_true", help="t is in A")
    p.add_argument("--t-inverse", dest="contains_t_inverse", action="store_true", help="t^-1 is in A")
    p.add_argument("--k", type=int)
    p.add_argument("--sample", help="a monomial c*t^k*y in A")

    p = sub.add_parser("check", help="P2 sampling or the n-condition")
    _add_alg(p)
    p.add_argument("--test", choices=("p2", "n"), default="p2")
    p.add_argument("--trials", type=int, default=200)
    p.add_argument("--degree", type=int, default=3)
    p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("translate", help="move a units-family algebra by t -> t - lambda")
    _add_alg(p)
    p.add_argument("lam")
    return parser


def _construction_fields(args: argparse.Namespace) -> Dict[str, Any]:
    points = [point_coordinates(p) for p in args.point]
    if args.vars is not None:
        variables = [v.strip() for v in args.vars.split(",") if v.strip()]
    else:
        variables = default_variables(len(points[0]) if points else 1)
    fields: Dict[str, Any] = {
        "variables": variables,
        "relations": list(args.relation),
        "laurent": [v.strip() for v in args.laurent.split(",") if v.strip()],
        "points": points,
        "crucial": args.crucial,
    }
    if args.vector is not None:
        fields["vector"] = point_coordinates(args.vector)
    return fields


def command_document(args: argparse.Namespace) -> Dict[str, Any]:
    """The command document described by parsed arguments."""
    name = args.command
    doc: Dict[str, Any] = {"command": name}
    if name in ("member", "crucial"):
        doc.update(alg=load_document(args.alg), expr=args.expr)
    elif name == "conductor":
        doc.update(alg=load_document(args.alg))
    elif name == "generators":
        doc.update(alg=load_document(args.alg), n=args.n, crucial=args.crucial)
    elif name == "equiv":
        doc.update(a=load_document(args.a), b=load_document(args.b))
    elif name == "puiseux":
        doc.update(poly=args.poly, precision=args.precision)
    elif name == "curve-infinity":
        doc.update(curve=args.curve)
    elif name in ("defined-at", "noncoord"):
        doc.update(curve=args.curve, point=point_coordinates(args.point), expr=args.expr)
    elif name in ("tangency", "preconditions"):
        doc.update(curve=args.curve, point=point_coordinates(args.point))
    elif name == "curve-basis":
        doc.update(curve=args.curve, point=point_coordinates(args.point), degree=args.degree)
    elif name in ("glue", "tangent"):
        doc.update(_construction_fields(args), expr=args.expr)
    elif name == "basis":
        doc.update(construction={"kind": args.kind, **_construction_fields(args)}, degree=args.degree)
    elif name == "normalize":
        doc.update(
            contains_t=args.contains_t,
            contains_t_inverse=args.contains_t_inverse,
            k=args.k,
            sample=args.sample,
        )
    elif name == "check":
        doc.update(
            alg=load_document(args.alg), test=args.test, trials=args.trials, degree=args.degree, seed=args.seed
        )
    elif name == "translate":
        doc.update(alg=load_document(args.alg), lam=args.lam)
    return doc


def _batch_status(codes: Sequence[int]) -> int:
    if EXIT_ERROR in codes:
        return EXIT_ERROR
    if EXIT_UNDETERMINED in codes:
        return EXIT_UNDETERMINED
    return EXIT_OK


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    reporter = ReportGenerator()
    try:
        settings = configure(
            precision_cap=args.prec,
            field_conductor=args.field,
            log_level="DEBUG" if args.verbose else None,
        )
    except ValueError as exc:
        print(reporter.generate_json_report(error_payload(exc)))
        return EXIT_ERROR
    setup_logging(settings.log_level)
    workbench = MaxsubWorkbench(settings)

    if args.batch is not None:
        try:
            lines = args.batch.read_text(encoding="utf-8").splitlines()
        except OSError as exc:
            print(reporter.generate_json_report(error_payload(exc)))
            return EXIT_ERROR
        results = workbench.run_batch(lines, jobs=max(1, args.jobs))
        logger.debug("batch of %d commands done", len(results))
        print(reporter.generate_batch_report(payload for _, payload in results))
        return _batch_status([code for code, _ in results])

    if args.command not in COMMAND_NAMES:
        parser.print_usage(sys.stderr)
        return EXIT_ERROR
    try:
        document = command_document(args)
    except MaxsubError as exc:
        print(reporter.generate_json_report(error_payload(exc)))
        return EXIT_ERROR
    code, payload = workbench.run(document)
    print(reporter.generate_text_report(payload) if args.text else reporter.generate_json_report(payload))
    return code


__all__ = [
    "build_parser",
    "command_document",
    "default_variables",
    "field_conductor",
    "load_document",
    "main",
    "point_coordinates",
]
