"""Command-line front end: evaluate, find zeros, classify, verify, plot data.

Exit codes: 0 success, 1 verification failure, 2 usage or parse error,
3 domain error, 4 degenerate input.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from dataclasses import dataclass, field

from .errors import DomainError, OutsideRadius, ZeroPolynomial
from .parabola import (ParabolaPoint, discriminant_D, fiber_intersections,
                       figure1_rows, figure2_cells, j_minus, j_plus)
from .parsing import ParseError, parse_polynomial
from .quat_core import Quaternion
from .regular_fn import RegularSeries, eval_series, zeros
from .verify import SUITES, run_suite

EXIT_OK = 0
EXIT_VERIFY_FAIL = 1
EXIT_USAGE = 2
EXIT_DOMAIN = 3
EXIT_DEGENERATE = 4


@dataclass
class RunConfig:
    seed: int = 0
    samples: int | None = None
    tolerances: dict[str, float] = field(default_factory=dict)
    out: str | None = None
    format: str = "json"


def _load_polynomial(text: str) -> RegularSeries:
    """A polynomial given as a JSON file path, inline JSON, or an expression."""
    if os.path.isfile(text):
        with open(text) as fh:
            return RegularSeries.from_json(json.load(fh))
    stripped = text.strip()
    if stripped.startswith("{"):
        return RegularSeries.from_json(json.loads(stripped))
    return parse_polynomial(stripped)


def _load_quaternion(text: str) -> Quaternion:
    stripped = text.strip()
    if stripped.startswith("["):
        return Quaternion.from_json(json.loads(stripped))
    series = parse_polynomial(stripped)
    if series.degree > 0:
        raise ParseError(f"{text!r} is not a constant")
    return series.coeff(0)


def _emit(config: RunConfig, text: str):
    if config.out:
        with open(config.out, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")


def _json_dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True)


def cmd_eval(args, config: RunConfig) -> int:
    try:
        f = _load_polynomial(args.poly)
        q = _load_quaternion(args.point)
    except (ParseError, json.JSONDecodeError, OSError, KeyError) as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        value = eval_series(f, q)
    except OutsideRadius as exc:
        print(f"domain error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    _emit(config, _json_dump(value.to_json()))
    return EXIT_OK


def cmd_zeros(args, config: RunConfig) -> int:
    try:
        f = _load_polynomial(args.poly)
    except (ParseError, json.JSONDecodeError, OSError, KeyError) as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        zs = zeros(f)
    except ZeroPolynomial as exc:
        print(f"degenerate input: {exc}", file=sys.stderr)
        return EXIT_DEGENERATE
    except ValueError as exc:
        print(f"domain error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    _emit(config, _json_dump(zs.to_json()))
    return EXIT_OK


def cmd_classify(args, config: RunConfig) -> int:
    c = ParabolaPoint(args.x0, args.x1, args.x2, args.x3)
    fc = fiber_intersections(c)
    report = {
        "class": fc.kind.value,
        "D": discriminant_D(c),
        "ruling_parameters": [[v.real, v.imag] for v in fc.ruling_parameters],
        "j_plus": None,
        "j_minus": None,
    }
    try:
        report["j_plus"] = j_plus(c).unit.to_json()
        report["j_minus"] = j_minus(c).unit.to_json()
    except DomainError:
        pass
    _emit(config, _json_dump(report))
    return EXIT_OK


def cmd_verify(args, config: RunConfig) -> int:
    if args.suite not in SUITES:
        print(f"unknown suite {args.suite!r}; available: "
              + ", ".join(sorted(SUITES)), file=sys.stderr)
        return EXIT_USAGE
    result = run_suite(args.suite, seed=config.seed, samples=config.samples)
    _emit(config, result.summary())
    return EXIT_OK if result.passed else EXIT_VERIFY_FAIL


def cmd_figure(args, config: RunConfig) -> int:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    if args.name == "fig1":
        writer.writerow(["x", "y", "z", "label"])
        for row in figure1_rows(config.samples or 200):
            writer.writerow([f"{row[0]:.9g}", f"{row[1]:.9g}",
                             f"{row[2]:.9g}", row[3]])
    elif args.name == "fig2":
        writer.writerow(["x", "y", "z"])
        for x, y, z in figure2_cells(args.grid, args.extent):
            writer.writerow([f"{x:.9g}", f"{y:.9g}", f"{z:.9g}"])
    else:
        print(f"unknown figure {args.name!r}", file=sys.stderr)
        return EXIT_USAGE
    _emit(config, buf.getvalue())
    return EXIT_OK


def _parse_tol(pairs) -> dict[str, float]:
    out = {}
    for item in pairs or []:
        name, _, value = item.partition("=")
        if not name or not value:
            raise argparse.ArgumentTypeError(
                f"tolerance override must look like NAME=VALUE, got {item!r}")
        out[name] = float(value)
    return out


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sliceregular",
        description="Quaternionic polynomial evaluation, zero sets, and "
                    "twistor-geometry verification.")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--samples", type=int, default=None)
    parser.add_argument("--tol", action="append", metavar="NAME=VAL",
                        help="named tolerance override (recorded in RunConfig)")
    parser.add_argument("--out", default=None, help="output file path")
    parser.add_argument("--format", choices=["json", "csv"], default="json")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", help="evaluate a polynomial at a quaternion")
    p.add_argument("poly", help="JSON file, inline JSON, or expression")
    p.add_argument("point", help="quaternion as [w,x,y,z] or an expression")
    p.set_defaults(fn=cmd_eval)

    p = sub.add_parser("zeros", help="zero set of a polynomial")
    p.add_argument("poly")
    p.set_defaults(fn=cmd_zeros)

    p = sub.add_parser("classify", help="classify a target point of q^2+qi")
    p.add_argument("x0", type=float)
    p.add_argument("x1", type=float)
    p.add_argument("x2", type=float)
    p.add_argument("x3", type=float)
    p.set_defaults(fn=cmd_classify)

    p = sub.add_parser("verify", help="run a named verification suite")
    p.add_argument("suite")
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("figure", help="emit figure data as CSV")
    p.add_argument("name", help="fig1 or fig2")
    p.add_argument("--grid", type=int, default=60)
    p.add_argument("--extent", type=float, default=2.0)
    p.set_defaults(fn=cmd_figure)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        config = RunConfig(seed=args.seed, samples=args.samples,
                           tolerances=_parse_tol(args.tol), out=args.out,
                           format=args.format)
    except argparse.ArgumentTypeError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SystemExit:
        raise
    return args.fn(args, config)


if __name__ == "__main__":
    sys.exit(main())
