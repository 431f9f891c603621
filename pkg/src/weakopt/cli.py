"""Command-line front end.

Exit codes: 0 = yes (weakly optimal / certificate valid / oracle certified),
1 = no (including a point that is not even weakly feasible), 2 = bad input.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
import time
from pathlib import Path

from . import __version__
from .io import (InstanceError, data_to_json, dumps, load_instance, parse_json_text,
                 point_from_json, point_to_json, scenario_to_json, system_from_json,
                 verdict_to_json, witness_from_json)
from .intervals import as_rational
from .model import Point
from .optimality import decide_weak_optimality, verify_witness, witness_violations
from .oracle import (DEFAULT_BUDGET, DEFAULT_CAP, BudgetExceeded, corner_grid_oracle,
                     weak_feasibility_system_bruteforce)
from .reduction import reduce_weak_feasibility_to_weak_optimality

EXIT_YES, EXIT_NO, EXIT_INPUT = 0, 1, 2


def _read_json(path: str):
    if path == "-":
        return parse_json_text(sys.stdin.read(), "<stdin>")
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InstanceError(f"{path}: {exc.strerror}") from None
    return parse_json_text(text, path)


def _parse_point(spec: str, data) -> Point:
    """``--point`` accepts a JSON object {"xf": [...], "xn": [...]} or a
    comma-separated list of all entries (free ones first)."""
    spec = spec.strip()
    if spec.startswith("{"):
        return point_from_json(parse_json_text(spec, "--point"), data, "--point")
    parts = [p for p in spec.replace(" ", "").split(",") if p] if spec else []
    if len(parts) != data.m + data.n:
        raise InstanceError(f"--point: expected {data.m + data.n} entries, got {len(parts)}")
    try:
        values = [as_rational(p) for p in parts]
    except ValueError as exc:
        raise InstanceError(f"--point: {exc}") from None
    return Point(values[:data.m], values[data.m:])


def _instance_and_point(args):
    data, point = load_instance(_read_json(args.instance))
    if args.point is not None:
        point = _parse_point(args.point, data)
    if point is None:
        raise InstanceError("point: the instance has no point and --point was not given")
    return data, point


def cmd_check(args) -> int:
    data, point = _instance_and_point(args)
    start = time.perf_counter()
    verdict = decide_weak_optimality(data, point, jobs=args.jobs, exhaustive=args.exhaustive_orthants)
    report = verdict_to_json(verdict, point, exhaustive=args.exhaustive_orthants)
    if args.timing:
        report["stats"]["wall_time_ms"] = round((time.perf_counter() - start) * 1000, 3)
    sys.stdout.write(dumps(report))
    return EXIT_YES if verdict.weakly_optimal else EXIT_NO


def cmd_verify(args) -> int:
    data, point = load_instance(_read_json(args.instance))
    report = _read_json(args.report)
    if not isinstance(report, dict):
        raise InstanceError("report: expected a JSON object")
    if "point" in report:
        rpoint = point_from_json(report["point"], data, "report.point")
        if point is not None and rpoint != point:
            return _emit_verify(False, ["point mismatch"])
        point = rpoint
    if point is None:
        raise InstanceError("point: neither the instance nor the report holds a point")
    if report.get("witness") is None:
        return _emit_verify(False, ["no witness"])
    witness = witness_from_json(report["witness"], data)
    reasons = witness_violations(data, point, witness)
    valid = not reasons and verify_witness(data, point, witness)
    if not reasons and not valid:
        reasons = ["scenario LP optimality"]
    return _emit_verify(valid, reasons)


def _emit_verify(valid: bool, reasons: list[str]) -> int:
    sys.stdout.write(dumps({"valid": valid, "reasons": reasons}))
    return EXIT_YES if valid else EXIT_NO


def cmd_reduce(args) -> int:
    Bf, b = system_from_json(_read_json(args.system))
    data, point = reduce_weak_feasibility_to_weak_optimality(Bf, b)
    sys.stdout.write(dumps(data_to_json(data, point)))
    return EXIT_YES


def cmd_oracle(args) -> int:
    obj = _read_json(args.instance)
    if args.system:
        Bf, b = system_from_json(obj)
        feasible = weak_feasibility_system_bruteforce(Bf, b, cap=args.cap)
        sys.stdout.write(dumps({"weakly_feasible": feasible}))
        return EXIT_YES if feasible else EXIT_NO
    data, point = load_instance(obj)
    if args.point is not None:
        point = _parse_point(args.point, data)
    if point is None:
        raise InstanceError("point: the instance has no point and --point was not given")
    result = corner_grid_oracle(data, point, depth=args.depth, budget=args.budget)
    sys.stdout.write(dumps({
        "result": "certified" if result.certified else "inconclusive",
        "point": point_to_json(point),
        "scenario": scenario_to_json(result.scenario) if result.scenario else None,
        "scenarios_checked": result.scenarios_checked,
    }))
    return EXIT_YES if result.certified else EXIT_NO


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="weakopt", description="Weak optimality testing for interval linear programs.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="count", default=0)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, point=True):
        p.add_argument("--format", choices=["json"], default="json")
        if point:
            p.add_argument("--point", help='override the point: "1,1" or \'{"xf": [], "xn": [1, 1]}\'')

    p = sub.add_parser("check", help="decide weak optimality of a point and print a certificate")
    p.add_argument("instance", help="instance JSON file, or - for stdin")
    common(p)
    p.add_argument("--jobs", type=int, default=1, help="worker processes for orthant systems")
    p.add_argument("--exhaustive-orthants", action="store_true",
                   help="solve every orthant and list the feasible ones")
    p.add_argument("--timing", action="store_true", help="add wall_time_ms to the stats")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("verify", help="re-check the certificate in a check report")
    p.add_argument("instance")
    p.add_argument("report")
    common(p, point=False)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("reduce", help="turn an interval system Bf x <= b into a weak optimality instance")
    p.add_argument("system")
    common(p, point=False)
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("oracle", help="brute-force grid search (or orthant decider with --system)")
    p.add_argument("instance")
    common(p)
    p.add_argument("--depth", type=int, default=2, help="interior grid points per interval")
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="maximum scenarios to enumerate")
    p.add_argument("--system", action="store_true",
                   help="input is a system {Bf, b}; decide its weak feasibility")
    p.add_argument("--cap", type=int, default=DEFAULT_CAP, help="maximum variables for --system")
    p.add_argument("--jobs", type=int, default=1, help="accepted for symmetry; the oracle runs serially")
    p.set_defaults(func=cmd_oracle)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.WARNING - 10 * min(args.verbose, 2),
                        format="%(levelname)s %(name)s: %(message)s")
    if getattr(args, "jobs", 1) < 1:
        parser.error("--jobs must be at least 1")
    try:
        return args.func(args)
    except (InstanceError, BudgetExceeded) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except json.JSONDecodeError as exc:  # pragma: no cover - parse_json_text wraps these
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
