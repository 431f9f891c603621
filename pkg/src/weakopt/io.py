"""JSON encoding of instances, witnesses and verdict reports.

Rationals are integers or strings (``"-7/2"``, ``"1.25"``); an interval is a
two-element array ``[lo, hi]`` or a single rational for a crisp value;
matrices are row-major arrays of arrays.  Floats are refused so that no
binary rounding can sneak in.
"""
from __future__ import annotations

import json
from fractions import Fraction
from typing import Any

from .intervals import Interval, IntervalError, IntervalMatrix, as_rational
from .model import IlpData, Point, Scenario, Stats, Verdict, Witness

FORMAT_VERSION = "1"
BLOCKS = ("Af", "An", "Bf", "Bn")
VECTORS = ("a", "b", "cf", "cn")


class InstanceError(ValueError):
    """Malformed instance or report; the message names the offending field."""


def _rational(value, where: str) -> Fraction:
    if isinstance(value, float):
        raise InstanceError(f"{where}: floats are not accepted, write {value!r} as a string")
    try:
        return as_rational(value)
    except (TypeError, ValueError) as exc:
        raise InstanceError(f"{where}: {exc}") from None


def _interval(value, where: str) -> Interval:
    if isinstance(value, list):
        if len(value) != 2:
            raise InstanceError(f"{where}: an interval needs exactly two bounds")
        lo, hi = _rational(value[0], f"{where}[0]"), _rational(value[1], f"{where}[1]")
        try:
            return Interval(lo, hi)
        except IntervalError as exc:
            raise InstanceError(f"{where}: {exc}") from None
    return Interval.point(_rational(value, where))


def _list(value, where: str) -> list:
    if not isinstance(value, list):
        raise InstanceError(f"{where}: expected an array")
    return value


def _ivector(value, where: str) -> tuple[Interval, ...]:
    return tuple(_interval(v, f"{where}[{i}]") for i, v in enumerate(_list(value, where)))


def _imatrix(value, where: str, rows: int, cols: int) -> IntervalMatrix:
    value = _list(value, where)
    if len(value) != rows:
        raise InstanceError(f"{where}: expected {rows} rows, got {len(value)}")
    out = []
    for i, row in enumerate(value):
        row = _list(row, f"{where}[{i}]")
        if len(row) != cols:
            raise InstanceError(f"{where}[{i}]: expected {cols} entries, got {len(row)}")
        out.append(tuple(_interval(v, f"{where}[{i}][{j}]") for j, v in enumerate(row)))
    return IntervalMatrix(rows, cols, tuple(out))


def _rvector(value, where: str) -> tuple[Fraction, ...]:
    return tuple(_rational(v, f"{where}[{i}]") for i, v in enumerate(_list(value, where)))


def _rmatrix(value, where: str) -> tuple[tuple[Fraction, ...], ...]:
    return tuple(_rvector(r, f"{where}[{i}]") for i, r in enumerate(_list(value, where)))


def _infer_dims(obj: dict) -> dict[str, int]:
    declared = obj.get("dims") or {}
    if not isinstance(declared, dict):
        raise InstanceError("dims: expected an object")

    def first(*candidates):
        for c in candidates:
            if c is not None:
                return c
        return 0

    def rows(name):
        v = obj.get(name)
        return len(v) if isinstance(v, list) else None

    def cols(*names):
        for name in names:
            v = obj.get(name)
            if isinstance(v, list) and v and isinstance(v[0], list):
                return len(v[0])
        return None

    dims = {
        "k": first(declared.get("k"), rows("a"), rows("Af"), rows("An")),
        "l": first(declared.get("l"), rows("b"), rows("Bf"), rows("Bn")),
        "m": first(declared.get("m"), rows("cf"), cols("Af", "Bf")),
        "n": first(declared.get("n"), rows("cn"), cols("An", "Bn")),
    }
    for key, v in dims.items():
        if not isinstance(v, int) or isinstance(v, bool) or v < 0:
            raise InstanceError(f"dims.{key}: expected a nonnegative integer")
    return dims


def data_from_json(obj: Any) -> IlpData:
    """Build IlpData from a decoded instance object.  Absent blocks are crisp zeros."""
    if not isinstance(obj, dict):
        raise InstanceError("instance: expected a JSON object")
    version = obj.get("version", FORMAT_VERSION)
    if str(version) != FORMAT_VERSION:
        raise InstanceError(f"version: unsupported format version {version!r}")
    d = _infer_dims(obj)
    k, l, m, n = d["k"], d["l"], d["m"], d["n"]
    shapes = {"Af": (k, m), "An": (k, n), "Bf": (l, m), "Bn": (l, n)}
    blocks = {}
    for name, (r, c) in shapes.items():
        blocks[name] = (_imatrix(obj[name], name, r, c) if name in obj
                        else IntervalMatrix.zeros(r, c))
    sizes = {"a": k, "b": l, "cf": m, "cn": n}
    for name, size in sizes.items():
        if name in obj:
            v = _ivector(obj[name], name)
            if len(v) != size:
                raise InstanceError(f"{name}: expected {size} entries, got {len(v)}")
        else:
            v = (Interval(0, 0),) * size
        blocks[name] = v
    return IlpData(**blocks)


def point_from_json(obj: Any, data: IlpData | None = None, where: str = "point") -> Point:
    if not isinstance(obj, dict):
        raise InstanceError(f"{where}: expected an object with xf and xn")
    p = Point(_rvector(obj.get("xf", []), f"{where}.xf"), _rvector(obj.get("xn", []), f"{where}.xn"))
    if data is not None and (len(p.xf) != data.m or len(p.xn) != data.n):
        raise InstanceError(
            f"{where}: expected {data.m} free and {data.n} nonnegative entries, "
            f"got {len(p.xf)} and {len(p.xn)}")
    return p


def load_instance(obj: Any) -> tuple[IlpData, Point | None]:
    data = data_from_json(obj)
    point = point_from_json(obj["point"], data) if "point" in obj else None
    return data, point


def parse_json_text(text: str, source: str = "<input>") -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InstanceError(f"{source}: line {exc.lineno} column {exc.colno}: {exc.msg}") from None


def rational_to_json(q: Fraction):
    q = as_rational(q)
    return q.numerator if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def interval_to_json(iv: Interval):
    if iv.degenerate:
        return rational_to_json(iv.lo)
    return [rational_to_json(iv.lo), rational_to_json(iv.hi)]


def point_to_json(x: Point) -> dict:
    return {"xf": [rational_to_json(v) for v in x.xf], "xn": [rational_to_json(v) for v in x.xn]}


def data_to_json(data: IlpData, point: Point | None = None) -> dict:
    k, l, m, n = data.dims
    out: dict[str, Any] = {"version": FORMAT_VERSION, "dims": {"k": k, "l": l, "m": m, "n": n}}
    for name in BLOCKS:
        out[name] = [[interval_to_json(e) for e in row] for row in getattr(data, name)]
    for name in VECTORS:
        out[name] = [interval_to_json(e) for e in getattr(data, name)]
    if point is not None:
        out["point"] = point_to_json(point)
    return out


def scenario_to_json(s: Scenario) -> dict:
    out = {}
    for name in BLOCKS:
        out[name] = [[rational_to_json(v) for v in row] for row in getattr(s, name)]
    for name in VECTORS:
        out[name] = [rational_to_json(v) for v in getattr(s, name)]
    return out


def scenario_from_json(obj: Any, data: IlpData, where: str = "scenario") -> Scenario:
    if not isinstance(obj, dict):
        raise InstanceError(f"{where}: expected an object")
    k, l, m, n = data.dims
    fields = {}
    for name in BLOCKS:
        if name not in obj:
            raise InstanceError(f"{where}.{name}: missing")
        fields[name] = _rmatrix(obj[name], f"{where}.{name}")
    for name in VECTORS:
        if name not in obj:
            raise InstanceError(f"{where}.{name}: missing")
        fields[name] = _rvector(obj[name], f"{where}.{name}")
    try:
        s = Scenario(**fields)
    except IntervalError as exc:
        raise InstanceError(f"{where}: {exc}") from None
    if s.dims != data.dims:
        raise InstanceError(f"{where}: dimensions {s.dims} do not match the instance {data.dims}")
    return s


def witness_to_json(w: Witness) -> dict:
    return {
        "scenario": scenario_to_json(w.scenario),
        "yf": [rational_to_json(v) for v in w.yf],
        "yn": [rational_to_json(v) for v in w.yn],
        "sigma": list(w.sigma),
    }


def witness_from_json(obj: Any, data: IlpData, where: str = "witness") -> Witness:
    if not isinstance(obj, dict):
        raise InstanceError(f"{where}: expected an object")
    s = scenario_from_json(obj.get("scenario"), data, f"{where}.scenario")
    sigma = _list(obj.get("sigma", []), f"{where}.sigma")
    try:
        return Witness(s, _rvector(obj.get("yf", []), f"{where}.yf"),
                       _rvector(obj.get("yn", []), f"{where}.yn"), tuple(sigma))
    except (TypeError, ValueError) as exc:
        raise InstanceError(f"{where}: {exc}") from None


def stats_to_json(stats: Stats, exhaustive: bool = False) -> dict:
    out = {"orthants_tried": stats.orthants_tried, "lp_solves": stats.lp_solves,
           "row_completions": stats.row_completions}
    if exhaustive:
        out["feasible_orthants"] = [list(s) for s in stats.feasible_orthants]
    return out


def verdict_to_json(verdict: Verdict, point: Point, exhaustive: bool = False) -> dict:
    return {
        "version": FORMAT_VERSION,
        "verdict": verdict.tag.value,
        "point": point_to_json(point),
        "witness": witness_to_json(verdict.witness) if verdict.witness is not None else None,
        "stats": stats_to_json(verdict.stats, exhaustive),
    }


def system_from_json(obj: Any) -> tuple[IntervalMatrix, tuple[Interval, ...]]:
    """Read an interval inequality system ``Bf x <= b`` (free x)."""
    if not isinstance(obj, dict):
        raise InstanceError("system: expected a JSON object")
    b = _ivector(obj.get("b", []), "b")
    l = len(b)
    rows = _list(obj.get("Bf", []), "Bf")
    if "m" in obj:
        m = obj["m"]
        if not isinstance(m, int) or isinstance(m, bool) or m < 0:
            raise InstanceError("m: expected a nonnegative integer")
    else:
        m = len(rows[0]) if rows and isinstance(rows[0], list) else 0
    return _imatrix(rows, "Bf", l, m), b


def dumps(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"
