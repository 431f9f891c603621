"""Interval linear program data, scenarios, points and verdicts.

The program family is

    min  cf.xf + cn.xn
    s.t. Af xf + An xn  = a     (k rows)
         Bf xf + Bn xn >= b     (l rows)
         xn >= 0

with xf free (m entries) and xn nonnegative (n entries).  Each coefficient
ranges over its own closed interval; a scenario fixes one value per entry.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .intervals import Interval, IntervalError, IntervalMatrix, as_rational, interval_vector

Vector = tuple[Fraction, ...]
Matrix = tuple[Vector, ...]


def _vec(values) -> Vector:
    return tuple(as_rational(v) for v in values)


def _mat(rows, ncols: int) -> Matrix:
    out = tuple(_vec(r) for r in rows)
    if any(len(r) != ncols for r in out):
        raise IntervalError("ragged matrix")
    return out


@dataclass(frozen=True)
class IlpData:
    Af: IntervalMatrix
    An: IntervalMatrix
    Bf: IntervalMatrix
    Bn: IntervalMatrix
    a: tuple[Interval, ...]
    b: tuple[Interval, ...]
    cf: tuple[Interval, ...]
    cn: tuple[Interval, ...]

    def __post_init__(self):
        for name in ("a", "b", "cf", "cn"):
            object.__setattr__(self, name, interval_vector(getattr(self, name)))
        k, l, m, n = len(self.a), len(self.b), len(self.cf), len(self.cn)
        expected = {"Af": (k, m), "An": (k, n), "Bf": (l, m), "Bn": (l, n)}
        for name, shape in expected.items():
            got = getattr(self, name).shape
            if got != shape:
                raise IntervalError(
                    f"{name} has shape {got[0]}x{got[1]}, expected {shape[0]}x{shape[1]}")

    @classmethod
    def build(cls, *, k=None, l=None, m=None, n=None, Af=None, An=None, Bf=None,
              Bn=None, a=None, b=None, cf=None, cn=None) -> IlpData:
        """Convenience constructor from nested lists; omitted blocks are crisp zeros.

        Dimensions are inferred from the vectors unless given explicitly.
        """
        def infer(explicit, vec, *mats_rows):
            if explicit is not None:
                return explicit
            if vec is not None:
                return len(vec)
            for rows in mats_rows:
                if rows is not None:
                    return len(rows)
            return 0

        def ncols(*mats):
            for rows in mats:
                if rows:
                    return len(rows[0])
            return None

        k = infer(k, a, Af, An)
        l = infer(l, b, Bf, Bn)
        m = m if m is not None else (len(cf) if cf is not None else (ncols(Af, Bf) or 0))
        n = n if n is not None else (len(cn) if cn is not None else (ncols(An, Bn) or 0))

        def mat(rows, r, c):
            if rows is None:
                return IntervalMatrix.zeros(r, c)
            return IntervalMatrix(len(rows), c if not rows else len(rows[0]),
                                  tuple(tuple(row) for row in rows))

        def vec(v, size):
            return interval_vector(v) if v is not None else (Interval(0, 0),) * size

        return cls(mat(Af, k, m), mat(An, k, n), mat(Bf, l, m), mat(Bn, l, n),
                   vec(a, k), vec(b, l), vec(cf, m), vec(cn, n))

    @property
    def k(self) -> int:
        return len(self.a)

    @property
    def l(self) -> int:  # noqa: E743
        return len(self.b)

    @property
    def m(self) -> int:
        return len(self.cf)

    @property
    def n(self) -> int:
        return len(self.cn)

    @property
    def dims(self) -> tuple[int, int, int, int]:
        return self.k, self.l, self.m, self.n

    def eq_row(self, i) -> tuple[Interval, ...]:
        """Coefficients of equality row i over (xf, xn)."""
        return self.Af[i] + self.An[i]

    def ineq_row(self, i) -> tuple[Interval, ...]:
        return self.Bf[i] + self.Bn[i]

    def interval_entries(self) -> int:
        """Number of nondegenerate interval coefficients."""
        count = 0
        for M in (self.Af, self.An, self.Bf, self.Bn):
            count += sum(not e.degenerate for row in M for e in row)
        for v in (self.a, self.b, self.cf, self.cn):
            count += sum(not e.degenerate for e in v)
        return count

    def midpoint(self) -> Scenario:
        def mmid(M):
            return tuple(tuple(e.mid for e in row) for row in M)

        def vmid(v):
            return tuple(e.mid for e in v)

        return Scenario(mmid(self.Af), mmid(self.An), mmid(self.Bf), mmid(self.Bn),
                        vmid(self.a), vmid(self.b), vmid(self.cf), vmid(self.cn))


@dataclass(frozen=True)
class Scenario:
    Af: Matrix
    An: Matrix
    Bf: Matrix
    Bn: Matrix
    a: Vector
    b: Vector
    cf: Vector
    cn: Vector

    def __post_init__(self):
        for name in ("a", "b", "cf", "cn"):
            object.__setattr__(self, name, _vec(getattr(self, name)))
        k, l, m, n = len(self.a), len(self.b), len(self.cf), len(self.cn)
        for name, (rows, cols) in {"Af": (k, m), "An": (k, n), "Bf": (l, m), "Bn": (l, n)}.items():
            M = _mat(getattr(self, name), cols)
            if len(M) != rows:
                raise IntervalError(f"scenario block {name} has {len(M)} rows, expected {rows}")
            object.__setattr__(self, name, M)

    @property
    def dims(self) -> tuple[int, int, int, int]:
        return len(self.a), len(self.b), len(self.cf), len(self.cn)


@dataclass(frozen=True)
class Point:
    xf: Vector = ()
    xn: Vector = ()

    def __post_init__(self):
        object.__setattr__(self, "xf", _vec(self.xf))
        object.__setattr__(self, "xn", _vec(self.xn))

    @property
    def values(self) -> Vector:
        return self.xf + self.xn


def check_point_shape(data: IlpData, x: Point) -> None:
    if len(x.xf) != data.m or len(x.xn) != data.n:
        raise IntervalError(
            f"point has {len(x.xf)}+{len(x.xn)} entries, program expects {data.m}+{data.n}")


def scenario_contains(data: IlpData, s: Scenario) -> bool:
    """True iff every coefficient of ``s`` lies in the matching interval of ``data``."""
    if s.dims != data.dims:
        raise IntervalError(f"scenario dims {s.dims} do not match data dims {data.dims}")
    for name in ("Af", "An", "Bf", "Bn"):
        if not getattr(data, name).contains(getattr(s, name)):
            return False
    for name in ("a", "b", "cf", "cn"):
        if not all(v in iv for v, iv in zip(getattr(s, name), getattr(data, name))):
            return False
    return True


def scenario_from_data(data: IlpData) -> Scenario:
    """The unique scenario of data whose intervals are all degenerate."""
    if data.interval_entries():
        raise IntervalError("data has nondegenerate intervals")
    return data.midpoint()


class VerdictTag(str, enum.Enum):
    WEAKLY_OPTIMAL = "weakly_optimal"
    NOT_WEAKLY_OPTIMAL = "not_weakly_optimal"
    NOT_WEAKLY_FEASIBLE = "not_weakly_feasible"


@dataclass(frozen=True)
class Witness:
    scenario: Scenario
    yf: Vector
    yn: Vector
    sigma: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "yf", _vec(self.yf))
        object.__setattr__(self, "yn", _vec(self.yn))
        object.__setattr__(self, "sigma", tuple(int(s) for s in self.sigma))
        if any(s not in (1, -1) for s in self.sigma):
            raise ValueError("sigma entries must be +1 or -1")


@dataclass(frozen=True)
class Stats:
    orthants_tried: int = 0
    lp_solves: int = 0
    row_completions: int = 0
    feasible_orthants: tuple[tuple[int, ...], ...] = ()


@dataclass(frozen=True)
class Verdict:
    tag: VerdictTag
    witness: Witness | None = None
    stats: Stats = field(default_factory=Stats)

    def __post_init__(self):
        if (self.tag is VerdictTag.WEAKLY_OPTIMAL) != (self.witness is not None):
            raise ValueError("a witness is present exactly for weakly optimal verdicts")

    @property
    def weakly_optimal(self) -> bool:
        return self.tag is VerdictTag.WEAKLY_OPTIMAL


def row_value(coeffs: Sequence[Fraction], x: Sequence[Fraction]) -> Fraction:
    return sum((c * v for c, v in zip(coeffs, x)), Fraction(0))
