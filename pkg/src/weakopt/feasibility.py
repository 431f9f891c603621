"""Weak feasibility of a fixed point and per-row scenario completion.

Rows of an interval program carry independent coefficients, so a point is
weakly feasible exactly when each row, taken alone, can be satisfied.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction

from .intervals import Interval, interval_dot
from .linsolve import LinearSystem, solve_feasibility
from .model import IlpData, Point, check_point_shape


class RowInfeasibleAtPoint(ValueError):
    """No realization of the row holds at the given point."""


class RowType(str, enum.Enum):
    EQUALITY = "equality"
    INEQUALITY = "inequality"


@dataclass(frozen=True)
class RowKind:
    tag: RowType
    index: int

    @classmethod
    def eq(cls, i: int) -> RowKind:
        return cls(RowType.EQUALITY, i)

    @classmethod
    def ineq(cls, i: int) -> RowKind:
        return cls(RowType.INEQUALITY, i)


def _row_data(data: IlpData, row: RowKind) -> tuple[tuple[Interval, ...], Interval]:
    if row.tag is RowType.EQUALITY:
        if not 0 <= row.index < data.k:
            raise IndexError(f"equality row {row.index} out of range (k={data.k})")
        return data.eq_row(row.index), data.a[row.index]
    if not 0 <= row.index < data.l:
        raise IndexError(f"inequality row {row.index} out of range (l={data.l})")
    return data.ineq_row(row.index), data.b[row.index]


def row_range(data: IlpData, x: Point, row: RowKind) -> Interval:
    coeffs, _ = _row_data(data, row)
    return interval_dot(x.values, coeffs)


def row_satisfiable(data: IlpData, x: Point, row: RowKind) -> bool:
    rng = row_range(data, x, row)
    _, rhs = _row_data(data, row)
    if row.tag is RowType.EQUALITY:
        return rng.intersect(rhs) is not None
    return rng.hi >= rhs.lo


def check_point_weak_feasibility(data: IlpData, x: Point) -> bool:
    """True iff some scenario makes ``x`` feasible."""
    check_point_shape(data, x)
    if any(v < 0 for v in x.xn):
        return False
    rows = [RowKind.eq(i) for i in range(data.k)] + [RowKind.ineq(i) for i in range(data.l)]
    return all(row_satisfiable(data, x, r) for r in rows)


def complete_row_scenario(data: IlpData, x: Point, row: RowKind
                          ) -> tuple[tuple[Fraction, ...], Fraction]:
    """Pick row coefficients and right-hand side, inside their intervals, that hold at ``x``.

    Equality rows target the midpoint of ``range ∩ rhs``; inequality rows
    keep the right-hand side as a variable.  Returns ``(coeffs, rhs)`` with
    coeffs ordered as (free part, nonnegative part).
    """
    check_point_shape(data, x)
    if not row_satisfiable(data, x, row):
        raise RowInfeasibleAtPoint(f"{row.tag.value} row {row.index} cannot hold at x")
    coeffs, rhs_iv = _row_data(data, row)
    xs = x.values

    sys = LinearSystem()
    w = []
    for j, iv in enumerate(coeffs):
        v = sys.add_var(f"w{j}", lower=iv.lo)
        sys.add_le({v: 1}, iv.hi)
        w.append(v)
    if row.tag is RowType.EQUALITY:
        target = interval_dot(xs, coeffs).intersect(rhs_iv).mid
        sys.add_eq({w[j]: xs[j] for j in range(len(w))}, target)
    else:
        r = sys.add_var("rhs", lower=rhs_iv.lo)
        sys.add_le({r: 1}, rhs_iv.hi)
        lhs = {w[j]: xs[j] for j in range(len(w))}
        lhs[r] = Fraction(-1)
        sys.add_ge(lhs, 0)
    res = solve_feasibility(sys)
    if not res.feasible:
        # unreachable after row_satisfiable, kept as a guard on the kernel
        raise RowInfeasibleAtPoint(f"kernel found no completion for {row}")
    values = res.assignment
    if row.tag is RowType.EQUALITY:
        return values, target
    return values[:-1], values[-1]
