"""Exact rational linear feasibility and optimization.

A dense two-phase primal simplex with Bland's smallest-index rule.  The
tableau runs on ``gmpy2.mpq`` when gmpy2 is importable and on
``fractions.Fraction`` otherwise; inputs and outputs are always Fractions.
"""
from __future__ import annotations

import enum
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from .intervals import as_rational

try:
    from gmpy2 import mpq as _num
except ImportError:  # pragma: no cover - exercised only without gmpy2
    _num = Fraction

log = logging.getLogger(__name__)

_ZERO = _num(0)
_ONE = _num(1)


def _to_fraction(q) -> Fraction:
    return Fraction(int(q.numerator), int(q.denominator))


class MalformedSystem(ValueError):
    pass


@dataclass
class LinearSystem:
    """Variables plus equality rows and ``coeff . v <= rhs`` rows.

    Rows are stored sparsely as ``{var_index: coeff}``.  ``lower_bounds[j]``
    is ``None`` for a free variable.
    """

    num_vars: int = 0
    eq_rows: list[tuple[dict[int, Fraction], Fraction]] = field(default_factory=list)
    le_rows: list[tuple[dict[int, Fraction], Fraction]] = field(default_factory=list)
    lower_bounds: list[Fraction | None] = field(default_factory=list)
    names: list[str] = field(default_factory=list)

    def add_var(self, name: str | None = None, lower=Fraction(0)) -> int:
        j = self.num_vars
        name = name if name is not None else f"v{j}"
        self.num_vars += 1
        self.lower_bounds.append(None if lower is None else as_rational(lower))
        self.names.append(name)
        return j

    def _row(self, coeffs) -> dict[int, Fraction]:
        if isinstance(coeffs, Mapping):
            items = coeffs.items()
        else:
            if len(coeffs) != self.num_vars:
                raise MalformedSystem(
                    f"row has length {len(coeffs)}, system has {self.num_vars} variables")
            items = enumerate(coeffs)
        row: dict[int, Fraction] = {}
        for j, c in items:
            if not 0 <= j < self.num_vars:
                raise MalformedSystem(f"variable index {j} out of range")
            c = as_rational(c)
            if c:
                row[j] = row.get(j, Fraction(0)) + c
        return {j: c for j, c in row.items() if c}

    def add_eq(self, coeffs, rhs) -> None:
        self.eq_rows.append((self._row(coeffs), as_rational(rhs)))

    def add_le(self, coeffs, rhs) -> None:
        self.le_rows.append((self._row(coeffs), as_rational(rhs)))

    def add_ge(self, coeffs, rhs) -> None:
        row = self._row(coeffs)
        self.le_rows.append(({j: -c for j, c in row.items()}, -as_rational(rhs)))

    def validate(self) -> None:
        if len(self.lower_bounds) != self.num_vars or len(self.names) != self.num_vars:
            raise MalformedSystem("bounds/names do not match num_vars")
        if len(set(self.names)) != self.num_vars:
            raise MalformedSystem("variable names are not unique")
        for row, _ in self.eq_rows + self.le_rows:
            if any(not 0 <= j < self.num_vars for j in row):
                raise MalformedSystem("row references unknown variable")

    def violations(self, assignment: Sequence[Fraction]) -> list[str]:
        """Human-readable list of rows/bounds the assignment breaks (exact)."""
        if len(assignment) != self.num_vars:
            raise MalformedSystem("assignment length does not match num_vars")
        out = []
        for j, lb in enumerate(self.lower_bounds):
            if lb is not None and assignment[j] < lb:
                out.append(f"{self.names[j]} = {assignment[j]} < {lb}")
        for idx, (row, rhs) in enumerate(self.eq_rows):
            lhs = sum((c * assignment[j] for j, c in row.items()), Fraction(0))
            if lhs != rhs:
                out.append(f"eq row {idx}: {lhs} != {rhs}")
        for idx, (row, rhs) in enumerate(self.le_rows):
            lhs = sum((c * assignment[j] for j, c in row.items()), Fraction(0))
            if lhs > rhs:
                out.append(f"le row {idx}: {lhs} > {rhs}")
        return out

    def satisfied_by(self, assignment) -> bool:
        return not self.violations(assignment)


class SolveTag(str, enum.Enum):
    FEASIBLE = "feasible"
    INFEASIBLE = "infeasible"
    UNBOUNDED = "unbounded"


@dataclass(frozen=True)
class SolveResult:
    tag: SolveTag
    assignment: tuple[Fraction, ...] | None = None
    optimum: Fraction | None = None
    pivots: int = 0

    @property
    def feasible(self) -> bool:
        return self.tag is SolveTag.FEASIBLE


class _Tableau:
    """Standard-form tableau ``T z = rhs, z >= 0`` with an explicit basis."""

    def __init__(self, rows, rhs, ncols, basis):
        self.T = rows
        self.rhs = rhs
        self.ncols = ncols
        self.basis = basis
        self.pivots = 0

    def pivot(self, r, c):
        T, rhs = self.T, self.rhs
        prow = T[r]
        p = prow[c]
        if p != _ONE:
            inv = _ONE / p
            for j in range(self.ncols):
                if prow[j]:
                    prow[j] *= inv
            rhs[r] *= inv
        nz = [j for j in range(self.ncols) if prow[j]]
        pr = rhs[r]
        for i, row in enumerate(T):
            if i == r:
                continue
            f = row[c]
            if f:
                for j in nz:
                    row[j] -= f * prow[j]
                rhs[i] -= f * pr
        self.basis[r] = c
        self.pivots += 1

    def reduced_costs(self, cost):
        """Reduced cost vector and objective value of the current basis."""
        d = list(cost)
        val = _ZERO
        for i, bj in enumerate(self.basis):
            cb = cost[bj]
            if cb:
                row = self.T[i]
                for j in range(self.ncols):
                    if row[j]:
                        d[j] -= cb * row[j]
                val += cb * self.rhs[i]
        return d, val

    def minimize(self, cost, allowed):
        """Bland's rule primal simplex; returns 'optimal' or 'unbounded'."""
        d, _ = self.reduced_costs(cost)
        while True:
            entering = -1
            for j in range(self.ncols):
                if allowed[j] and d[j] < 0:
                    entering = j
                    break
            if entering < 0:
                return "optimal"
            best = None
            leave = -1
            for i, row in enumerate(self.T):
                a = row[entering]
                if a > 0:
                    ratio = self.rhs[i] / a
                    if best is None or ratio < best or (ratio == best and self.basis[i] < self.basis[leave]):
                        best, leave = ratio, i
            if leave < 0:
                return "unbounded"
            self.pivot(leave, entering)
            row = self.T[leave]
            f = d[entering]
            for j in range(self.ncols):
                if row[j]:
                    d[j] -= f * row[j]

    def values(self):
        z = [_ZERO] * self.ncols
        for i, bj in enumerate(self.basis):
            z[bj] = self.rhs[i]
        return z


class _StandardForm:
    """Maps a LinearSystem onto nonnegative columns with slacks."""

    def __init__(self, sys: LinearSystem):
        sys.validate()
        self.sys = sys
        # column layout: per variable one column (shifted by its lower bound)
        # or two (positive/negative part) when free
        self.var_cols: list[tuple[int, int | None]] = []
        col = 0
        for lb in sys.lower_bounds:
            if lb is None:
                self.var_cols.append((col, col + 1))
                col += 2
            else:
                self.var_cols.append((col, None))
                col += 1
        self.n_struct = col
        rows: list[dict[int, object]] = []
        rhs: list[object] = []
        slack_of_row: list[int | None] = []
        n_slack = len(sys.le_rows)
        n_used = 0
        for kind, source in (("eq", sys.eq_rows), ("le", sys.le_rows)):
            for row, b in source:
                r: dict[int, object] = {}
                bb = _num(b)
                for j, c in row.items():
                    cq = _num(c)
                    pos, neg = self.var_cols[j]
                    lb = sys.lower_bounds[j]
                    if lb is not None and lb:
                        bb -= cq * _num(lb)
                    r[pos] = r.get(pos, _ZERO) + cq
                    if neg is not None:
                        r[neg] = r.get(neg, _ZERO) - cq
                if kind == "le":
                    s = self.n_struct + n_used
                    n_used += 1
                    r[s] = _ONE
                    slack_of_row.append(s)
                else:
                    slack_of_row.append(None)
                rows.append(r)
                rhs.append(bb)
        self.rows = rows
        self.rhs = rhs
        self.slack_of_row = slack_of_row
        self.ncols = self.n_struct + n_slack

    def recover(self, z) -> tuple[Fraction, ...]:
        out = []
        for j, (pos, neg) in enumerate(self.var_cols):
            v = z[pos] - (z[neg] if neg is not None else _ZERO)
            lb = self.sys.lower_bounds[j]
            if lb is not None:
                v += _num(lb)
            out.append(_to_fraction(v))
        return tuple(out)


def _phase_one(sf: _StandardForm):
    """Build a feasible basis; returns (tableau, allowed_columns) or None if infeasible."""
    nrows = len(sf.rows)
    n_art = 0
    art_rows = []
    for i in range(nrows):
        s = sf.slack_of_row[i]
        if s is not None and sf.rhs[i] >= 0:
            continue
        art_rows.append(i)
    ncols = sf.ncols + len(art_rows)
    T = []
    rhs = []
    basis = []
    for i in range(nrows):
        row = [_ZERO] * ncols
        sign = _ONE if sf.rhs[i] >= 0 else -_ONE
        for j, c in sf.rows[i].items():
            row[j] = c * sign
        rhs.append(sf.rhs[i] * sign)
        if i in art_rows:
            col = sf.ncols + n_art
            row[col] = _ONE
            n_art += 1
            basis.append(col)
        else:
            basis.append(sf.slack_of_row[i])
        T.append(row)
    tab = _Tableau(T, rhs, ncols, basis)
    allowed = [True] * ncols
    if n_art:
        cost = [_ZERO] * sf.ncols + [_ONE] * n_art
        tab.minimize(cost, allowed)
        _, val = tab.reduced_costs(cost)
        if val > 0:
            return None, tab.pivots
        # drive zero-level artificials out of the basis; drop redundant rows
        i = 0
        while i < len(tab.T):
            bj = tab.basis[i]
            if bj >= sf.ncols:
                row = tab.T[i]
                col = next((j for j in range(sf.ncols) if row[j]), None)
                if col is None:
                    del tab.T[i], tab.rhs[i], tab.basis[i]
                    continue
                tab.pivot(i, col)
            i += 1
        for j in range(sf.ncols, ncols):
            allowed[j] = False
    return tab, tab.pivots


def solve_feasibility(sys: LinearSystem) -> SolveResult:
    """Find an exact point satisfying every row, or report infeasibility."""
    sf = _StandardForm(sys)
    tab, pivots = _phase_one(sf)
    if tab is None:
        log.debug("infeasible after %d pivots", pivots)
        return SolveResult(SolveTag.INFEASIBLE, pivots=pivots)
    assignment = sf.recover(tab.values())
    return SolveResult(SolveTag.FEASIBLE, assignment, pivots=tab.pivots)


def solve_lp(sys: LinearSystem, objective: Sequence, sense: str = "min") -> SolveResult:
    """Optimize ``objective . v`` over ``sys``; unboundedness is a result tag."""
    if len(objective) != sys.num_vars:
        raise MalformedSystem(
            f"objective has length {len(objective)}, system has {sys.num_vars} variables")
    if sense not in ("min", "max"):
        raise ValueError(f"sense must be 'min' or 'max', got {sense!r}")
    sf = _StandardForm(sys)
    tab, pivots = _phase_one(sf)
    if tab is None:
        return SolveResult(SolveTag.INFEASIBLE, pivots=pivots)
    sign = _ONE if sense == "min" else -_ONE
    cost = [_ZERO] * tab.ncols
    for j, c in enumerate(objective):
        c = _num(as_rational(c)) * sign
        pos, neg = sf.var_cols[j]
        cost[pos] += c
        if neg is not None:
            cost[neg] -= c
    allowed = [j < sf.ncols for j in range(tab.ncols)]
    status = tab.minimize(cost, allowed)
    if status == "unbounded":
        return SolveResult(SolveTag.UNBOUNDED, pivots=tab.pivots)
    assignment = sf.recover(tab.values())
    optimum = sum((as_rational(c) * v for c, v in zip(objective, assignment)), Fraction(0))
    return SolveResult(SolveTag.FEASIBLE, assignment, optimum, pivots=tab.pivots)


def verify_optimal(sys: LinearSystem, objective: Sequence, point: Sequence, sense: str = "min") -> bool:
    """True iff ``point`` is feasible and attains the LP optimum exactly."""
    if len(point) != sys.num_vars:
        raise MalformedSystem("point length does not match num_vars")
    point = [as_rational(v) for v in point]
    if not sys.satisfied_by(point):
        return False
    res = solve_lp(sys, objective, sense)
    if res.tag is not SolveTag.FEASIBLE:
        return False
    value = sum((as_rational(c) * v for c, v in zip(objective, point)), Fraction(0))
    return value == res.optimum
