"""Brute-force reference checkers, used only to validate the main algorithm.

``corner_grid_oracle`` searches scenarios on a finite grid and is one-sided:
a certificate proves weak optimality, an inconclusive answer proves nothing.
``weak_feasibility_system_bruteforce`` decides weak feasibility of
``B x <= b`` exactly by enumerating the 2^m sign orthants of x, and
``weak_feasibility_point_bruteforce`` checks a fixed point with one joint LP.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .intervals import Interval, IntervalMatrix, interval_vector
from .linsolve import LinearSystem, solve_feasibility, verify_optimal
from .model import IlpData, Point, Scenario, check_point_shape, row_value

DEFAULT_BUDGET = 2_000_000
DEFAULT_CAP = 12


class BudgetExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class OracleResult:
    certified: bool
    scenario: Scenario | None = None
    scenarios_checked: int = 0


def grid(iv: Interval, depth: int) -> tuple[Fraction, ...]:
    """Both endpoints plus ``depth`` equally spaced interior points."""
    if iv.degenerate:
        return (iv.lo,)
    step = iv.width / (depth + 1)
    return (iv.lo,) + tuple(iv.lo + step * t for t in range(1, depth + 1)) + (iv.hi,)


def _row_candidates(coeffs, rhs, xs, depth, equality):
    """Grid realizations of one row that hold at x.

    For an inequality row, realizations that hold strictly are all
    interchangeable as far as optimality of x goes (an inactive constraint
    carries a zero multiplier), so only the first one is kept.
    """
    grids = [grid(iv, depth) for iv in coeffs] + [grid(rhs, depth)]
    out = []
    seen_strict = False
    for choice in itertools.product(*grids):
        w, r = choice[:-1], choice[-1]
        v = row_value(w, xs)
        if v == r:
            out.append((w, r, True))
        elif not equality and v > r and not seen_strict:
            out.append((w, r, False))
            seen_strict = True
    return out


def _dual_box_feasible(data, x, eq_rows, ineq_rows) -> bool:
    """Is there any objective in the cost box making x optimal for these rows?"""
    k, l, m, n = data.dims
    sys = LinearSystem()
    yf = [sys.add_var(f"yf{i}", lower=None) for i in range(k)]
    yn = [sys.add_var(f"yn{i}", lower=0) for i in range(l)]
    for i, (_, _, active) in enumerate(ineq_rows):
        if not active:
            sys.add_eq({yn[i]: 1}, 0)
    for j in range(m + n):
        col = {}
        for i, (w, _, _) in enumerate(eq_rows):
            if w[j]:
                col[yf[i]] = w[j]
        for i, (w, _, _) in enumerate(ineq_rows):
            if w[j]:
                col[yn[i]] = col.get(yn[i], 0) + w[j]
        if j < m:
            iv = data.cf[j]
            sys.add_le(col, iv.hi)
            sys.add_ge(col, iv.lo)
        else:
            iv = data.cn[j - m]
            sys.add_le(col, iv.hi)
            if x.xn[j - m] > 0:
                sys.add_ge(col, iv.lo)
    return solve_feasibility(sys).feasible


def corner_grid_oracle(data: IlpData, x: Point, depth: int = 2,
                       budget: int = DEFAULT_BUDGET) -> OracleResult:
    """Look for a grid scenario for which ``x`` is an optimal LP solution.

    Rows that cannot hold at x on the grid are dropped before the product
    is formed, and each candidate row combination is skipped when no cost
    vector in the objective box could make x optimal.  Remaining cost grid
    points are tested with ``verify_optimal`` on the scenario LP.
    """
    check_point_shape(data, x)
    if depth < 0:
        raise ValueError("depth must be nonnegative")
    k, l, m, n = data.dims
    if any(v < 0 for v in x.xn):
        return OracleResult(False)
    xs = x.values
    eq_cands = [_row_candidates(data.eq_row(i), data.a[i], xs, depth, True) for i in range(k)]
    ineq_cands = [_row_candidates(data.ineq_row(i), data.b[i], xs, depth, False) for i in range(l)]
    cost_grids = [grid(iv, depth) for iv in data.cf + data.cn]
    n_costs = math.prod(len(g) for g in cost_grids)
    total = math.prod(len(c) for c in eq_cands + ineq_cands) * n_costs
    if total > budget:
        raise BudgetExceeded(f"{total} scenarios exceed the budget of {budget}")
    if total == 0:
        return OracleResult(False)

    checked = 0
    for eq_rows in itertools.product(*eq_cands):
        for ineq_rows in itertools.product(*ineq_cands):
            if not _dual_box_feasible(data, x, eq_rows, ineq_rows):
                checked += n_costs
                continue
            Af = tuple(w[:m] for w, _, _ in eq_rows)
            An = tuple(w[m:] for w, _, _ in eq_rows)
            a = tuple(r for _, r, _ in eq_rows)
            Bf = tuple(w[:m] for w, _, _ in ineq_rows)
            Bn = tuple(w[m:] for w, _, _ in ineq_rows)
            b = tuple(r for _, r, _ in ineq_rows)
            sys = _rows_lp(Af, An, a, Bf, Bn, b, m, n)
            for c in itertools.product(*cost_grids):
                checked += 1
                if verify_optimal(sys, c, xs):
                    s = Scenario(Af, An, Bf, Bn, a, b, c[:m], c[m:])
                    return OracleResult(True, s, checked)
    return OracleResult(False, None, checked)


def _rows_lp(Af, An, a, Bf, Bn, b, m, n) -> LinearSystem:
    sys = LinearSystem()
    for j in range(m):
        sys.add_var(f"xf{j}", lower=None)
    for j in range(n):
        sys.add_var(f"xn{j}", lower=0)
    for i in range(len(a)):
        sys.add_eq(Af[i] + An[i], a[i])
    for i in range(len(b)):
        sys.add_ge(Bf[i] + Bn[i], b[i])
    return sys


def weak_feasibility_point_bruteforce(data: IlpData, x: Point) -> bool:
    """Is ``x`` feasible for some scenario?  One joint LP over every coefficient.

    With x fixed each row is linear in its coefficients, so all rows are put
    into a single system rather than checked one by one.
    """
    check_point_shape(data, x)
    if any(v < 0 for v in x.xn):
        return False
    xs = x.values
    sys = LinearSystem()

    def var(name, iv):
        v = sys.add_var(name, lower=iv.lo)
        sys.add_le({v: 1}, iv.hi)
        return v

    for kind, count in (("eq", data.k), ("ineq", data.l)):
        for i in range(count):
            coeffs = data.eq_row(i) if kind == "eq" else data.ineq_row(i)
            rhs = data.a[i] if kind == "eq" else data.b[i]
            row = {}
            for j, iv in enumerate(coeffs):
                if xs[j]:
                    row[var(f"{kind}{i}_{j}", iv)] = xs[j]
            row[var(f"{kind}{i}_rhs", rhs)] = Fraction(-1)
            if kind == "eq":
                sys.add_eq(row, 0)
            else:
                sys.add_ge(row, 0)
    return solve_feasibility(sys).feasible


def weak_feasibility_system_bruteforce(Bf: IntervalMatrix, b: Sequence, cap: int = DEFAULT_CAP) -> bool:
    """Does ``B x <= beta`` hold for some free x, some B in Bf and beta in b?

    Inside a fixed orthant the smallest attainable ``B_i x`` is linear in x,
    with each coefficient at one endpoint:

        sign of x_j | coefficient minimizing B_ij x_j
        ------------+---------------------------------
           x_j >= 0 | lower endpoint
           x_j <= 0 | upper endpoint

    and the right-hand side is best at its upper endpoint.  So the system is
    weakly feasible iff one of the 2^m orthant LPs is feasible.
    """
    b = interval_vector(b)
    l, m = Bf.shape
    if len(b) != l:
        raise ValueError(f"Bf has {l} rows but b has {len(b)} entries")
    if m > cap:
        raise BudgetExceeded(f"{m} variables exceed the orthant cap of {cap}")
    for signs in itertools.product((1, -1), repeat=m):
        sys = LinearSystem()
        xs = []
        for j, s in enumerate(signs):
            if s > 0:
                xs.append(sys.add_var(f"x{j}", lower=0))
            else:
                v = sys.add_var(f"x{j}", lower=None)
                sys.add_le({v: 1}, 0)
                xs.append(v)
        for i in range(l):
            row = {xs[j]: (Bf[i][j].lo if signs[j] > 0 else Bf[i][j].hi) for j in range(m)}
            sys.add_le(row, b[i].hi)
        if solve_feasibility(sys).feasible:
            return True
    return False
