"""Weak optimality testing via linearized duality systems.

For a fixed point x, optimality for some scenario is a bilinear condition
(dual multipliers times uncertain coefficients).  Substituting the scaled
rows ``A' = diag(yf) A`` and ``B' = diag(yn) B`` turns interval membership
of a row into linear bounds on the scaled row, as long as the sign of each
multiplier is known.  ``yn`` is nonnegative by construction; for the free
``yf`` every sign pattern (orthant) is tried in turn.
"""
from __future__ import annotations

import itertools
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .feasibility import RowKind, check_point_weak_feasibility, complete_row_scenario
from .intervals import Interval
from .linsolve import LinearSystem, solve_feasibility, verify_optimal
from .model import (IlpData, Point, Scenario, Stats, Verdict, VerdictTag, Witness,
                    check_point_shape, row_value, scenario_contains)

log = logging.getLogger(__name__)


class InternalInconsistency(RuntimeError):
    """An extracted witness failed verification.  Always a bug."""


@dataclass(frozen=True)
class VarMap:
    """Variable indices of the scaled quantities inside a testing system."""

    yf: tuple[int, ...]
    yn: tuple[int, ...]
    Af: tuple[tuple[int, ...], ...]
    An: tuple[tuple[int, ...], ...]
    a: tuple[int, ...]
    Bf: tuple[tuple[int, ...], ...]
    Bn: tuple[tuple[int, ...], ...]
    b: tuple[int, ...]


@dataclass
class TestingSystem:
    __test__ = False  # keep pytest from collecting this class

    sigma: tuple[int, ...]
    sys: LinearSystem
    vars: VarMap


def _scaled_membership(sys: LinearSystem, var: int, mult: int, iv: Interval, sign: int) -> None:
    """Linearize ``var in mult * iv`` for a multiplier of known sign.

    sign +1 (mult >= 0): mult*lo <= var <= mult*hi
    sign -1 (mult <= 0): mult*hi <= var <= mult*lo
    """
    lo, hi = (iv.lo, iv.hi) if sign > 0 else (iv.hi, iv.lo)
    if lo == hi:
        sys.add_eq({var: 1, mult: -lo}, 0)
        return
    sys.add_le({mult: lo, var: -1}, 0)
    sys.add_le({var: 1, mult: -hi}, 0)


def _column_membership(sys: LinearSystem, col: dict[int, Fraction], iv: Interval, upper_only: bool) -> None:
    if upper_only:
        sys.add_le(col, iv.hi)
    elif iv.degenerate:
        sys.add_eq(col, iv.lo)
    else:
        sys.add_le(col, iv.hi)
        sys.add_ge(col, iv.lo)


def build_testing_system_orthant(data: IlpData, x: Point, sigma: Sequence[int]) -> TestingSystem:
    """Linear system whose feasibility (plus weak feasibility of x) certifies
    weak optimality with equality multipliers of sign pattern ``sigma``."""
    check_point_shape(data, x)
    sigma = tuple(int(s) for s in sigma)
    if len(sigma) != data.k:
        raise ValueError(f"sigma has length {len(sigma)}, program has k={data.k}")
    if any(s not in (1, -1) for s in sigma):
        raise ValueError("sigma entries must be +1 or -1")
    k, l, m, n = data.dims
    xf, xn = x.xf, x.xn
    sys = LinearSystem()

    yf = []
    for i in range(k):
        if sigma[i] > 0:
            yf.append(sys.add_var(f"yf[{i}]", lower=0))
        else:
            v = sys.add_var(f"yf[{i}]", lower=None)
            sys.add_le({v: 1}, 0)
            yf.append(v)
    yn = [sys.add_var(f"yn[{i}]", lower=0) for i in range(l)]

    def scaled_block(prefix, rows, cols):
        return tuple(tuple(sys.add_var(f"{prefix}[{i},{j}]", lower=None) for j in range(cols))
                     for i in range(rows))

    Af = scaled_block("Af'", k, m)
    An = scaled_block("An'", k, n)
    a = tuple(sys.add_var(f"a'[{i}]", lower=None) for i in range(k))
    Bf = scaled_block("Bf'", l, m)
    Bn = scaled_block("Bn'", l, n)
    b = tuple(sys.add_var(f"b'[{i}]", lower=None) for i in range(l))

    # scaled interval membership of every row
    for i in range(k):
        s = sigma[i]
        for j in range(m):
            _scaled_membership(sys, Af[i][j], yf[i], data.Af[i][j], s)
        for j in range(n):
            _scaled_membership(sys, An[i][j], yf[i], data.An[i][j], s)
        _scaled_membership(sys, a[i], yf[i], data.a[i], s)
    for i in range(l):
        for j in range(m):
            _scaled_membership(sys, Bf[i][j], yn[i], data.Bf[i][j], 1)
        for j in range(n):
            _scaled_membership(sys, Bn[i][j], yn[i], data.Bn[i][j], 1)
        _scaled_membership(sys, b[i], yn[i], data.b[i], 1)

    # scaled rows hold with equality at x
    for i in range(k):
        row = {Af[i][j]: xf[j] for j in range(m)}
        row.update({An[i][j]: xn[j] for j in range(n)})
        row[a[i]] = Fraction(-1)
        sys.add_eq(row, 0)
    for i in range(l):
        row = {Bf[i][j]: xf[j] for j in range(m)}
        row.update({Bn[i][j]: xn[j] for j in range(n)})
        row[b[i]] = Fraction(-1)
        sys.add_eq(row, 0)

    # column sums reproduce the objective
    for j in range(m):
        col = {Af[i][j]: 1 for i in range(k)}
        col.update({Bf[i][j]: 1 for i in range(l)})
        _column_membership(sys, col, data.cf[j], upper_only=False)
    for j in range(n):
        col = {An[i][j]: 1 for i in range(k)}
        col.update({Bn[i][j]: 1 for i in range(l)})
        _column_membership(sys, col, data.cn[j], upper_only=not xn[j] > 0)

    return TestingSystem(sigma, sys, VarMap(tuple(yf), tuple(yn), Af, An, a, Bf, Bn, b))


def build_testing_system_ineq(data: IlpData, x: Point) -> TestingSystem:
    """Testing system for a program without equality rows (a single linear system)."""
    if data.k:
        raise ValueError(f"inequality-only testing system needs k=0, got k={data.k}")
    return build_testing_system_orthant(data, x, ())


def orthants(k: int):
    """Sign vectors in lexicographic order, +1 before -1 in every coordinate."""
    return itertools.product((1, -1), repeat=k)


def extract_witness(ts: TestingSystem, assignment: Sequence[Fraction], data: IlpData, x: Point,
                    completions: list | None = None) -> Witness:
    """Rebuild a scenario and dual multipliers from a feasible testing-system assignment.

    Rows with nonzero multiplier are the scaled rows divided by the
    multiplier; rows with zero multiplier are completed independently.
    ``completions``, if given, receives one entry per completed row.
    """
    k, l, m, n = data.dims
    val = lambda j: assignment[j]  # noqa: E731
    vm = ts.vars
    yf = tuple(val(j) for j in vm.yf)
    yn = tuple(val(j) for j in vm.yn)

    Af, An, a = [], [], []
    for i in range(k):
        if yf[i] != 0:
            Af.append(tuple(val(j) / yf[i] for j in vm.Af[i]))
            An.append(tuple(val(j) / yf[i] for j in vm.An[i]))
            a.append(val(vm.a[i]) / yf[i])
        else:
            coeffs, rhs = complete_row_scenario(data, x, RowKind.eq(i))
            if completions is not None:
                completions.append(RowKind.eq(i))
            Af.append(coeffs[:m])
            An.append(coeffs[m:])
            a.append(rhs)
    Bf, Bn, b = [], [], []
    for i in range(l):
        if yn[i] != 0:
            Bf.append(tuple(val(j) / yn[i] for j in vm.Bf[i]))
            Bn.append(tuple(val(j) / yn[i] for j in vm.Bn[i]))
            b.append(val(vm.b[i]) / yn[i])
        else:
            coeffs, rhs = complete_row_scenario(data, x, RowKind.ineq(i))
            if completions is not None:
                completions.append(RowKind.ineq(i))
            Bf.append(coeffs[:m])
            Bn.append(coeffs[m:])
            b.append(rhs)

    cf = tuple(sum((val(vm.Af[i][j]) for i in range(k)), Fraction(0))
               + sum((val(vm.Bf[i][j]) for i in range(l)), Fraction(0)) for j in range(m))
    cn = []
    for j in range(n):
        if x.xn[j] > 0:
            cn.append(sum((val(vm.An[i][j]) for i in range(k)), Fraction(0))
                      + sum((val(vm.Bn[i][j]) for i in range(l)), Fraction(0)))
        else:
            cn.append(data.cn[j].hi)
    scenario = Scenario(tuple(Af), tuple(An), tuple(Bf), tuple(Bn), tuple(a), tuple(b), cf, tuple(cn))
    return Witness(scenario, yf, yn, ts.sigma)


def scenario_lp(s: Scenario) -> tuple[LinearSystem, tuple[Fraction, ...]]:
    """The classical LP of a scenario as (system, objective) over (xf, xn)."""
    k, l, m, n = s.dims
    sys = LinearSystem()
    for j in range(m):
        sys.add_var(f"xf[{j}]", lower=None)
    for j in range(n):
        sys.add_var(f"xn[{j}]", lower=0)
    for i in range(k):
        sys.add_eq(s.Af[i] + s.An[i], s.a[i])
    for i in range(l):
        sys.add_ge(s.Bf[i] + s.Bn[i], s.b[i])
    return sys, s.cf + s.cn


def witness_violations(data: IlpData, x: Point, w: Witness) -> list[str]:
    """Every failed condition of the optimality certificate, as short reasons."""
    check_point_shape(data, x)
    s = w.scenario
    k, l, m, n = data.dims
    if s.dims != data.dims:
        return ["scenario shape"]
    if len(w.yf) != k or len(w.yn) != l:
        return ["multiplier shape"]
    out = []
    if not scenario_contains(data, s):
        out.append("scenario membership")
    if w.sigma and (len(w.sigma) != k or any(sg * y < 0 for sg, y in zip(w.sigma, w.yf))):
        out.append("orthant sign")
    xs = x.values
    if any(v < 0 for v in x.xn):
        out.append("primal nonnegativity")
    for i in range(k):
        if row_value(s.Af[i] + s.An[i], xs) != s.a[i]:
            out.append(f"primal equality row {i}")
    slack = []
    for i in range(l):
        r = row_value(s.Bf[i] + s.Bn[i], xs) - s.b[i]
        slack.append(r)
        if r < 0:
            out.append(f"primal inequality row {i}")
    if any(v < 0 for v in w.yn):
        out.append("dual nonnegativity")
    for j in range(m):
        col = (sum((s.Af[i][j] * w.yf[i] for i in range(k)), Fraction(0))
               + sum((s.Bf[i][j] * w.yn[i] for i in range(l)), Fraction(0)))
        if col != s.cf[j]:
            out.append(f"dual equality column {j}")
    for j in range(n):
        col = (sum((s.An[i][j] * w.yf[i] for i in range(k)), Fraction(0))
               + sum((s.Bn[i][j] * w.yn[i] for i in range(l)), Fraction(0)))
        reduced = s.cn[j] - col
        if reduced < 0:
            out.append(f"dual inequality column {j}")
        if x.xn[j] * reduced != 0:
            out.append(f"complementarity column {j}")
    for i in range(l):
        if w.yn[i] * slack[i] != 0:
            out.append(f"complementarity row {i}")
    return out


def verify_witness(data: IlpData, x: Point, w: Witness) -> bool:
    """Check the certificate exactly, then confirm optimality with the LP kernel."""
    try:
        if witness_violations(data, x, w):
            return False
    except ValueError:
        return False
    sys, obj = scenario_lp(w.scenario)
    return verify_optimal(sys, obj, x.values)


def _solve_orthant(args):
    data, x, sigma = args
    ts = build_testing_system_orthant(data, x, sigma)
    res = solve_feasibility(ts.sys)
    return res.assignment if res.feasible else None


def decide_weak_optimality(data: IlpData, x: Point, *, jobs: int = 1,
                           exhaustive: bool = False) -> Verdict:
    """Decide whether ``x`` is optimal for some scenario and certify a yes.

    Orthants are tried in lexicographic order (+1 first).  With ``jobs > 1``
    they are solved in batches of ``jobs`` worker processes; the reported
    witness is still the one of the lexicographically first feasible
    orthant.  ``exhaustive`` keeps going after the first hit and records
    every feasible orthant in the stats.
    """
    check_point_shape(data, x)
    if not check_point_weak_feasibility(data, x):
        return Verdict(VerdictTag.NOT_WEAKLY_FEASIBLE)

    sigmas = list(orthants(data.k))
    tried = 0
    found: list[tuple[tuple[int, ...], tuple[Fraction, ...]]] = []
    batch = max(1, jobs)
    pool = ProcessPoolExecutor(max_workers=batch) if batch > 1 and len(sigmas) > 1 else None
    try:
        for start in range(0, len(sigmas), batch):
            chunk = sigmas[start:start + batch]
            work = [(data, x, s) for s in chunk]
            results = list(pool.map(_solve_orthant, work)) if pool else [_solve_orthant(w) for w in work]
            tried += len(chunk)
            found.extend((s, r) for s, r in zip(chunk, results) if r is not None)
            if found and not exhaustive:
                break
    finally:
        if pool is not None:
            pool.shutdown()

    feasible = tuple(s for s, _ in found)
    if not found:
        return Verdict(VerdictTag.NOT_WEAKLY_OPTIMAL,
                       stats=Stats(orthants_tried=tried, lp_solves=tried))
    sigma, assignment = found[0]
    ts = build_testing_system_orthant(data, x, sigma)
    completions: list = []
    witness = extract_witness(ts, assignment, data, x, completions)
    if not verify_witness(data, x, witness):
        raise InternalInconsistency(
            f"witness from orthant {sigma} fails: {witness_violations(data, x, witness)}")
    stats = Stats(orthants_tried=tried, lp_solves=tried, row_completions=len(completions),
                  feasible_orthants=feasible if exhaustive else ())
    return Verdict(VerdictTag.WEAKLY_OPTIMAL, witness, stats)
