"""Exhaustive vertex enumeration for tiny bounded LPs (test oracle only).

Independent of the simplex kernel: every set of ``n`` constraints is made
tight, the square system is solved by Gaussian elimination over Fractions,
and feasible solutions are collected.
"""
from __future__ import annotations

import itertools
from fractions import Fraction


def solve_square(rows, rhs):
    """Unique solution of a square system, or None when singular."""
    n = len(rows)
    M = [list(r) + [b] for r, b in zip(rows, rhs)]
    for col in range(n):
        piv = next((r for r in range(col, n) if M[r][col] != 0), None)
        if piv is None:
            return None
        M[col], M[piv] = M[piv], M[col]
        p = M[col][col]
        M[col] = [v / p for v in M[col]]
        for r in range(n):
            if r != col and M[r][col] != 0:
                f = M[r][col]
                M[r] = [a - f * b for a, b in zip(M[r], M[col])]
    return [M[r][n] for r in range(n)]


def constraints(sys):
    """All constraints of a LinearSystem as (dense coeffs, rhs, kind) with kind 'eq'/'le'."""
    n = sys.num_vars
    out = []

    def dense(row):
        v = [Fraction(0)] * n
        for j, c in row.items():
            v[j] = c
        return v

    for row, b in sys.eq_rows:
        out.append((dense(row), b, "eq"))
    for row, b in sys.le_rows:
        out.append((dense(row), b, "le"))
    for j, lb in enumerate(sys.lower_bounds):
        if lb is not None:
            e = [Fraction(0)] * n
            e[j] = Fraction(-1)
            out.append((e, -lb, "le"))
    return out


def feasible_point(cons, x):
    for a, b, kind in cons:
        v = sum((ai * xi for ai, xi in zip(a, x)), Fraction(0))
        if kind == "eq" and v != b:
            return False
        if kind == "le" and v > b:
            return False
    return True


def vertices(sys):
    n = sys.num_vars
    cons = constraints(sys)
    if n == 0:
        return [()] if feasible_point(cons, ()) else []
    found = set()
    for subset in itertools.combinations(cons, n):
        x = solve_square([c[0] for c in subset], [c[1] for c in subset])
        if x is not None and feasible_point(cons, x):
            found.add(tuple(x))
    return sorted(found)


def lp_min(sys, objective):
    """Minimum over vertices (caller guarantees a bounded, pointed polyhedron)."""
    vs = vertices(sys)
    if not vs:
        return None
    return min(sum((c * v for c, v in zip(objective, x)), Fraction(0)) for x in vs)


def random_bounded_system(rng, max_vars=4, max_rows=6):
    """Random LinearSystem with every variable boxed in [-10, 10] (so bounded)."""
    from weakopt.linsolve import LinearSystem

    n = rng.randint(1, max_vars)
    sys = LinearSystem()
    for j in range(n):
        free = rng.random() < 0.4
        v = sys.add_var(f"v{j}", lower=None if free else Fraction(rng.randint(-3, 1)))
        if free:
            sys.add_ge({v: 1}, -10)
        sys.add_le({v: 1}, 10)

    def coeffs():
        return [Fraction(rng.randint(-4, 4), rng.choice((1, 2))) for _ in range(n)]

    n_rows = rng.randint(1, max_rows)
    n_eq = rng.randint(0, min(2, n_rows))
    for _ in range(n_eq):
        sys.add_eq(coeffs(), Fraction(rng.randint(-6, 6)))
    for _ in range(n_rows - n_eq):
        sys.add_le(coeffs(), Fraction(rng.randint(-6, 6)))
    return sys


def degenerate_system(rng):
    """A bounded system built from a few rows, each repeated several times,
    all passing through a common point (heavy primal degeneracy)."""
    from weakopt.linsolve import LinearSystem

    n = rng.randint(2, 4)
    sys = LinearSystem()
    for j in range(n):
        sys.add_var(f"v{j}", lower=0)
        sys.add_le({j: 1}, 5)
    anchor = [Fraction(rng.randint(0, 2)) for _ in range(n)]
    base = []
    for _ in range(rng.randint(2, 4)):
        a = [Fraction(rng.randint(-3, 3)) for _ in range(n)]
        base.append((a, sum((ai * xi for ai, xi in zip(a, anchor)), Fraction(0))))
    for a, b in base:
        for _ in range(rng.randint(2, 4)):
            sys.add_le(a, b)
    if rng.random() < 0.5:
        a, b = base[0]
        sys.add_eq(a, b)
        sys.add_eq([2 * v for v in a], 2 * b)
    return sys
