"""Reduction from weak feasibility of ``B x <= b`` (x free) to weak optimality.

The produced program has only equality rows and nonnegative variables:

    min  b.xn   s.t.  B^T xn = 0,  xn >= 0

and the candidate point is ``xn = 0``.  Its dual constraint is
``B yf <= b`` with yf free, so 0 is optimal for some scenario exactly when
the input interval system is weakly feasible.
"""
from __future__ import annotations

from typing import Sequence

from .intervals import Interval, IntervalError, IntervalMatrix, interval_vector
from .model import IlpData, Point


def reduce_weak_feasibility_to_weak_optimality(Bf: IntervalMatrix, b: Sequence[Interval]
                                               ) -> tuple[IlpData, Point]:
    b = interval_vector(b)
    if Bf.rows != len(b):
        raise IntervalError(f"Bf has {Bf.rows} rows but b has {len(b)} entries")
    k, n = Bf.cols, Bf.rows
    data = IlpData(
        Af=IntervalMatrix.zeros(k, 0),
        An=Bf.transpose(),
        Bf=IntervalMatrix.zeros(0, 0),
        Bn=IntervalMatrix.zeros(0, n),
        a=(Interval(0, 0),) * k,
        b=(),
        cf=(),
        cn=b,
    )
    return data, Point((), (0,) * n)
