import random

import pytest

from weakopt.intervals import Interval, IntervalMatrix
from weakopt.model import VerdictTag
from weakopt.optimality import decide_weak_optimality
from weakopt.oracle import weak_feasibility_system_bruteforce
from weakopt.reduction import reduce_weak_feasibility_to_weak_optimality as reduce_

from instances import rand_interval, rand_matrix


def test_single_feasible_row():
    data, x = reduce_(IntervalMatrix.from_rows([[1]]), [2])
    assert data.dims == (1, 0, 0, 1)
    assert data.An[0][0] == Interval(1, 1) and data.cn == (Interval(2, 2),)
    assert data.a == (Interval(0, 0),)
    assert x.xn == (0,)
    assert decide_weak_optimality(data, x).weakly_optimal


def test_constant_infeasible_row():
    Bf, b = IntervalMatrix.from_rows([[0]]), [-1]
    data, x = reduce_(Bf, b)
    assert decide_weak_optimality(data, x).tag is VerdictTag.NOT_WEAKLY_OPTIMAL
    assert not weak_feasibility_system_bruteforce(Bf, b)


def test_sign_free_coefficient():
    Bf, b = IntervalMatrix.from_rows([[[-1, 1]]]), [0]
    assert weak_feasibility_system_bruteforce(Bf, b)
    assert decide_weak_optimality(*reduce_(Bf, b)).weakly_optimal


def test_empty_system():
    data, x = reduce_(IntervalMatrix.zeros(0, 2), [])
    assert data.dims == (2, 0, 0, 0)
    assert decide_weak_optimality(data, x).weakly_optimal


@pytest.mark.parametrize("seed", range(40))
def test_shape_law(seed):
    rng = random.Random(seed)
    l, m = rng.randint(0, 3), rng.randint(0, 3)
    Bf = rand_matrix(rng, l, m)
    b = [rand_interval(rng) for _ in range(l)]
    data, x = reduce_(Bf, b)
    assert (data.k, data.n, data.m, data.l) == (m, l, 0, 0)
    assert data.An == Bf.transpose()
    assert data.cn == tuple(b)


@pytest.mark.parametrize("seed", range(120))
def test_round_trip_against_orthant_bruteforce(seed):
    rng = random.Random(100 + seed)
    l, m = rng.randint(0, 3), rng.randint(0, 3)
    Bf = rand_matrix(rng, l, m)
    # push right-hand sides down so both answers occur
    b = [Interval(iv.lo - 5, iv.hi - 5) for iv in (rand_interval(rng) for _ in range(l))]
    data, x = reduce_(Bf, b)
    assert decide_weak_optimality(data, x).weakly_optimal == weak_feasibility_system_bruteforce(Bf, b)
