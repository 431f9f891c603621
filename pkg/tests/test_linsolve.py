import random
from fractions import Fraction

import pytest

from weakopt.linsolve import (LinearSystem, MalformedSystem, SolveTag, solve_feasibility,
                              solve_lp, verify_optimal)

from bruteforce import degenerate_system, lp_min, random_bounded_system, vertices


def box():
    sys = LinearSystem()
    v = sys.add_var("v")
    sys.add_le({v: 1}, 1)
    return sys


def test_feasibility_box():
    res = solve_feasibility(box())
    assert res.tag is SolveTag.FEASIBLE
    assert res.assignment == (0,)


def test_feasibility_contradiction():
    sys = LinearSystem()
    v = sys.add_var("v", lower=None)
    sys.add_ge({v: 1}, 1)
    sys.add_le({v: 1}, 0)
    assert solve_feasibility(sys).tag is SolveTag.INFEASIBLE


def test_lp_bounded_and_unbounded():
    sys = LinearSystem()
    v = sys.add_var("v", lower=None)
    sys.add_ge({v: 1}, 3)
    res = solve_lp(sys, [1])
    assert res.optimum == 3 and res.assignment == (3,)
    sys = LinearSystem()
    v = sys.add_var("v", lower=None)
    sys.add_le({v: 1}, 0)
    assert solve_lp(sys, [1]).tag is SolveTag.UNBOUNDED
    assert solve_lp(sys, [1], "max").optimum == 0


def scenario_lp_two_col(an):
    sys = LinearSystem()
    sys.add_var("x1")
    sys.add_var("x2")
    sys.add_eq(an, 2)
    return sys


def test_two_col_scenario_lps():
    sys = scenario_lp_two_col([0, 2])
    res = solve_lp(sys, [0, 1])
    assert res.optimum == 1
    assert verify_optimal(sys, [0, 1], [1, 1])


def test_two_col_other_scenario_not_optimal():
    sys = scenario_lp_two_col([1, 1])
    # independent check: vertices are (2,0) and (0,2)
    assert vertices(sys) == [(0, 2), (2, 0)]
    assert lp_min(sys, [0, 1]) == 0
    assert not verify_optimal(sys, [0, 1], [1, 1])


def test_verify_optimal_rejects_infeasible_point():
    assert not verify_optimal(box(), [1], [2])


def test_verify_optimal_unbounded_is_false():
    sys = LinearSystem()
    v = sys.add_var("v", lower=None)
    assert not verify_optimal(sys, [1], [0])


def test_malformed_rows():
    sys = LinearSystem()
    sys.add_var("v")
    with pytest.raises(MalformedSystem):
        sys.add_le([1, 2], 0)
    with pytest.raises(MalformedSystem):
        sys.add_le({3: 1}, 0)
    with pytest.raises(MalformedSystem):
        solve_lp(sys, [1, 1])


def test_duplicate_names_rejected():
    sys = LinearSystem()
    sys.add_var("v")
    sys.add_var("v")
    with pytest.raises(MalformedSystem):
        solve_feasibility(sys)


def test_empty_system():
    assert solve_feasibility(LinearSystem()).feasible
    sys = LinearSystem()
    sys.add_le({}, -1)
    assert not solve_feasibility(sys).feasible


def test_lower_bounds_shift():
    sys = LinearSystem()
    v = sys.add_var("v", lower=Fraction(-7, 2))
    res = solve_lp(sys, [1])
    assert res.optimum == Fraction(-7, 2)


@pytest.mark.parametrize("seed", range(60))
def test_agrees_with_vertex_enumeration(seed):
    rng = random.Random(seed)
    sys = random_bounded_system(rng)
    obj = [Fraction(rng.randint(-3, 3)) for _ in range(sys.num_vars)]
    expected = lp_min(sys, obj)
    res = solve_lp(sys, obj)
    feas = solve_feasibility(sys)
    if expected is None:
        assert res.tag is SolveTag.INFEASIBLE and not feas.feasible
    else:
        assert res.optimum == expected
        assert sys.satisfied_by(res.assignment)
        assert sys.satisfied_by(feas.assignment)


@pytest.mark.parametrize("seed", range(20))
def test_degenerate_systems_terminate(seed):
    rng = random.Random(1000 + seed)
    sys = degenerate_system(rng)
    obj = [Fraction(rng.randint(-3, 3)) for _ in range(sys.num_vars)]
    res = solve_lp(sys, obj)
    assert res.optimum == lp_min(sys, obj)


def test_deterministic():
    rng = random.Random(7)
    sys = random_bounded_system(rng)
    obj = [1] * sys.num_vars
    assert solve_lp(sys, obj) == solve_lp(sys, obj)
    assert solve_feasibility(sys) == solve_feasibility(sys)
