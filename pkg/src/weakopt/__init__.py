"""Decide weak optimality of a point for an interval linear program, with certificates."""

__version__ = "0.1.0"

from .feasibility import (RowInfeasibleAtPoint, RowKind, check_point_weak_feasibility,
                          complete_row_scenario)
from .intervals import Interval, IntervalError, IntervalMatrix, interval_dot, interval_scale
from .linsolve import (LinearSystem, SolveResult, SolveTag, solve_feasibility, solve_lp,
                       verify_optimal)
from .model import IlpData, Point, Scenario, Stats, Verdict, VerdictTag, Witness, scenario_contains
from .optimality import (TestingSystem, build_testing_system_ineq, build_testing_system_orthant,
                         decide_weak_optimality, extract_witness, verify_witness)
from .oracle import BudgetExceeded, OracleResult, corner_grid_oracle, weak_feasibility_system_bruteforce
from .reduction import reduce_weak_feasibility_to_weak_optimality

__all__ = [
    "BudgetExceeded", "IlpData", "Interval", "IntervalError", "IntervalMatrix", "LinearSystem",
    "OracleResult", "Point", "RowInfeasibleAtPoint", "RowKind", "Scenario", "SolveResult",
    "SolveTag", "Stats", "TestingSystem", "Verdict", "VerdictTag", "Witness",
    "build_testing_system_ineq", "build_testing_system_orthant", "check_point_weak_feasibility",
    "complete_row_scenario", "corner_grid_oracle", "decide_weak_optimality", "extract_witness",
    "interval_dot", "interval_scale", "reduce_weak_feasibility_to_weak_optimality",
    "scenario_contains", "solve_feasibility", "solve_lp", "verify_optimal", "verify_witness",
    "weak_feasibility_system_bruteforce",
]
