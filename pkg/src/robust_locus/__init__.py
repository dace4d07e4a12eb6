"""Min-max optimization on graphs whose vertices have uncertain locations."""

from .approx import (
    Solution,
    certified_bound,
    geometric_median_positions,
    solve_via_dmax,
    solve_via_representative,
)
from .cost import (
    FAMILY_BOUNDS,
    RatioReport,
    cmax_cost,
    path_worst_case_cost,
    ratio_report,
    scenario_cost,
    worst_case_cost,
)
from .dp import dp_tables, extend_profile, solve_exact
from .fptas import RoundingContext, round_distances, seed_upper_bound, solve_fptas
from .model import (
    CapacityError,
    Graph,
    InfeasibleError,
    InputError,
    Instance,
    MetricSpace,
    Problem,
    Scenario,
    UncertaintySet,
    UnsupportedError,
    check_ptolemy,
    diameter,
    dmax,
    dmax_metric,
)

__all__ = [
    "CapacityError",
    "FAMILY_BOUNDS",
    "Graph",
    "InfeasibleError",
    "InputError",
    "Instance",
    "MetricSpace",
    "Problem",
    "RatioReport",
    "RoundingContext",
    "Scenario",
    "Solution",
    "UncertaintySet",
    "UnsupportedError",
    "certified_bound",
    "check_ptolemy",
    "cmax_cost",
    "diameter",
    "dmax",
    "dmax_metric",
    "dp_tables",
    "extend_profile",
    "geometric_median_positions",
    "path_worst_case_cost",
    "ratio_report",
    "round_distances",
    "scenario_cost",
    "seed_upper_bound",
    "solve_exact",
    "solve_fptas",
    "solve_via_dmax",
    "solve_via_representative",
    "worst_case_cost",
]
