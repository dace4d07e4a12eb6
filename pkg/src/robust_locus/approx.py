"""Reduction of robust problems to deterministic ones.

``solve_via_dmax`` replaces every uncertain edge length by its worst case
``dmax`` and runs an ordinary solver; if that solver is a rho1-approximation
and ``c_max <= rho2 * c`` on the feasible family, the result is a
rho1*rho2-approximation of the robust optimum.

``solve_via_representative`` instead fixes one position per vertex (e.g. the
in-set geometric median).  It is kept as a comparator: its ratio to the
optimum is unbounded.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .cost import FAMILY_BOUNDS, EdgeSubgraph, cmax_cost, path_edges
from .model import Edge, InputError, Instance, Scenario
from .solvers import (
    WeightedGraphView,
    minimum_spanning_tree,
    select_candidate,
    shortest_path,
    tsp_double_tree,
)

# approximation factor of the built-in deterministic solver per problem type
SOLVER_FACTOR = {"sp": 1.0, "mst": 1.0, "tsp": 2.0, "evaluate": 1.0}


@dataclass(frozen=True)
class Solution:
    edges: EdgeSubgraph
    c_max: float
    path: tuple[int, ...] | None = None


def certified_bound(problem: str, family: str | None = None) -> float:
    """rho1 * rho2 for the built-in solver and the family's c_max/c bound."""
    tag = family or "general"
    if tag not in FAMILY_BOUNDS:
        raise InputError(f"unknown family tag {tag!r}")
    return SOLVER_FACTOR[problem] * FAMILY_BOUNDS[tag]


def _solve_on(
    instance: Instance,
    weight: np.ndarray,
    candidates: Sequence[Sequence[Edge]] | None,
) -> tuple[EdgeSubgraph, tuple[int, ...] | None]:
    view = WeightedGraphView(instance.graph, weight)
    pb = instance.problem
    if candidates is not None:
        return tuple(candidates[select_candidate(view, candidates)]), None
    if pb.kind == "sp":
        path = shortest_path(view, pb.s, pb.t)
        return path_edges(path), path
    if pb.kind == "mst":
        return minimum_spanning_tree(view), None
    if pb.kind == "tsp":
        return tsp_double_tree(view), None
    raise InputError("evaluate instances need an explicit candidate family to solve")


def solve_via_dmax(
    instance: Instance, candidates: Sequence[Sequence[Edge]] | None = None
) -> Solution:
    edges, path = _solve_on(instance, np.asarray(instance.dmax_table), candidates)
    return Solution(edges, cmax_cost(instance, edges), path)


def geometric_median_positions(instance: Instance) -> Scenario:
    """Per vertex, the candidate minimizing total distance to the other candidates."""
    choice = []
    for u in instance.uncertainty:
        pos = list(u.positions)
        sums = instance.metric.dist[np.ix_(pos, pos)].sum(axis=1)
        choice.append(pos[int(np.argmin(sums))])
    return Scenario(tuple(choice))


def solve_via_representative(
    instance: Instance,
    u: Scenario,
    candidates: Sequence[Sequence[Edge]] | None = None,
) -> Solution:
    if len(u.choice) != instance.n:
        raise InputError("representative scenario needs one position per vertex")
    for v, p in enumerate(u.choice):
        if p not in instance.positions(v):
            raise InputError(f"point {p} is not a candidate of vertex {v}")
    pts = list(u.choice)
    weight = instance.metric.dist[np.ix_(pts, pts)]
    edges, path = _solve_on(instance, weight, candidates)
    return Solution(edges, cmax_cost(instance, edges), path)
