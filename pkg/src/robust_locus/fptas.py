"""(1+eps)-approximate robust shortest path.

A 2-approximate path from the dmax reduction gives ``A`` with
``OPT <= A <= 2 OPT``.  Distances are rounded up to integer multiples of
``quantum = eps' * A`` with ``eps' = eps / (2n)`` and the profile DP runs on the
integer multipliers.  Any suffix whose rounded worst case exceeds
``A (1 + n eps')`` is costlier than the seed path and is discarded.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .approx import solve_via_dmax
from .cost import path_worst_case_cost
from .dp import DPStats, best_entry, int_keys, run_profile_dp
from .model import InputError, Instance, MetricSpace, Problem

_SNAP = 1e-9


@dataclass(frozen=True)
class RoundingContext:
    A: float
    eps_prime: float
    quantum: float
    good_cap: float

    @classmethod
    def build(cls, A: float, eps: float, n: int) -> RoundingContext:
        if eps <= 0:
            raise InputError(f"eps must be positive, got {eps}")
        eps_prime = eps / (2 * n)
        return cls(A, eps_prime, eps_prime * A, A * (1 + n * eps_prime))

    @property
    def cap_units(self) -> int:
        """``good_cap`` in multiples of ``quantum``: ``n + 1/eps'``."""
        return math.floor(self.good_cap / self.quantum + _SNAP)


@dataclass(frozen=True)
class FptasResult:
    path: tuple[int, ...]
    cost: float
    A: float
    quantum: float
    eps_prime: float
    rounded_cost: float
    stats: DPStats | None


def seed_upper_bound(instance: Instance, s: int, t: int) -> tuple[tuple[int, ...], float]:
    """dmax-shortest path and its exact worst-case cost ``A``."""
    path = solve_via_dmax(instance.with_problem(Problem.sp(s, t))).path
    return path, path_worst_case_cost(instance, path)


def rounded_units(dist: np.ndarray, quantum: float) -> np.ndarray:
    """Integer multipliers ``ceil(D / quantum)``; exact multiples stay put."""
    if quantum <= 0:
        raise InputError("quantum must be positive")
    return np.maximum(np.ceil(dist / quantum - _SNAP), 0).astype(np.int64)


def round_distances(instance: Instance, ctx: RoundingContext) -> Instance:
    units = rounded_units(instance.metric.dist, ctx.quantum)
    metric = MetricSpace(units * ctx.quantum, flavor="gen", kind="explicit", check=False)
    return instance.with_metric(metric)


def _chain_units(units: np.ndarray, instance: Instance, path: tuple[int, ...]) -> int:
    prof = np.zeros(len(instance.positions(path[-1])), dtype=np.int64)
    for a, b in zip(path[-2::-1], path[:0:-1]):
        w = units[np.ix_(instance.positions(a), instance.positions(b))]
        prof = (w + prof[None, :]).max(axis=1)
    return int(prof.max())


def solve_fptas(
    instance: Instance, s: int | None = None, t: int | None = None, eps: float = 0.5
) -> FptasResult:
    s = instance.problem.s if s is None else s
    t = instance.problem.t if t is None else t
    if s is None or t is None:
        raise InputError("shortest path needs s and t")
    if not eps > 0:
        raise InputError(f"eps must be positive, got {eps}")
    seed, A = seed_upper_bound(instance, s, t)
    if A == 0.0:
        # the seed already costs nothing in every scenario
        return FptasResult(seed, 0.0, 0.0, 0.0, 0.0, 0.0, None)
    ctx = RoundingContext.build(A, eps, instance.n)
    units = rounded_units(instance.metric.dist, ctx.quantum)
    # float noise in the ceiling must never make the seed look useless
    cap = max(ctx.cap_units, _chain_units(units, instance, seed))

    def weight(i: int, j: int) -> np.ndarray:
        return units[np.ix_(instance.positions(i), instance.positions(j))]

    def keep(ys: np.ndarray) -> np.ndarray:
        return ys.max(axis=1) <= cap

    sizes = [len(u) for u in instance.uncertainty]
    table, stats = run_profile_dp(
        instance.graph, sizes, s, t, weight, keys=int_keys, keep=keep, dtype=np.int64
    )
    _, entry = best_entry(table)
    return FptasResult(
        entry.path,
        path_worst_case_cost(instance, entry.path),
        A,
        ctx.quantum,
        ctx.eps_prime,
        max(entry.values) * ctx.quantum,
        stats,
    )
