"""Worst-case cost of a subgraph, its ``dmax`` surrogate, and ratio reports."""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .model import (
    CapacityError,
    Edge,
    InputError,
    Instance,
    Scenario,
    norm_edge,
    tolerance,
)

DEFAULT_ORACLE_CAP = 10**7
CAP_ENV_VAR = "ROBUST_LOCUS_ORACLE_CAP"
_CHUNK = 1 << 18

# Upper bounds on c_max / c by structure of the evaluated subgraph.
FAMILY_BOUNDS: dict[str, float] = {
    "general": 9.0,
    "ptolemaic": 4.0,
    "path": 2.0,
    "cycle": 2.0,
    "clique": 2.0,
    "star_ptolemaic": 2.0,
    "star": 3.0,
    "tree": 6.0,
    "matching": 1.0,
    "triangle": 1.5,
}

EdgeSubgraph = tuple[Edge, ...]


def oracle_cap() -> int:
    raw = os.environ.get(CAP_ENV_VAR)
    if raw is None:
        return DEFAULT_ORACLE_CAP
    try:
        return int(float(raw))
    except ValueError:
        raise InputError(f"{CAP_ENV_VAR} must be a number, got {raw!r}") from None


def subgraph(instance: Instance, edges: Iterable[Sequence[int]]) -> EdgeSubgraph:
    """Normalize ``edges`` and check each one belongs to the host graph."""
    out = []
    for e in edges:
        i, j = int(e[0]), int(e[1])
        if not (0 <= i < instance.n and 0 <= j < instance.n) or not instance.graph.has_edge(i, j):
            raise InputError(f"edge {(i, j)} is not in the host graph")
        out.append(norm_edge(i, j))
    return tuple(out)


def path_edges(vertices: Sequence[int]) -> EdgeSubgraph:
    return tuple(norm_edge(a, b) for a, b in zip(vertices, vertices[1:]))


def scenario_cost(instance: Instance, sub: Iterable[Edge], u: Scenario) -> float:
    choice = u.choice
    total = 0.0
    for i, j in sub:
        if max(i, j) >= len(choice) or choice[i] is None or choice[j] is None:
            raise InputError(f"scenario has no position for an endpoint of edge {(i, j)}")
        for v in (i, j):
            if choice[v] not in instance.positions(v):
                raise InputError(f"point {choice[v]} is not a candidate position of vertex {v}")
        total += instance.metric.d(choice[i], choice[j])
    return total


def worst_case_cost(
    instance: Instance, sub: Iterable[Edge], cap: int | None = None
) -> tuple[float, Scenario]:
    """Exact ``max_u c(u, sub)`` by enumerating positions of incident vertices.

    Vertices not touched by ``sub`` stay at their first candidate.  Among
    maximizing scenarios the lexicographically smallest tuple of position
    indices (vertices in ascending order) is returned.
    """
    edges = tuple(sub)
    cap = oracle_cap() if cap is None else cap
    verts = sorted({v for e in edges for v in e})
    sizes = [len(instance.positions(v)) for v in verts]
    total = math.prod(sizes)
    if total > cap:
        raise CapacityError(f"scenario product {total} exceeds enumeration cap {cap}")
    slot = {v: k for k, v in enumerate(verts)}
    tables = [(slot[i], slot[j], instance.pair_table(i, j)) for i, j in edges]

    best_val, best_idx = -math.inf, 0
    for start in range(0, total, _CHUNK):
        idx = np.arange(start, min(total, start + _CHUNK))
        digits = np.unravel_index(idx, sizes) if sizes else ()
        vals = np.zeros(len(idx))
        for a, b, w in tables:
            vals += w[digits[a], digits[b]]
        k = int(np.argmax(vals))
        if vals[k] > best_val:
            best_val, best_idx = float(vals[k]), start + k

    choice = [instance.positions(v)[0] for v in range(instance.n)]
    if sizes:
        for v, d in zip(verts, np.unravel_index(best_idx, sizes)):
            choice[v] = instance.positions(v)[int(d)]
    return max(best_val, 0.0), Scenario(tuple(choice))


def path_worst_case_cost(instance: Instance, vertices: Sequence[int]) -> float:
    """Worst-case cost of a simple path, exactly, in ``O(len * sigma^2)``.

    Along a chain the adversary's choices only interact through consecutive
    vertices, so a backward max-plus sweep replaces the full enumeration.
    """
    if len(set(vertices)) != len(vertices):
        raise InputError("path revisits a vertex")
    if len(vertices) < 2:
        return 0.0
    prof = np.zeros(len(instance.positions(vertices[-1])))
    for a, b in zip(vertices[-2::-1], vertices[:0:-1]):
        if not instance.graph.has_edge(a, b):
            raise InputError(f"edge {(a, b)} is not in the host graph")
        prof = (instance.pair_table(a, b) + prof[None, :]).max(axis=1)
    return float(prof.max())


def cmax_cost(instance: Instance, sub: Iterable[Edge]) -> float:
    table = instance.dmax_table
    return float(sum(table[i, j] for i, j in sub))


@dataclass(frozen=True)
class RatioReport:
    family: str
    c_max: float
    c: float
    ratio: float
    bound: float

    @property
    def tight(self) -> bool:
        return abs(self.ratio - self.bound) <= 1e-9

    @property
    def ok(self) -> bool:
        return self.ratio <= self.bound + 1e-9

    def csv_row(self) -> str:
        return (
            f"{self.family},{self.c_max:.9f},{self.c:.9f},{self.ratio:.9f},"
            f"{self.bound:.9f},{str(self.tight).lower()}"
        )


def ratio_of(c_max: float, c: float) -> float:
    if c == 0.0:
        # zero worst case forces every dmax on the subgraph to vanish too
        assert c_max <= tolerance(c_max), f"c_max={c_max} with zero worst-case cost"
        return 1.0
    return c_max / c


def ratio_report(
    instance: Instance, sub: Iterable[Edge], family: str = "general", cap: int | None = None
) -> RatioReport:
    if family not in FAMILY_BOUNDS:
        raise InputError(f"unknown family tag {family!r}; expected one of {sorted(FAMILY_BOUNDS)}")
    edges = tuple(sub)
    cm = cmax_cost(instance, edges)
    c, _ = worst_case_cost(instance, edges, cap)
    return RatioReport(family, cm, c, ratio_of(cm, c), FAMILY_BOUNDS[family])
