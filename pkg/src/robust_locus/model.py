"""Graphs, metric spaces and uncertainty sets.

Vertices of the host graph live at uncertain positions: vertex ``i`` may sit
at any point of its uncertainty set.  The derived worst-case distance
``dmax(i, j)`` is the largest distance between any two candidate positions.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import dijkstra

ABS_TOL = 1e-9
FULL_TRIANGLE_CHECK_MAX = 300
SAMPLED_TRIPLES = 1_000_000

Edge = tuple[int, int]


class InputError(ValueError):
    """Malformed or inconsistent input."""


class InfeasibleError(Exception):
    """No feasible solution exists (e.g. target unreachable)."""


class CapacityError(Exception):
    """Exhaustive enumeration would exceed the configured cap."""


class UnsupportedError(Exception):
    """Operation not defined for this kind of input."""


def tolerance(scale: float) -> float:
    return ABS_TOL * max(1.0, float(scale))


def norm_edge(i: int, j: int) -> Edge:
    return (i, j) if i < j else (j, i)


@dataclass(frozen=True)
class Graph:
    n: int
    edges: tuple[Edge, ...]
    adjacency: tuple[tuple[int, ...], ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        if self.n < 0:
            raise InputError(f"negative vertex count {self.n}")
        seen: set[Edge] = set()
        normalized = []
        for e in self.edges:
            i, j = (int(x) for x in e)
            if not (0 <= i < self.n and 0 <= j < self.n):
                raise InputError(f"edge {e} has a vertex outside [0, {self.n})")
            if i == j:
                raise InputError(f"self-loop at vertex {i}")
            ne = norm_edge(i, j)
            if ne in seen:
                raise InputError(f"duplicate edge {ne}")
            seen.add(ne)
            normalized.append(ne)
        object.__setattr__(self, "edges", tuple(normalized))
        adj: list[list[int]] = [[] for _ in range(self.n)]
        for i, j in normalized:
            adj[i].append(j)
            adj[j].append(i)
        object.__setattr__(self, "adjacency", tuple(tuple(sorted(a)) for a in adj))

    def neighbors(self, i: int) -> tuple[int, ...]:
        return self.adjacency[i]

    def has_edge(self, i: int, j: int) -> bool:
        return j in self.adjacency[i]

    @property
    def max_degree(self) -> int:
        return max((len(a) for a in self.adjacency), default=0)

    @classmethod
    def complete(cls, n: int) -> Graph:
        return cls(n, tuple(itertools.combinations(range(n), 2)))


class MetricSpace:
    """A finite point universe with a symmetric nonnegative distance table.

    ``flavor`` is ``"metric"`` when the triangle inequality must hold (checked
    at construction) or ``"gen"`` for an arbitrary symmetric table.  ``kind``
    records how the table was produced so it can be written back out.
    """

    def __init__(
        self,
        dist: np.ndarray | Sequence[Sequence[float]],
        *,
        flavor: str = "metric",
        kind: str = "explicit",
        coords: np.ndarray | None = None,
        weighted_edges: Sequence[tuple[int, int, float]] | None = None,
        check: bool = True,
    ) -> None:
        if flavor not in ("metric", "gen"):
            raise InputError(f"unknown metric flavor {flavor!r}")
        table = np.array(dist, dtype=float)
        if table.ndim != 2 or table.shape[0] != table.shape[1]:
            raise InputError(f"distance table must be square, got shape {table.shape}")
        if not np.all(np.isfinite(table)):
            raise InputError("distance table has non-finite entries")
        if np.any(table < 0):
            raise InputError("distance table has negative entries")
        if not np.array_equal(table, table.T):
            raise InputError("distance table is not symmetric")
        if np.any(np.diag(table) != 0):
            raise InputError("distance table has nonzero diagonal")
        table.setflags(write=False)
        self.dist = table
        self.flavor = flavor
        self.kind = kind
        self.coords = None if coords is None else np.array(coords, dtype=float)
        self.weighted_edges = None if weighted_edges is None else tuple(
            (int(a), int(b), float(w)) for a, b, w in weighted_edges
        )
        if check and flavor == "metric":
            bad = find_triangle_violation(table)
            if bad is not None:
                a, b, c = bad
                raise InputError(
                    f"triangle inequality fails: d({a},{c})={table[a, c]} > "
                    f"d({a},{b})+d({b},{c})={table[a, b] + table[b, c]}"
                )

    @classmethod
    def euclidean(cls, points: Sequence[Sequence[float]]) -> MetricSpace:
        pts = np.array(points, dtype=float)
        if pts.ndim == 1:
            pts = pts[:, None]
        if pts.ndim != 2:
            raise InputError("euclidean points must be a list of coordinate vectors")
        diff = pts[:, None, :] - pts[None, :, :]
        table = np.sqrt((diff**2).sum(axis=2))
        # sqrt of a symmetric sum is symmetric bit-for-bit, but enforce it anyway
        table = np.maximum(table, table.T)
        return cls(table, flavor="metric", kind="euclidean", coords=pts, check=False)

    @classmethod
    def explicit(cls, matrix: Sequence[Sequence[float]], flavor: str = "metric") -> MetricSpace:
        return cls(matrix, flavor=flavor, kind="explicit")

    @classmethod
    def graph_induced(
        cls, nodes: int, weighted_edges: Sequence[tuple[int, int, float]]
    ) -> MetricSpace:
        """Shortest-path closure of an auxiliary weighted graph."""
        if nodes <= 0:
            raise InputError("graph metric needs at least one node")
        rows, cols, vals = [], [], []
        for a, b, w in weighted_edges:
            if not (0 <= a < nodes and 0 <= b < nodes) or a == b:
                raise InputError(f"bad weighted edge {(a, b, w)}")
            if w <= 0:
                raise InputError(f"weighted edge {(a, b)} needs positive length, got {w}")
            rows += [a, b]
            cols += [b, a]
            vals += [w, w]
        adj = csr_matrix((vals, (rows, cols)), shape=(nodes, nodes))
        table = dijkstra(adj, directed=False)
        if not np.all(np.isfinite(table)):
            raise InputError("auxiliary graph is disconnected")
        table = np.minimum(table, table.T)
        return cls(
            table, flavor="metric", kind="graph", weighted_edges=weighted_edges, check=False
        )

    @property
    def size(self) -> int:
        return self.dist.shape[0]

    def d(self, p: int, q: int) -> float:
        return float(self.dist[p, q])

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MetricSpace):
            return NotImplemented
        return (
            self.flavor == other.flavor
            and self.kind == other.kind
            and np.array_equal(self.dist, other.dist)
            and self.weighted_edges == other.weighted_edges
            and (
                (self.coords is None and other.coords is None)
                or (
                    self.coords is not None
                    and other.coords is not None
                    and np.array_equal(self.coords, other.coords)
                )
            )
        )

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        return f"MetricSpace(kind={self.kind!r}, flavor={self.flavor!r}, size={self.size})"


def find_triangle_violation(table: np.ndarray, seed: int = 0) -> tuple[int, int, int] | None:
    """Return ``(a, b, c)`` with ``d(a,c) > d(a,b) + d(b,c)`` or None.

    All triples are checked up to ``FULL_TRIANGLE_CHECK_MAX`` points; beyond that
    a fixed-seed sample of ``SAMPLED_TRIPLES`` triples is tested.
    """
    size = table.shape[0]
    if size < 3:
        return None
    tol = tolerance(table.max())
    if size <= FULL_TRIANGLE_CHECK_MAX:
        for b in range(size):
            # via[a, c] = d(a,b) + d(b,c)
            via = table[:, b][:, None] + table[b, :][None, :]
            bad = np.argwhere(table > via + tol)
            if len(bad):
                a, c = bad[0]
                return int(a), b, int(c)
        return None
    rng = np.random.default_rng(seed)
    trip = rng.integers(0, size, size=(SAMPLED_TRIPLES, 3))
    a, b, c = trip[:, 0], trip[:, 1], trip[:, 2]
    bad = np.nonzero(table[a, c] > table[a, b] + table[b, c] + tol)[0]
    if len(bad):
        k = bad[0]
        return int(a[k]), int(b[k]), int(c[k])
    return None


@dataclass(frozen=True)
class UncertaintySet:
    vertex: int
    positions: tuple[int, ...]

    def __post_init__(self) -> None:
        deduped = tuple(dict.fromkeys(int(p) for p in self.positions))
        if not deduped:
            raise InputError(f"vertex {self.vertex} has an empty uncertainty set")
        object.__setattr__(self, "positions", deduped)

    def __len__(self) -> int:
        return len(self.positions)


@dataclass(frozen=True)
class Problem:
    """What is being asked of an instance: ``sp``, ``mst``, ``tsp`` or ``evaluate``."""

    kind: str
    s: int | None = None
    t: int | None = None
    edge_set: tuple[Edge, ...] = ()

    def __post_init__(self) -> None:
        if self.kind not in ("sp", "mst", "tsp", "evaluate"):
            raise InputError(f"unknown problem type {self.kind!r}")
        object.__setattr__(self, "edge_set", tuple(norm_edge(int(i), int(j)) for i, j in self.edge_set))

    @classmethod
    def sp(cls, s: int, t: int) -> Problem:
        return cls("sp", s=s, t=t)

    @classmethod
    def evaluate(cls, edges: Iterable[Edge]) -> Problem:
        return cls("evaluate", edge_set=tuple(edges))


@dataclass(frozen=True)
class Scenario:
    """One chosen point id per vertex."""

    choice: tuple[int, ...]


@dataclass(frozen=True)
class Instance:
    graph: Graph
    metric: MetricSpace
    uncertainty: tuple[UncertaintySet, ...]
    problem: Problem = Problem("evaluate")

    def __post_init__(self) -> None:
        object.__setattr__(self, "uncertainty", tuple(self.uncertainty))
        n = self.graph.n
        if len(self.uncertainty) != n:
            raise InputError(f"expected {n} uncertainty sets, got {len(self.uncertainty)}")
        for i, u in enumerate(self.uncertainty):
            if u.vertex != i:
                raise InputError(f"uncertainty set {i} is labelled vertex {u.vertex}")
            for p in u.positions:
                if not 0 <= p < self.metric.size:
                    raise InputError(f"vertex {i} references unknown point {p}")
        pb = self.problem
        if pb.kind == "sp":
            if pb.s is None or pb.t is None:
                raise InputError("sp problem needs s and t")
            if not (0 <= pb.s < n and 0 <= pb.t < n):
                raise InputError(f"sp endpoints ({pb.s}, {pb.t}) out of range")
            if pb.s == pb.t:
                raise InputError("sp needs s != t")
        for i, j in pb.edge_set:
            if j >= n or not self.graph.has_edge(i, j):
                raise InputError(f"evaluate edge {(i, j)} is not in the graph")

    @classmethod
    def build(
        cls,
        n: int,
        edges: Iterable[Edge],
        metric: MetricSpace,
        sets: Sequence[Sequence[int]],
        problem: Problem | None = None,
    ) -> Instance:
        return cls(
            Graph(n, tuple(edges)),
            metric,
            tuple(UncertaintySet(i, tuple(s)) for i, s in enumerate(sets)),
            problem or Problem("evaluate"),
        )

    @property
    def n(self) -> int:
        return self.graph.n

    @property
    def sigma(self) -> int:
        return max((len(u) for u in self.uncertainty), default=0)

    def positions(self, i: int) -> tuple[int, ...]:
        return self.uncertainty[i].positions

    def pair_table(self, i: int, j: int) -> np.ndarray:
        """``b_i x b_j`` array of distances between candidate positions."""
        return self.metric.dist[np.ix_(self.positions(i), self.positions(j))]

    @cached_property
    def dmax_table(self) -> np.ndarray:
        n = self.n
        out = np.zeros((n, n))
        for i in range(n):
            for j in range(i + 1, n):
                out[i, j] = out[j, i] = self.pair_table(i, j).max()
        out.setflags(write=False)
        return out

    def with_problem(self, problem: Problem) -> Instance:
        return Instance(self.graph, self.metric, self.uncertainty, problem)

    def with_metric(self, metric: MetricSpace) -> Instance:
        return Instance(self.graph, metric, self.uncertainty, self.problem)


def _check_vertex(instance: Instance, i: int) -> None:
    if not isinstance(i, (int, np.integer)) or not 0 <= i < instance.n:
        raise InputError(f"invalid vertex id {i!r}")


def dmax(instance: Instance, i: int, j: int) -> float:
    """Largest distance between a candidate position of ``i`` and one of ``j``."""
    _check_vertex(instance, i)
    _check_vertex(instance, j)
    if i == j:
        raise InputError("dmax needs two distinct vertices")
    return float(instance.dmax_table[i, j])


def dmax_metric(instance: Instance) -> MetricSpace:
    """Metric over the vertices themselves with ``dist(i, j) = dmax(i, j)``.

    When the base table satisfies the triangle inequality so does this one, so
    it is built with flavor ``metric``.
    """
    flavor = instance.metric.flavor
    return MetricSpace(instance.dmax_table, flavor=flavor, kind="explicit", check=False)


def diameter(uset: UncertaintySet, metric: MetricSpace) -> tuple[float, int, int]:
    pos = uset.positions
    best = (0.0, pos[0], pos[0])
    for a, b in itertools.combinations(pos, 2):
        d = metric.d(a, b)
        if d > best[0]:
            best = (d, a, b)
    return best


@dataclass(frozen=True)
class PtolemyViolation:
    """Quadruple where one product of diagonals beats the sum of the other two."""

    points: tuple[int, int, int, int]
    diagonals: tuple[Edge, Edge]
    lhs: float
    rhs: float


def check_ptolemy(metric: MetricSpace) -> list[PtolemyViolation]:
    """Exhaustively test Ptolemy's inequality on every 4-point subset.

    For points a<b<c<d the three pair-products are
    ``d(a,b)d(c,d)``, ``d(a,c)d(b,d)`` and ``d(a,d)d(b,c)``; the space is
    Ptolemaic iff none exceeds the sum of the other two.
    """
    if metric.flavor != "metric":
        raise UnsupportedError("Ptolemy's inequality is only defined for metric tables")
    size = metric.size
    if size < 4:
        return []
    D = metric.dist
    flat = np.fromiter(
        itertools.chain.from_iterable(itertools.combinations(range(size), 4)), dtype=np.int64
    )
    q = flat.reshape(-1, 4)
    a, b, c, d = q[:, 0], q[:, 1], q[:, 2], q[:, 3]
    prods = np.stack([D[a, b] * D[c, d], D[a, c] * D[b, d], D[a, d] * D[b, c]], axis=1)
    total = prods.sum(axis=1)
    scale = np.maximum(1.0, total)
    pairings = (((0, 1), (2, 3)), ((0, 2), (1, 3)), ((0, 3), (1, 2)))
    out = []
    for k in range(3):
        rhs = total - prods[:, k]
        for idx in np.nonzero(prods[:, k] > rhs + ABS_TOL * scale)[0]:
            pts = tuple(int(x) for x in q[idx])
            (w, x), (y, z) = pairings[k]
            out.append(
                PtolemyViolation(
                    pts,  # type: ignore[arg-type]
                    ((pts[w], pts[x]), (pts[y], pts[z])),
                    float(prods[idx, k]),
                    float(rhs[idx]),
                )
            )
    out.sort(key=lambda v: v.points)
    return out
