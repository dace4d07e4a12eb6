"""Deterministic solvers on a fixed edge weighting.

These are the plug-in algorithms for the dmax reduction: exact shortest path
(Dijkstra), exact minimum spanning tree (Kruskal) and the double-tree
2-approximation for metric TSP.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .model import Edge, Graph, InfeasibleError, InputError, norm_edge


@dataclass(frozen=True)
class WeightedGraphView:
    graph: Graph
    weight: np.ndarray  # n x n, only entries on graph edges are read

    def __post_init__(self) -> None:
        w = np.asarray(self.weight, dtype=float)
        n = self.graph.n
        if w.shape != (n, n):
            raise InputError(f"weight table must be {n}x{n}, got {w.shape}")
        for i, j in self.graph.edges:
            if not w[i, j] >= 0 or w[i, j] != w[j, i]:
                raise InputError(f"edge {(i, j)} needs a symmetric nonnegative weight")
        object.__setattr__(self, "weight", w)

    def w(self, i: int, j: int) -> float:
        return float(self.weight[i, j])

    def total(self, edges: Sequence[Edge]) -> float:
        return float(sum(self.weight[i, j] for i, j in edges))


def shortest_path(view: WeightedGraphView, s: int, t: int) -> tuple[int, ...]:
    """Min-weight s-t path as a vertex sequence.

    Labels are ``(length, vertex sequence)`` so exact length ties resolve to
    the lexicographically smallest sequence.
    """
    g = view.graph
    if not (0 <= s < g.n and 0 <= t < g.n):
        raise InputError(f"endpoints ({s}, {t}) out of range")
    heap: list[tuple[float, tuple[int, ...]]] = [(0.0, (s,))]
    done: set[int] = set()
    while heap:
        dist, seq = heapq.heappop(heap)
        v = seq[-1]
        if v in done:
            continue
        done.add(v)
        if v == t:
            return seq
        for w in g.neighbors(v):
            if w not in done:
                heapq.heappush(heap, (dist + view.w(v, w), seq + (w,)))
    raise InfeasibleError(f"vertex {t} is unreachable from {s}")


class _DisjointSets:
    def __init__(self, n: int) -> None:
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        self.parent[max(ra, rb)] = min(ra, rb)
        return True


def minimum_spanning_tree(view: WeightedGraphView) -> tuple[Edge, ...]:
    """Kruskal; equal weights are taken in the host graph's edge order."""
    g = view.graph
    order = sorted(range(len(g.edges)), key=lambda k: (view.w(*g.edges[k]), k))
    sets = _DisjointSets(g.n)
    tree = []
    for k in order:
        i, j = g.edges[k]
        if sets.union(i, j):
            tree.append((i, j))
    if len(tree) != max(g.n - 1, 0):
        raise InfeasibleError("graph is disconnected; no spanning tree")
    return tuple(tree)


def tsp_double_tree(view: WeightedGraphView) -> tuple[Edge, ...]:
    """Hamiltonian cycle from the preorder walk of an MST rooted at 0.

    Weight is at most twice the MST, hence twice the optimal tour, when the
    weights obey the triangle inequality.
    """
    g = view.graph
    n = g.n
    if n < 3:
        raise InputError("a tour needs at least 3 vertices")
    if len(g.edges) != n * (n - 1) // 2:
        raise InputError("double-tree TSP needs a complete graph")
    tree = minimum_spanning_tree(view)
    adj: list[list[int]] = [[] for _ in range(n)]
    for i, j in tree:
        adj[i].append(j)
        adj[j].append(i)
    order = []
    stack = [(0, -1)]
    while stack:
        v, parent = stack.pop()
        order.append(v)
        kids = sorted(w for w in adj[v] if w != parent)
        stack.extend((w, v) for w in reversed(kids))
    return tuple(norm_edge(a, b) for a, b in zip(order, order[1:] + order[:1]))


def select_candidate(view: WeightedGraphView, candidates: Sequence[Sequence[Edge]]) -> int:
    """Index of the lightest subgraph in an explicitly listed family."""
    if not candidates:
        raise InfeasibleError("empty candidate family")
    weights = [view.total(c) for c in candidates]
    return min(range(len(weights)), key=lambda k: (weights[k], k))
