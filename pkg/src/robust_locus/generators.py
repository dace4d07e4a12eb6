"""Tight instances for each structural bound, plus seeded random instances."""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .model import Edge, InputError, Instance, MetricSpace, Problem

FAMILIES = ("path", "cycle", "tree", "star", "clique", "matching", "general-connected")
METRIC_KINDS = ("euclidean2d", "graph-induced", "random-metric-closure")
SP_METRIC_KINDS = METRIC_KINDS + ("random-gen",)


def _evaluate_all(n: int, edges: list[Edge], metric: MetricSpace, sets) -> Instance:
    return Instance.build(n, edges, metric, sets, Problem.evaluate(edges))


def path_graph_edges(n: int) -> list[Edge]:
    return [(i, i + 1) for i in range(n - 1)]


def cycle_graph_edges(n: int) -> list[Edge]:
    return path_graph_edges(n) + [(0, n - 1)]


def gen_tight_path(n: int) -> Instance:
    """Path whose c_max is exactly twice its worst-case cost.

    On a line: the first vertex sits at 0, the second at 0 or 1, every other
    vertex at 1.  Problem is ``sp`` between the two ends.
    """
    if n < 3:
        raise InputError("tight path needs n >= 3")
    metric = MetricSpace.euclidean([[0.0], [1.0]])
    sets = [[0], [0, 1]] + [[1]] * (n - 2)
    return Instance.build(n, path_graph_edges(n), metric, sets, Problem.sp(0, n - 1))


def gen_tight_cycle(n: int) -> Instance:
    if n < 4:
        raise InputError("tight cycle needs n >= 4; a triangle's bound is 3/2 (see gen_tight_triangle)")
    metric = MetricSpace.euclidean([[0.0], [1.0]])
    sets = [[0], [0, 1], [1], [0, 1]] + [[0]] * (n - 4)
    return _evaluate_all(n, cycle_graph_edges(n), metric, sets)


def gen_tight_triangle() -> Instance:
    """3-cycle on the tight-path sets: c_max = 3, c = 2."""
    metric = MetricSpace.euclidean([[0.0], [1.0]])
    return _evaluate_all(3, cycle_graph_edges(3), metric, [[0], [0, 1], [1]])


def gen_tight_clique(k: int) -> Instance:
    """K_k with every vertex at 0 or 1; the worst case is a maximum cut."""
    if k < 2:
        raise InputError("clique needs k >= 2")
    metric = MetricSpace.euclidean([[0.0], [1.0]])
    edges = list(itertools.combinations(range(k), 2))
    return _evaluate_all(k, edges, metric, [[0, 1]] * k)


def gen_tight_star(n: int) -> Instance:
    """Star on ``n`` vertices with ratio ``3(n-1)/(n+1)``.

    The centre has one candidate ``c_k`` per leaf ``k``; leaf ``k`` has a single
    point ``l_k``.  ``d(c_k, l_k) = 1``, ``d(c_j, l_k) = 1/3`` otherwise, and
    distinct centre candidates (or distinct leaves) are ``2/3`` apart.
    """
    if n < 3:
        raise InputError("tight star needs n >= 3")
    m = n - 1
    D = np.zeros((2 * m, 2 * m))
    for a in range(m):
        for b in range(m):
            if a != b:
                D[a, b] = D[m + a, m + b] = 2 / 3
            D[a, m + b] = D[m + b, a] = 1.0 if a == b else 1 / 3
    metric = MetricSpace.explicit(D)  # construction checks the triangle inequality
    sets = [list(range(m))] + [[m + k] for k in range(m)]
    edges = [(0, k) for k in range(1, n)]
    return _evaluate_all(n, edges, metric, sets)


@dataclass(frozen=True)
class GMCounterexample:
    """Two single-edge solutions where the geometric-median choice goes wrong."""

    instance: Instance
    candidates: tuple[tuple[Edge, ...], ...]


def gen_gm_counterexample(eps: float) -> GMCounterexample:
    if not 0 < eps < 1:
        raise InputError("eps must lie in (0, 1)")
    # points: eps, 0, -1, 1 on a line
    metric = MetricSpace.euclidean([[eps], [0.0], [-1.0], [1.0]])
    sets = [[0], [1], [2, 1, 3]]
    edges = [(0, 1), (1, 2)]
    inst = Instance.build(3, edges, metric, sets, Problem.evaluate(edges))
    return GMCounterexample(inst, (((0, 1),), ((1, 2),)))


def _random_tree(rng: np.random.Generator, n: int) -> list[Edge]:
    return [(int(rng.integers(0, v)), v) for v in range(1, n)]


def family_edges(family: str, n: int, rng: np.random.Generator) -> list[Edge]:
    if family == "path":
        return path_graph_edges(n)
    if family == "cycle":
        if n < 3:
            raise InputError("cycle needs n >= 3")
        return cycle_graph_edges(n)
    if family == "tree":
        return _random_tree(rng, n)
    if family == "star":
        return [(0, k) for k in range(1, n)]
    if family == "clique":
        return list(itertools.combinations(range(n), 2))
    if family == "matching":
        return [(2 * k, 2 * k + 1) for k in range(n // 2)]
    if family == "general-connected":
        return _connected_edges(rng, n, 0.3)
    raise InputError(f"unknown family {family!r}; expected one of {FAMILIES}")


def _connected_edges(rng: np.random.Generator, n: int, p: float) -> list[Edge]:
    edges = {tuple(sorted(e)) for e in _random_tree(rng, n)}
    for i, j in itertools.combinations(range(n), 2):
        if rng.random() < p:
            edges.add((i, j))
    return sorted(edges)


def random_metric(kind: str, size: int, rng: np.random.Generator) -> MetricSpace:
    if kind == "euclidean2d":
        return MetricSpace.euclidean(rng.random((size, 2)))
    if kind == "graph-induced":
        # sparse road-network-like auxiliary graph
        edges = _connected_edges(rng, size, min(1.0, 2.0 / max(size, 1)))
        weighted = [(a, b, float(rng.uniform(0.1, 1.0))) for a, b in edges]
        return MetricSpace.graph_induced(size, weighted)
    if kind == "random-metric-closure":
        edges = _connected_edges(rng, size, 0.5)
        weighted = [(a, b, float(rng.uniform(0.5, 1.5))) for a, b in edges]
        closure = MetricSpace.graph_induced(size, weighted).dist
        return MetricSpace.explicit(closure)
    if kind == "random-gen":
        m = rng.random((size, size))
        m = np.triu(m, 1)
        return MetricSpace(m + m.T, flavor="gen", kind="explicit")
    raise InputError(f"unknown metric kind {kind!r}; expected one of {SP_METRIC_KINDS}")


def _random_sets(rng: np.random.Generator, n: int, sigma: int) -> list[list[int]]:
    perm = rng.permutation(n * sigma)
    return [sorted(int(p) for p in perm[i * sigma : (i + 1) * sigma]) for i in range(n)]


def gen_random(family: str, n: int, sigma: int, metric_kind: str, seed: int) -> Instance:
    """Seeded instance whose evaluate-set is the whole family graph.

    Each vertex receives ``sigma`` distinct points out of ``n * sigma``.
    """
    if metric_kind not in METRIC_KINDS:
        raise InputError(f"unknown metric kind {metric_kind!r}; expected one of {METRIC_KINDS}")
    if family not in FAMILIES:
        raise InputError(f"unknown family {family!r}; expected one of {FAMILIES}")
    if n < 2 or sigma < 1:
        raise InputError("need n >= 2 and sigma >= 1")
    rng = np.random.default_rng(seed)
    edges = family_edges(family, n, rng)
    metric = random_metric(metric_kind, n * sigma, rng)
    return _evaluate_all(n, edges, metric, _random_sets(rng, n, sigma))


def gen_random_sp(
    n: int, sigma: int, metric_kind: str, seed: int, density: float = 0.4
) -> Instance:
    """Seeded connected ``sp`` instance from vertex 0 to vertex n-1.

    Set sizes vary in ``[1, sigma]``.  ``random-gen`` gives a symmetric table
    with no triangle inequality.
    """
    if metric_kind not in SP_METRIC_KINDS:
        raise InputError(f"unknown metric kind {metric_kind!r}; expected one of {SP_METRIC_KINDS}")
    if n < 2:
        raise InputError("sp needs n >= 2")
    rng = np.random.default_rng(seed)
    edges = _connected_edges(rng, n, density)
    metric = random_metric(metric_kind, n * sigma, rng)
    sets = [s[: int(rng.integers(1, sigma + 1))] for s in _random_sets(rng, n, sigma)]
    return Instance.build(n, edges, metric, sets, Problem.sp(0, n - 1))
