"""Exact robust shortest path by dynamic programming over profiles.

The profile of an ``i``-``t`` path ``P`` holds, for each candidate position of
``i``, the worst-case cost of ``P`` given that ``i`` sits there.  Prepending
``i`` to a ``j``-``t`` path with profile ``p'`` gives

    y[l] = max over l' of  D(u_i^l, u_j^l') + p'[l']

Layer ``k`` keeps every distinct profile of paths with at most ``k`` edges
together with one representative path.  Only the distance table is used, so
the table need not satisfy the triangle inequality.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Hashable, Iterator, Sequence

import numpy as np

from .model import Graph, InfeasibleError, InputError, Instance

KEY_GRID = 1e-9

Profile = tuple
WeightFn = Callable[[int, int], np.ndarray]
KeyFn = Callable[[np.ndarray], list]


@dataclass(frozen=True)
class ProfileEntry:
    values: Profile
    path: tuple[int, ...]
    mask: int  # bitset of vertices on path


@dataclass
class ProfileTable:
    """Distinct profiles anchored at ``anchor`` for paths with at most ``budget`` edges."""

    anchor: int
    budget: int
    entries: dict[Hashable, ProfileEntry] = field(default_factory=dict)

    def __len__(self) -> int:
        return len(self.entries)

    def profiles(self) -> list[Profile]:
        return [e.values for e in self.entries.values()]

    def copy(self, budget: int) -> ProfileTable:
        return ProfileTable(self.anchor, budget, dict(self.entries))


@dataclass(frozen=True)
class DPStats:
    n_profiles: int
    n_values: int
    layers: int


def float_keys(values: np.ndarray) -> list:
    return [tuple(r) for r in np.rint(values / KEY_GRID).astype(np.int64).tolist()]


def int_keys(values: np.ndarray) -> list:
    return [tuple(r) for r in values.tolist()]


def _extend_block(weight: np.ndarray, profiles: np.ndarray) -> np.ndarray:
    # (m, b_j) profiles, (b_i, b_j) weights -> (m, b_i)
    return (weight[None, :, :] + profiles[:, None, :]).max(axis=2)


def extend_profile(i: int, j: int, p: Sequence[float], instance: Instance) -> Profile:
    """Profile at ``i`` of the path ``i`` followed by a ``j``-``t`` path of profile ``p``."""
    if not instance.graph.has_edge(i, j):
        raise InputError(f"{i} and {j} are not adjacent")
    w = instance.pair_table(i, j)
    if len(p) != w.shape[1]:
        raise InputError(f"profile length {len(p)} does not match |U_{j}|={w.shape[1]}")
    y = _extend_block(w, np.asarray(p, dtype=float)[None, :])[0]
    return tuple(float(v) for v in y)


def profile_layers(
    graph: Graph,
    sizes: Sequence[int],
    s: int,
    t: int,
    weight: WeightFn,
    keys: KeyFn = float_keys,
    keep: Callable[[np.ndarray], np.ndarray] | None = None,
    dtype: type = float,
) -> Iterator[list[ProfileTable]]:
    """Yield the per-vertex tables for budgets 0, 1, ... until nothing changes.

    Within a layer vertices are processed in ascending order, neighbours in
    ascending order and stored profiles in insertion order; the first path
    to produce a profile becomes its representative.  An extension is skipped
    when the new vertex already lies on the representative, and paths through
    ``s`` are never extended since they cannot be suffixes of a simple
    ``s``-``t`` path.  ``keep`` may veto candidate profiles (row mask).
    """
    n = graph.n
    if s == t:
        raise InputError("s and t must differ")
    layer = [ProfileTable(v, 0) for v in range(n)]
    zero = np.zeros((1, sizes[t]), dtype=dtype)
    layer[t].entries[keys(zero)[0]] = ProfileEntry(tuple(zero[0].tolist()), (t,), 1 << t)
    yield layer
    for budget in range(1, n):
        arrays = [
            np.array([e.values for e in tab.entries.values()], dtype=dtype).reshape(-1, sizes[v])
            for v, tab in enumerate(layer)
        ]
        stored = [list(tab.entries.values()) for tab in layer]
        nxt = []
        changed = False
        for i in range(n):
            tab = layer[i].copy(budget)
            if i != t:
                for j in graph.neighbors(i):
                    if j == s or not stored[j]:
                        continue
                    ys = _extend_block(weight(i, j), arrays[j])
                    ok = keep(ys) if keep is not None else None
                    for r, key in enumerate(keys(ys)):
                        prev = stored[j][r]
                        if prev.mask >> i & 1 or key in tab.entries:
                            continue
                        if ok is not None and not ok[r]:
                            continue
                        tab.entries[key] = ProfileEntry(
                            tuple(ys[r].tolist()), (i,) + prev.path, prev.mask | 1 << i
                        )
                changed |= len(tab) != len(layer[i])
            nxt.append(tab)
        layer = nxt
        yield layer
        if not changed:
            break


def _stats(layer: list[ProfileTable], n_layers: int) -> DPStats:
    profiles = set()
    values = set()
    for tab in layer:
        for key in tab.entries:
            profiles.add(key)
            values.update(key)
    return DPStats(len(profiles), len(values), n_layers)


def run_profile_dp(
    graph: Graph,
    sizes: Sequence[int],
    s: int,
    t: int,
    weight: WeightFn,
    keys: KeyFn = float_keys,
    keep: Callable[[np.ndarray], np.ndarray] | None = None,
    dtype: type = float,
) -> tuple[ProfileTable, DPStats]:
    count = 0
    layer: list[ProfileTable] = []
    for layer in profile_layers(graph, sizes, s, t, weight, keys, keep, dtype):
        count += 1
    final = layer[s]
    final.budget = graph.n - 1
    if not final.entries:
        raise InfeasibleError(f"no simple path from {s} to {t}")
    return final, _stats(layer, count)


def _sp_endpoints(instance: Instance, s: int | None, t: int | None) -> tuple[int, int]:
    s = instance.problem.s if s is None else s
    t = instance.problem.t if t is None else t
    if s is None or t is None:
        raise InputError("shortest path needs s and t")
    if not (0 <= s < instance.n and 0 <= t < instance.n):
        raise InputError(f"endpoints ({s}, {t}) out of range")
    return s, t


def dp_tables(
    instance: Instance, s: int | None = None, t: int | None = None
) -> tuple[ProfileTable, DPStats]:
    s, t = _sp_endpoints(instance, s, t)
    sizes = [len(u) for u in instance.uncertainty]
    return run_profile_dp(instance.graph, sizes, s, t, instance.pair_table)


def best_entry(table: ProfileTable) -> tuple[Hashable, ProfileEntry]:
    """Entry whose largest coordinate is smallest; first stored wins ties."""
    best_key = min(table.entries, key=lambda k: max(k))
    return best_key, table.entries[best_key]


def solve_exact(
    instance: Instance, s: int | None = None, t: int | None = None
) -> tuple[tuple[int, ...], float]:
    """Optimal robust s-t path and its worst-case cost."""
    path, cost, _ = solve_exact_with_stats(instance, s, t)
    return path, cost


def solve_exact_with_stats(
    instance: Instance, s: int | None = None, t: int | None = None
) -> tuple[tuple[int, ...], float, DPStats]:
    table, stats = dp_tables(instance, s, t)
    _, entry = best_entry(table)
    return entry.path, float(max(entry.values)), stats
