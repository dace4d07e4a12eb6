import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import all_simple_paths, double_exhaustive_sp
from robust_locus.cost import path_worst_case_cost, worst_case_cost
from robust_locus.dp import (
    dp_tables,
    extend_profile,
    profile_layers,
    solve_exact,
    solve_exact_with_stats,
)
from robust_locus.generators import gen_random_sp, gen_tight_path
from robust_locus.model import InfeasibleError, InputError, Instance, MetricSpace, Problem


def line(points, sets, edges, s, t):
    m = MetricSpace.euclidean([[p] for p in points])
    return Instance.build(len(sets), edges, m, sets, Problem.sp(s, t))


def oracle(inst):
    sets = [list(u.positions) for u in inst.uncertainty]
    pb = inst.problem
    return double_exhaustive_sp(inst.metric.dist, sets, inst.graph.adjacency, pb.s, pb.t)


class TestExtendProfile:
    def test_line_example(self):
        # U_0 = {0, 1}, U_1 = {0}: prepend 0 to the zero profile at 1
        inst = line([0.0, 1.0], [[0, 1], [0]], [(0, 1)], 0, 1)
        assert extend_profile(0, 1, (0.0,), inst) == (0.0, 1.0)
        # back across the edge: max(d(0,0) + 0, d(0,1) + 1)
        assert extend_profile(1, 0, (0.0, 1.0), inst) == (2.0,)

    def test_not_adjacent(self):
        inst = line([0.0, 1.0], [[0], [1], [0]], [(0, 1)], 0, 1)
        with pytest.raises(InputError):
            extend_profile(0, 2, (0.0,), inst)

    def test_wrong_length(self):
        inst = line([0.0, 1.0], [[0, 1], [0]], [(0, 1)], 0, 1)
        with pytest.raises(InputError):
            extend_profile(0, 1, (0.0, 0.0), inst)


def test_tight_path_optimum():
    path, cost = solve_exact(gen_tight_path(3))
    assert path == (0, 1, 2)
    assert cost == 1.0


def test_singletons_match_enumeration():
    rng = np.random.default_rng(4)
    pts = rng.random((6, 2))
    edges = [(0, 1), (1, 5), (0, 2), (2, 3), (3, 5), (1, 4), (4, 5), (2, 4)]
    inst = Instance.build(6, edges, MetricSpace.euclidean(pts), [[i] for i in range(6)], Problem.sp(0, 5))
    best = min(
        sum(inst.metric.d(a, b) for a, b in zip(p, p[1:]))
        for p in all_simple_paths(inst.graph.adjacency, 0, 5)
    )
    assert solve_exact(inst)[1] == pytest.approx(best)


def test_parallel_routes_keep_both_profiles():
    # two s-t routes whose profiles at s are incomparable: (1, 0) and (0, 1)
    m = MetricSpace.explicit(
        [
            [0, 1, 0.5, 0.5, 0],
            [1, 0, 0.5, 0.5, 1],
            [0.5, 0.5, 0, 1, 0.5],
            [0.5, 0.5, 1, 0, 0.5],
            [0, 1, 0.5, 0.5, 0],
        ],
        flavor="gen",
    )
    # s=0 at points {0,1}; route a through vertex 1 at point 4, route b through 2 at point 1
    inst = Instance.build(4, [(0, 1), (1, 3), (0, 2), (2, 3)], m, [[0, 1], [4], [1], [2]], Problem.sp(0, 3))
    table, _ = dp_tables(inst)
    assert len(table) == 2
    assert {e.path for e in table.entries.values()} == {(0, 1, 3), (0, 2, 3)}


def test_infeasible():
    inst = line([0.0, 1.0, 2.0], [[0], [1], [2]], [(0, 1)], 0, 2)
    with pytest.raises(InfeasibleError):
        solve_exact(inst)


def test_endpoint_errors():
    inst = line([0.0, 1.0], [[0], [1]], [(0, 1)], 0, 1)
    with pytest.raises(InputError):
        solve_exact(inst, 0, 7)
    with pytest.raises(InputError):
        solve_exact(inst, 1, 1)


def case(seed):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(3, 9))
    kind = ("euclidean2d", "random-gen")[seed % 2]
    return gen_random_sp(n, 3, kind, seed)


@pytest.mark.parametrize("seed", range(200))
def test_matches_double_exhaustive(seed):
    inst = case(seed)
    path, cost = solve_exact(inst)
    assert cost == pytest.approx(oracle(inst), abs=1e-9)
    assert path[0] == inst.problem.s and path[-1] == inst.problem.t
    assert len(set(path)) == len(path)
    assert path_worst_case_cost(inst, path) == pytest.approx(cost, abs=1e-9)


@pytest.mark.parametrize("seed", range(40))
def test_layers_grow_and_representatives_are_simple(seed):
    inst = case(seed)
    pb = inst.problem
    sizes = [len(u) for u in inst.uncertainty]
    prev = None
    for layer in profile_layers(inst.graph, sizes, pb.s, pb.t, inst.pair_table):
        for tab in layer:
            for key, e in tab.entries.items():
                assert e.path[0] == tab.anchor and e.path[-1] == pb.t
                assert len(set(e.path)) == len(e.path) <= tab.budget + 1
                assert all(inst.graph.has_edge(a, b) for a, b in zip(e.path, e.path[1:]))
                # stored values are the exact per-position worst case of the representative
                assert max(e.values) == pytest.approx(path_worst_case_cost(inst, e.path), abs=1e-9)
        if prev is not None:
            for old, new in zip(prev, layer):
                assert set(old.entries) <= set(new.entries)
        prev = layer


@pytest.mark.parametrize("seed", range(40))
def test_profile_count_bound(seed):
    inst = case(seed)
    _, _, stats = solve_exact_with_stats(inst)
    sigma = max(len(u) for u in inst.uncertainty)
    assert 1 <= stats.n_profiles <= stats.n_values**sigma


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6), st.randoms(use_true_random=False))
def test_invariant_under_position_order(seed, rnd):
    inst = gen_random_sp(6, 3, "euclidean2d", seed)
    shuffled = []
    for u in inst.uncertainty:
        pos = list(u.positions)
        rnd.shuffle(pos)
        shuffled.append(pos)
    other = Instance.build(inst.n, inst.graph.edges, inst.metric, shuffled, inst.problem)
    assert solve_exact(other)[1] == pytest.approx(solve_exact(inst)[1], abs=1e-9)


def test_dp_cost_is_exact_worst_case():
    inst = gen_random_sp(7, 3, "euclidean2d", 99)
    path, cost = solve_exact(inst)
    edges = [tuple(sorted(e)) for e in zip(path, path[1:])]
    assert worst_case_cost(inst, edges)[0] == pytest.approx(cost, abs=1e-9)
