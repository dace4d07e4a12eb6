import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import max_cut, nested_loop_worst_case
from robust_locus.cost import (
    CapacityError,
    cmax_cost,
    path_worst_case_cost,
    ratio_report,
    scenario_cost,
    subgraph,
    worst_case_cost,
)
from robust_locus.generators import (
    gen_random,
    gen_tight_clique,
    gen_tight_cycle,
    gen_tight_path,
    gen_tight_star,
    gen_tight_triangle,
)
from robust_locus.model import InputError, Instance, MetricSpace, Scenario, check_ptolemy


def test_scenario_cost_empty():
    inst = gen_tight_path(3)
    assert scenario_cost(inst, (), Scenario((0, 0, 1))) == 0.0


def test_scenario_cost_tight_path():
    inst = gen_tight_path(3)
    assert scenario_cost(inst, inst.graph.edges, Scenario((0, 0, 1))) == 1.0


def test_scenario_cost_tight_cycle():
    inst = gen_tight_cycle(4)
    assert scenario_cost(inst, inst.graph.edges, Scenario((0, 1, 1, 0))) == 2.0


def test_scenario_cost_missing_vertex():
    inst = gen_tight_path(3)
    with pytest.raises(InputError):
        scenario_cost(inst, inst.graph.edges, Scenario((0, 0)))


def test_scenario_cost_foreign_point():
    inst = gen_tight_path(3)
    with pytest.raises(InputError):
        scenario_cost(inst, inst.graph.edges, Scenario((1, 0, 1)))


def test_worst_case_singletons():
    m = MetricSpace.euclidean([[0, 0], [3, 4], [6, 8]])
    inst = Instance.build(3, [(0, 1), (1, 2)], m, [[0], [1], [2]])
    val, u = worst_case_cost(inst, inst.graph.edges)
    assert val == pytest.approx(10.0)
    assert val == scenario_cost(inst, inst.graph.edges, u)


def test_worst_case_tight_path():
    inst = gen_tight_path(3)
    val, u = worst_case_cost(inst, inst.graph.edges)
    assert val == 1.0
    # both scenarios tie; lexicographically first position index wins
    assert u.choice == (0, 0, 1)


def test_worst_case_k4_is_max_cut():
    inst = gen_tight_clique(4)
    assert worst_case_cost(inst, inst.graph.edges)[0] == 4.0 == max_cut(4, inst.graph.edges)


def test_worst_case_cap():
    inst = gen_tight_clique(6)
    with pytest.raises(CapacityError, match="64"):
        worst_case_cost(inst, inst.graph.edges, cap=63)


def test_cap_env_override(monkeypatch):
    monkeypatch.setenv("ROBUST_LOCUS_ORACLE_CAP", "10")
    inst = gen_tight_clique(4)
    with pytest.raises(CapacityError):
        worst_case_cost(inst, inst.graph.edges)


def test_untouched_vertices_not_enumerated():
    # vertex 2 has a huge set but no incident edge in the subgraph
    m = MetricSpace.euclidean([[float(x)] for x in range(40)])
    inst = Instance.build(3, [(0, 1), (1, 2)], m, [[0, 1], [2, 3], list(range(4, 40))])
    val, _ = worst_case_cost(inst, [(0, 1)], cap=4)
    assert val == 3.0


def test_cmax_single_edge_equals_worst_case():
    inst = gen_random("tree", 6, 3, "euclidean2d", seed=11)
    for e in inst.graph.edges:
        assert cmax_cost(inst, [e]) == pytest.approx(worst_case_cost(inst, [e])[0])


def test_cmax_tight_values():
    assert cmax_cost(gen_tight_path(3), gen_tight_path(3).graph.edges) == 2.0
    star = gen_tight_star(4)
    assert cmax_cost(star, star.graph.edges) == pytest.approx(3.0)


def test_subgraph_rejects_foreign_edge():
    with pytest.raises(InputError):
        subgraph(gen_tight_path(4), [(0, 2)])


class TestRatioReport:
    def test_matching(self):
        inst = gen_random("matching", 6, 3, "euclidean2d", seed=7)
        rep = ratio_report(inst, inst.graph.edges, "matching")
        assert rep.ratio == pytest.approx(1.0, abs=1e-12)

    def test_tight_path(self):
        inst = gen_tight_path(3)
        rep = ratio_report(inst, inst.graph.edges, "path")
        assert (rep.c_max, rep.c, rep.ratio, rep.bound, rep.tight) == (2.0, 1.0, 2.0, 2.0, True)

    def test_triangle(self):
        inst = gen_tight_triangle()
        rep = ratio_report(inst, inst.graph.edges, "triangle")
        assert (rep.c_max, rep.c, rep.ratio, rep.bound) == (3.0, 2.0, 1.5, 1.5)

    def test_zero_cost(self):
        m = MetricSpace.euclidean([[0.0]])
        inst = Instance.build(2, [(0, 1)], m, [[0], [0]])
        assert ratio_report(inst, inst.graph.edges).ratio == 1.0

    def test_csv_row(self):
        inst = gen_tight_path(3)
        row = ratio_report(inst, inst.graph.edges, "path").csv_row()
        assert row == "path,2.000000000,1.000000000,2.000000000,2.000000000,true"

    def test_unknown_family(self):
        with pytest.raises(InputError):
            ratio_report(gen_tight_path(3), (), "hexagon")


def _random_instance(seed):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(2, 6))
    sig = int(rng.integers(1, 4))
    m = MetricSpace.euclidean(rng.random((n * sig, 2)))
    sets = [list(range(i * sig, i * sig + int(rng.integers(1, sig + 1)))) for i in range(n)]
    edges = [e for e in itertools.combinations(range(n), 2) if rng.random() < 0.6]
    return Instance.build(n, edges, m, sets)


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 10**6))
def test_worst_case_matches_nested_loop(seed):
    inst = _random_instance(seed)
    sets = [list(u.positions) for u in inst.uncertainty]
    expect = nested_loop_worst_case(inst.metric.dist, sets, inst.graph.edges)
    val, u = worst_case_cost(inst, inst.graph.edges)
    assert val == pytest.approx(max(expect, 0.0), abs=1e-12)
    assert scenario_cost(inst, inst.graph.edges, u) == pytest.approx(val, abs=1e-12)


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 10**6))
def test_surrogate_bounds(seed):
    inst = _random_instance(seed)
    edges = inst.graph.edges
    c, _ = worst_case_cost(inst, edges)
    cm = cmax_cost(inst, edges)
    assert c <= cm + 1e-9
    assert cm <= 4 * c + 1e-9  # euclidean, hence Ptolemaic
    assert cm <= 9 * c + 1e-9
    assert cm <= inst.graph.max_degree * c + 1e-9


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6))
def test_nonptolemaic_nine_bound(seed):
    inst = gen_random("general-connected", 6, 3, "random-metric-closure", seed)
    edges = inst.graph.edges
    c, _ = worst_case_cost(inst, edges)
    assert cmax_cost(inst, edges) <= 9 * c + 1e-9


def test_random_closure_is_usually_not_ptolemaic():
    flagged = sum(
        bool(check_ptolemy(gen_random("tree", 5, 3, "random-metric-closure", s).metric))
        for s in range(10)
    )
    assert flagged > 0


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6))
def test_disjoint_union_ratio(seed):
    rng = np.random.default_rng(seed)
    sig = 2
    m = MetricSpace.euclidean(rng.random((8 * sig, 2)))
    sets = [list(range(i * sig, (i + 1) * sig)) for i in range(8)]
    parts = [[(0, 1), (1, 2), (2, 3)], [(4, 5), (5, 6), (4, 6), (6, 7)]]
    inst = Instance.build(8, [e for p in parts for e in p], m, sets)
    ratios = []
    for p in parts:
        c, _ = worst_case_cost(inst, p)
        ratios.append(cmax_cost(inst, p) / c)
    whole = ratio_report(inst, inst.graph.edges)
    assert whole.ratio <= max(ratios) + 1e-9


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6))
def test_path_chain_cost_matches_enumeration(seed):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(2, 7))
    sig = 3
    m = MetricSpace.euclidean(rng.random((n * sig, 2)))
    sets = [list(range(i * sig, i * sig + int(rng.integers(1, sig + 1)))) for i in range(n)]
    order = [int(v) for v in rng.permutation(n)]
    edges = list(itertools.combinations(range(n), 2))
    inst = Instance.build(n, edges, m, sets)
    path_e = [tuple(sorted(e)) for e in zip(order, order[1:])]
    assert path_worst_case_cost(inst, order) == pytest.approx(worst_case_cost(inst, path_e)[0])
