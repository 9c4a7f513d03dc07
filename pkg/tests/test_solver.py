import warnings

import pytest
from hypothesis import given, settings, strategies as st

from cdgp.errors import DisconnectedGraphWarning
from cdgp.graph import ConstraintOp, Embedding, Instance, Objective, build_graph, check_embedding, uniform_instance
from cdgp.outcome import Status
from cdgp.reductions import PartitionInstance, partition_to_cdgp
from cdgp.solver import (Strategy, ddcf_check, initial_upper_bound, select_colors_prev,
                         select_colors_system, solve)
from suites import complete, cycle, geq_unit, planted_eq, random_instance, rng

STRATS = list(Strategy)


def _inst(n, edges, op=ConstraintOp.EQ):
    return Instance(build_graph(n, edges), op=op)


@pytest.mark.parametrize("xi,d,expected", [(5, 3, [2, 8]), (2, 3, [5]), (3, 3, [6])])
def test_select_prev(xi, d, expected):
    inst = _inst(2, [(0, 1, d)])
    assert select_colors_prev(inst, {0: xi}, 0, 1) == expected


def test_select_prev_no_predecessor():
    assert select_colors_prev(_inst(2, [(0, 1, 3)]), {}, None, 1) == [1]


def test_select_system_examples():
    eq = _inst(3, [(0, 2, 3)])
    assert select_colors_system(eq, {0: 4}, 2, 20) == [1]
    eq2 = _inst(3, [(0, 2, 5), (1, 2, 5)])
    assert select_colors_system(eq2, {0: 1, 1: 6}, 2, 30) == []
    geq = _inst(3, [(0, 2, 2), (1, 2, 2)], ConstraintOp.GEQ)
    assert select_colors_system(geq, {0: 1, 1: 4}, 2, 30) == [6]
    assert select_colors_system(eq, {}, 2, 10) == [1]


def test_ddcf_examples():
    assert ddcf_check(_inst(2, [(0, 1, 3)]), {0: 4, 1: 1}, 0)
    assert not ddcf_check(_inst(2, [(0, 1, 2)]), {0: 4, 1: 1}, 0)
    geq = _inst(3, [(0, 1, 3), (0, 2, 5)], ConstraintOp.GEQ)
    assert ddcf_check(geq, {0: 4, 1: 1, 2: 9}, 0)


@pytest.mark.parametrize("strategy", STRATS)
def test_c3_infeasible(strategy):
    out, stats = solve(uniform_instance(3, cycle(3), 5), strategy, "decision")
    assert out.status is Status.INFEASIBLE and stats.solutions == 0


@pytest.mark.parametrize("strategy", STRATS)
def test_k4_geq(strategy):
    out, _ = solve(geq_unit(4, complete(4)), strategy, "optimize")
    assert out.span == 4


@pytest.mark.parametrize("strategy", STRATS)
def test_c5_geq(strategy):
    assert solve(geq_unit(5, cycle(5)), strategy, "optimize")[0].span == 3


@pytest.mark.parametrize("strategy", STRATS)
def test_path_optimum(strategy):
    out, _ = solve(_inst(3, [(0, 1, 2), (1, 2, 3)]), strategy, "optimize")
    assert out.span == 4 and out.embedding.as_list() == [3, 1, 4]


def test_path_single_start_vertex_misses_optimum():
    inst = _inst(3, [(0, 1, 2), (1, 2, 3)])
    assert solve(inst, "prev", "optimize", seed_vertex=0)[0].span == 6
    assert solve(inst, "prev", "optimize", seed_vertex=1)[0].span == 4


@pytest.mark.parametrize("strategy", STRATS)
def test_six_value_partition_cycle(strategy):
    inst = partition_to_cdgp(PartitionInstance((1, 4, 5, 6, 7, 9)))
    out, _ = solve(inst, strategy, "decision")
    assert out.is_feasible


def test_single_edge_envelope():
    # optimum equals 1 + total weight; must not be bounded away
    inst = _inst(2, [(0, 1, 7)])
    assert initial_upper_bound(inst) == 8
    for s in STRATS:
        assert solve(inst, s, "optimize")[0].span == 8


def test_single_vertex():
    out, stats = solve(_inst(1, []), "prev", "optimize")
    assert out.embedding.as_list() == [1] and stats.solutions == 1


def test_ub_override():
    inst = _inst(3, [(0, 1, 2), (1, 2, 3)])
    assert solve(inst, "prev", "optimize", ub=3)[0].status is Status.INFEASIBLE
    assert solve(inst, "prev", "optimize", ub=4)[0].span == 4


def test_node_limit_times_out():
    inst = random_instance(rng(2), 9, op=ConstraintOp.GEQ, m=30)
    out, stats = solve(inst, "prev-full", "optimize", node_limit=50)
    assert out.status is Status.TIMED_OUT and stats.nodes == 50
    if out.embedding is not None:
        assert check_embedding(inst, out.embedding).valid


def test_time_limit_times_out():
    inst = random_instance(rng(5), 14, op=ConstraintOp.GEQ, m=60)
    out, stats = solve(inst, "prev-full", "optimize", time_limit=0.05)
    assert out.status is Status.TIMED_OUT
    assert stats.time_total < 2.0


def test_budget_validation():
    inst = _inst(2, [(0, 1, 1)])
    with pytest.raises(ValueError):
        solve(inst, "prev", "decision", time_limit=0)
    with pytest.raises(ValueError):
        solve(inst, "prev", "decision", node_limit=0)
    with pytest.raises(ValueError):
        solve(inst, "prev", "decision", seed_vertex=2)


@pytest.mark.parametrize("strategy", STRATS)
def test_disconnected_warns_and_solves(strategy):
    inst = _inst(5, [(0, 1, 2), (2, 3, 1), (3, 4, 1)], ConstraintOp.GEQ)
    with pytest.warns(DisconnectedGraphWarning):
        out, _ = solve(inst, strategy, "optimize")
    assert out.span == 3 and check_embedding(inst, out.embedding).valid


def test_decision_stops_at_first():
    inst, _ = planted_eq(rng(4), 8)
    out, stats = solve(inst, "prev", "decision")
    assert out.is_feasible and stats.solutions == 1 and stats.trace == [out.span]


def test_objective_defaults_to_instance():
    inst = _inst(3, [(0, 1, 2), (1, 2, 3)]).with_objective(Objective.MINIMIZE_SPAN)
    assert solve(inst, "prev")[0].span == 4


def test_deterministic():
    inst = random_instance(rng(9), 8, op=ConstraintOp.GEQ)
    a = solve(inst, "select", "optimize")
    b = solve(inst, "select", "optimize")
    assert a[0] == b[0]
    assert (a[1].nodes, a[1].prunes, a[1].bounds, a[1].trace) == (b[1].nodes, b[1].prunes, b[1].bounds, b[1].trace)


instances = st.tuples(st.integers(0, 2**32), st.integers(1, 7), st.sampled_from(list(ConstraintOp)),
                      st.integers(1, 12))


@settings(max_examples=150)
@given(instances, st.sampled_from(STRATS), st.sampled_from(["decision", "optimize"]))
def test_stats_invariants(params, strategy, mode):
    seed, n, op, hi = params
    inst = random_instance(rng(seed), n, hi=hi, op=op)
    out, stats = solve(inst, strategy, mode)
    if out.embedding is not None:
        assert check_embedding(inst, out.embedding).valid
    assert stats.nodes >= stats.prunes + stats.bounds
    assert (stats.solutions >= 1) == (out.embedding is not None)
    assert len(stats.trace) == stats.solutions
    assert all(a > b for a, b in zip(stats.trace, stats.trace[1:]))
    if out.embedding is not None:
        assert stats.trace[-1] == out.span
        assert stats.time_to_first is not None and stats.time_to_first <= stats.time_total
    if op is ConstraintOp.GEQ:
        assert out.is_feasible


@settings(max_examples=150)
@given(instances)
def test_prev_full_spans_match_prev(params):
    seed, n, op, hi = params
    inst = random_instance(rng(seed), n, hi=hi, op=op)
    a, sa = solve(inst, "prev", "optimize")
    b, sb = solve(inst, "prev-full", "optimize")
    assert a.status == b.status and a.span == b.span
    if not a.is_feasible:
        assert sb.nodes >= sa.nodes


@settings(max_examples=200)
@given(st.integers(0, 2**32), st.integers(1, 6), st.sampled_from(list(ConstraintOp)), st.data())
def test_select_kernel_matches_literal_scan(seed, n, op, data):
    """The jump rule both kernels use for Select equals the literal [1, ub] scan."""
    inst = random_instance(rng(seed), n, hi=8, op=op)
    ub = data.draw(st.integers(1, 40))
    colors = data.draw(st.lists(st.integers(0, 30), min_size=n, max_size=n))
    j = data.draw(st.integers(0, n - 1))
    colors[j] = 0
    x = {v: c for v, c in enumerate(colors) if c}
    expected = select_colors_system(inst, x, j, ub)
    # reproduce the kernel's fast rule
    colored = [(x[w], d) for w, d in inst.graph.adj[j] if w in x]
    if not colored:
        fast = 1
    elif op is ConstraintOp.EQ:
        xw, d = colored[0]
        fast = next((c for c in (xw - d, xw + d)
                     if 1 <= c <= ub and all(abs(xk - c) == dk for xk, dk in colored)), 0)
    else:
        fast, moved = 1, True
        while moved:
            moved = False
            for xk, dk in colored:
                if abs(xk - fast) < dk:
                    fast, moved = xk + dk, True
        fast = fast if fast <= ub else 0
    assert ([fast] if fast else []) == expected


def test_large_tree_runs():
    inst = random_instance(rng(1), 40, m=39)
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        out, _ = solve(inst, "select", "decision")
    assert out.is_feasible
