import pytest
from hypothesis import given, strategies as st

from cdgp.errors import NotATree, WrongModel
from cdgp.graph import ConstraintOp, Instance, build_graph, check_embedding, span, uniform_instance
from cdgp.oracle import oracle_solve
from cdgp.recognizers import bipartite_check, embed_tree, is_tree, solve_eq_unif, verify_odd_cycle
from suites import cycle, path, random_instance, random_uniform, rng


def test_c4_bipartite():
    res = bipartite_check(build_graph(4, [(u, v, 1) for u, v in cycle(4)]))
    assert res.is_bipartite and res.sides == (0, 1, 0, 1)


def test_c3_odd_cycle():
    g = build_graph(3, [(u, v, 1) for u, v in cycle(3)])
    res = bipartite_check(g)
    assert not res.is_bipartite
    assert len(res.odd_cycle) == 4 and res.odd_cycle[0] == res.odd_cycle[-1]
    assert sorted(res.odd_cycle[:-1]) == [0, 1, 2]
    assert verify_odd_cycle(g, res.odd_cycle)


def test_single_vertex_bipartite():
    assert bipartite_check(build_graph(1, [])).is_bipartite


def test_solve_c4():
    out = solve_eq_unif(uniform_instance(4, cycle(4), 5))
    assert out.is_feasible and out.embedding.as_list() == [1, 6, 1, 6] and out.span == 6


def test_solve_c3():
    out = solve_eq_unif(uniform_instance(3, cycle(3), 5))
    assert not out.is_feasible and out.certificate is not None


def test_solve_star():
    out = solve_eq_unif(uniform_instance(4, [(0, 1), (0, 2), (0, 3)], 2))
    assert out.embedding.as_list() == [1, 3, 3, 3] and out.span == 3


def test_solve_eq_unif_wrong_model():
    with pytest.raises(WrongModel):
        solve_eq_unif(uniform_instance(3, path(3), 2, ConstraintOp.GEQ))
    with pytest.raises(WrongModel):
        solve_eq_unif(Instance(build_graph(2, [(0, 1, 3)])))


def test_is_tree():
    assert is_tree(build_graph(4, [(u, v, 1) for u, v in path(4)]))
    assert not is_tree(build_graph(4, [(u, v, 1) for u, v in cycle(4)]))
    assert not is_tree(build_graph(4, [(0, 1, 1), (2, 3, 1)]))


def test_embed_path():
    e = embed_tree(Instance(build_graph(3, [(0, 1, 2), (1, 2, 3)])))
    assert e.as_list() == [1, 3, 6] and span(e) == 6


def test_embed_single_vertex():
    assert embed_tree(Instance(build_graph(1, []))).as_list() == [1]


def test_embed_star():
    assert embed_tree(Instance(build_graph(3, [(0, 1, 4), (0, 2, 9)]))).as_list() == [1, 5, 10]


def test_embed_tree_errors():
    with pytest.raises(NotATree):
        embed_tree(Instance(build_graph(3, [(u, v, 1) for u, v in cycle(3)])))
    with pytest.raises(WrongModel):
        embed_tree(Instance(build_graph(2, [(0, 1, 1)]), op=ConstraintOp.GEQ))


@given(st.integers(0, 2**32), st.integers(1, 12), st.integers(1, 10))
def test_certificates_verify(seed, n, phi):
    inst = random_uniform(rng(seed), n, phi)
    res = bipartite_check(inst.graph)
    if res.is_bipartite:
        for u, v, _ in inst.graph.edges:
            assert res.sides[u] != res.sides[v]
        out = solve_eq_unif(inst)
        assert check_embedding(inst, out.embedding).valid
        if inst.graph.m:
            assert out.span == 1 + phi
    else:
        assert verify_odd_cycle(inst.graph, res.odd_cycle)


@given(st.integers(0, 2**32), st.integers(2, 7), st.integers(1, 4))
def test_unif_recognizer_against_oracle(seed, n, phi):
    inst = random_uniform(rng(seed), n, phi)
    assert solve_eq_unif(inst).is_feasible == oracle_solve(inst).is_feasible


@given(st.integers(0, 2**32), st.integers(1, 50))
def test_embed_random_trees(seed, n):
    inst = random_instance(rng(seed), n, m=n - 1)
    e = embed_tree(inst)
    assert e[0] == 1 and check_embedding(inst, e).valid


def test_disconnected_bipartite():
    g = build_graph(6, [(0, 1, 1), (2, 3, 1), (3, 4, 1), (4, 2, 1)])
    res = bipartite_check(g)
    assert not res.is_bipartite and verify_odd_cycle(g, res.odd_cycle)
