import pytest

from pfd.errors import InvalidParameterError
from pfd.generator import GenSpec, planted_instance
from pfd.multigraph import MultiGraph
from pfd.oracle import oracle_decide, oracle_min_deletion
from pfd.recognition import is_r_pseudoforest
from pfd.reducer import Instance
from pfd.solver import (
    fallback_exact,
    solve_decision,
    solve_minimize,
    theorem_bound,
    top_degree_set,
)

from conftest import complete, cycle, disjoint_union, path, small_random_instances, star


def bowtie():
    return MultiGraph.from_edges(5, [(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 2)])


def test_top_degree_set():
    assert top_degree_set(complete(4), 10) == [0, 1, 2, 3]
    assert top_degree_set(star(5), 1) == [0]
    g = MultiGraph(2)
    g.add_edge(0, 1, 3)
    assert top_degree_set(g, 1) == [0]
    h = MultiGraph(4)
    h.add_edge(3, 3)  # degree 2
    h.add_edge(1, 2)
    assert top_degree_set(h, 4) == [3, 1, 2, 0]


def test_theorem_bound():
    assert theorem_bound(0) == 1
    assert theorem_bound(1) == 11
    assert theorem_bound(3) == 31 ** 3


def test_c3_k0():
    d = solve_decision(Instance(cycle(3), 1, 0))
    assert d.answer
    assert d.solution.vertices == ()
    assert [c.excess for c in d.solution.certificate] == [1]


def test_k4_k1():
    d = solve_decision(Instance(complete(4), 1, 1))
    assert d.solution.k_used == 1
    assert (d.solution.vertices,) in [((v,),) for v in range(4)]


def test_k5():
    assert not solve_decision(Instance(complete(5), 1, 1)).answer
    d = solve_decision(Instance(complete(5), 1, 2))
    assert d.solution.k_used == 2
    assert oracle_min_deletion(complete(5), 1)[0] == 2


def test_three_k4():
    g = disjoint_union(complete(4), complete(4), complete(4))
    d = solve_decision(Instance(g, 1, 3))
    assert sorted(v // 4 for v in d.solution.vertices) == [0, 1, 2]
    assert not solve_decision(Instance(g, 1, 2)).answer


def test_fallback_examples():
    assert fallback_exact(Instance(complete(4), 1, 1)).answer
    assert not fallback_exact(Instance(complete(4), 1, 0)).answer
    assert not fallback_exact(Instance(bowtie(), 1, 0)).answer
    d = fallback_exact(Instance(bowtie(), 1, 1))
    assert d.solution.vertices == (2,)
    assert not oracle_decide(bowtie(), 1, 0)
    assert oracle_decide(bowtie(), 1, 1)


def test_minimize():
    assert solve_minimize(path(5), 1, 3).opt == 0
    assert solve_minimize(complete(5), 1, 4).opt == 2
    assert solve_minimize(disjoint_union(complete(4), complete(4)), 1, 4).opt == 2
    res = solve_minimize(complete(6), 1, 2)
    assert res.opt is None and res.solution is None
    assert len(res.runs) == 3
    assert res.bound_holds()


def test_k_zero_on_pseudoforest():
    assert solve_decision(Instance(cycle(5), 2, 0)).answer


def test_bad_parameters():
    with pytest.raises(InvalidParameterError):
        solve_decision(Instance(cycle(3), 1, -1))
    with pytest.raises(InvalidParameterError):
        solve_minimize(cycle(3), 0, 2)


def test_agrees_with_oracle():
    for inst in small_random_instances(300, seed=21):
        d = solve_decision(inst)
        assert d.answer == oracle_decide(inst.graph, inst.r, inst.k), inst
        if d.answer:
            assert len(d.solution.vertices) <= inst.k
            assert is_r_pseudoforest(inst.graph.without(d.solution.vertices), inst.r)
        assert d.stats.branch_nodes <= theorem_bound(inst.k)


def test_minimize_matches_oracle():
    for inst in small_random_instances(120, seed=33, max_n=9):
        expected = oracle_min_deletion(inst.graph, inst.r)
        assert solve_minimize(inst.graph, inst.r, 9).opt == expected[0]


def test_component_additivity():
    pieces = [inst.graph for inst in small_random_instances(40, seed=44, max_n=6, max_m=14, rs=(1,))]
    for a, b in zip(pieces[::2], pieces[1::2]):
        union = disjoint_union(a, b)
        opt = solve_minimize(union, 1, 12).opt
        assert opt == solve_minimize(a, 1, 6).opt + solve_minimize(b, 1, 6).opt
        assert opt == oracle_min_deletion(union, 1)[0]


def test_deterministic():
    for inst in small_random_instances(50, seed=55):
        a, b = solve_decision(inst), solve_decision(inst)
        assert a.solution == b.solution
        assert a.stats == b.stats


def test_branching_path_and_bound():
    # reduced graph stays above 51k, so the top-degree branching is used
    g, planted = planted_instance(GenSpec(seed=7, n=200, edge_budget=300, multi_rate=0.05,
                                          r=1, planted_k=2))
    d = solve_decision(Instance(g, 1, 2))
    assert d.solution.vertices == planted
    assert d.stats.branch_nodes > 1
    assert d.stats.branch_nodes <= theorem_bound(2)
    assert not solve_decision(Instance(g, 1, 1)).answer


def test_parallel_matches_sequential():
    g, _ = planted_instance(GenSpec(seed=3, n=120, edge_budget=240, multi_rate=0.05,
                                    r=2, planted_k=2))
    for k in (1, 2):
        seq = solve_decision(Instance(g, 2, k))
        par = solve_decision(Instance(g, 2, k), threads=2)
        assert seq.solution == par.solution
    small = disjoint_union(complete(5), complete(4))
    assert (solve_decision(Instance(small, 1, 3), threads=2).solution
            == solve_decision(Instance(small, 1, 3)).solution)
