import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pfd.errors import InvalidParameterError
from pfd.multigraph import MultiGraph
from pfd.recognition import component_excess, is_r_pseudoforest

from conftest import complete, cycle, disjoint_union, path, small_random_instances


def test_excess_examples():
    assert [c.excess for c in component_excess(cycle(3))] == [1]
    assert [c.excess for c in component_excess(path(5))] == [0]
    g = MultiGraph(1)
    g.add_edge(0, 0, 2)
    assert [c.excess for c in component_excess(g)] == [2]


def test_k4():
    assert is_r_pseudoforest(complete(4), 3)
    assert not is_r_pseudoforest(complete(4), 1)


def test_bound_is_per_component():
    g = MultiGraph(2)
    g.add_edge(0, 0)
    g.add_edge(1, 1, 2)
    assert [c.excess for c in component_excess(g)] == [1, 2]
    assert not is_r_pseudoforest(g, 1)
    # the same total excess in separate unicyclic components is fine
    assert is_r_pseudoforest(disjoint_union(cycle(3), cycle(4), cycle(5)), 1)


def test_empty_graph():
    assert component_excess(MultiGraph()) == []
    assert is_r_pseudoforest(MultiGraph(), 1)


@pytest.mark.parametrize("r", [0, -1, 1.5, True])
def test_rejects_bad_r(r):
    with pytest.raises(InvalidParameterError):
        is_r_pseudoforest(cycle(3), r)


def _acyclic(n_ids, edges):
    parent = {v: v for v in n_ids}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in edges:
        a, b = find(u), find(v)
        if a == b:
            return False
        parent[a] = b
    return True


def edge_deletion_oracle(g, r):
    """Is there an edge set, at most r per component, whose removal leaves a forest?"""
    edges = [(u, v) for u, v, c in g.edges() for _ in range(c)]
    owner = {v: i for i, comp in enumerate(g.connected_components()) for v in comp}
    for size in range(len(edges) + 1):
        for drop in itertools.combinations(range(len(edges)), size):
            per_comp = {}
            for i in drop:
                c = owner[edges[i][0]]
                per_comp[c] = per_comp.get(c, 0) + 1
            if any(x > r for x in per_comp.values()):
                continue
            dropped = set(drop)
            if _acyclic(g.vertices(), [e for i, e in enumerate(edges) if i not in dropped]):
                return True
    return False


def test_agrees_with_edge_deletion_oracle_seeded():
    count = 0
    for inst in small_random_instances(300, seed=11, max_n=7, max_m=12):
        assert is_r_pseudoforest(inst.graph, inst.r) == edge_deletion_oracle(inst.graph, inst.r)
        count += 1
    assert count == 300


small_graphs = st.builds(
    lambda n, pairs: MultiGraph.from_edges(n, [(a % n, b % n) for a, b in pairs]),
    st.integers(1, 6),
    st.lists(st.tuples(st.integers(0, 5), st.integers(0, 5)), max_size=12),
)


@settings(max_examples=150, deadline=None)
@given(small_graphs, st.integers(1, 3))
def test_agrees_with_edge_deletion_oracle(g, r):
    assert is_r_pseudoforest(g, r) == edge_deletion_oracle(g, r)


@settings(max_examples=150, deadline=None)
@given(small_graphs, st.integers(1, 4))
def test_monotone_in_r(g, r):
    if is_r_pseudoforest(g, r):
        assert is_r_pseudoforest(g, r + 1)


@settings(max_examples=150, deadline=None)
@given(small_graphs)
def test_excess_nonnegative(g):
    assert all(c.excess >= 0 for c in component_excess(g))
