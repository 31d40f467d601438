import itertools

import pytest

import pfd.cli
import pfd.reducer
import pfd.solver
from pfd.generator import GenSpec, XorShift64Star, random_multigraph
from pfd.multigraph import MultiGraph
from pfd.reducer import Instance, reduced_violations

# filled by tests/test_acceptance.py, printed at the end of the run
ACCEPTANCE_LINES = []

# every reduce() fixed point seen anywhere in the session
REDUCE_LOG = {"checked": 0, "violations": []}

_real_reduce = pfd.reducer.reduce


def _checked_reduce(instance):
    red = _real_reduce(instance)
    if not red.is_no:
        REDUCE_LOG["checked"] += 1
        bad = reduced_violations(red.instance)
        if bad:
            REDUCE_LOG["violations"].append(bad)
            raise AssertionError(f"reduce() fixed point violates P1-P3: {bad}")
    return red


@pytest.fixture(autouse=True)
def _enforce_reduced_structure(monkeypatch):
    for mod in (pfd.reducer, pfd.solver, pfd.cli):
        monkeypatch.setattr(mod, "reduce", _checked_reduce)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
    terminalreporter.write_line(
        f"reduce() fixed points checked for P1-P3: {REDUCE_LOG['checked']}, "
        f"violations: {len(REDUCE_LOG['violations'])}"
    )


# -- graph builders ------------------------------------------------------------


def complete(n):
    return MultiGraph.from_edges(n, itertools.combinations(range(n), 2))


def cycle(n):
    return MultiGraph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def path(n):
    return MultiGraph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def star(leaves):
    return MultiGraph.from_edges(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def disjoint_union(*graphs):
    out = MultiGraph()
    for g in graphs:
        index = {v: out.add_vertex() for v in g.vertices()}
        for u, v, c in g.edges():
            out.add_edge(index[u], index[v], c)
    return out


def small_random_instances(count, seed, max_n=10, max_m=20, rs=(1, 2, 3), ks=range(5)):
    """Seeded small multigraph instances with loops and parallel edges."""
    rng = XorShift64Star(seed)
    ks = list(ks)
    for i in range(count):
        n = 1 + rng.below(max_n)
        m = rng.below(max_m + 1)
        spec = GenSpec(
            seed=rng.next_u64(),
            n=n,
            edge_budget=m,
            loop_rate=[0.0, 0.1, 0.25][rng.below(3)],
            multi_rate=[0.0, 0.2, 0.4][rng.below(3)],
        )
        r = rs[rng.below(len(rs))]
        k = ks[rng.below(len(ks))]
        yield Instance(random_multigraph(spec), r, k)
