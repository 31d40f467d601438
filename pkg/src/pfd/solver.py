"""Degree-ordered branching for r-pseudoforest deletion.

Each search node: answer directly if the graph already is an r-pseudoforest
or the budget is spent, reduce, then either run the exhaustive fallback
(reduced graph has at most ``51 k`` vertices) or branch on each of the
``10 k`` highest-degree vertices. On a reduced graph with more than ``51 k``
vertices every solution meets that set, so the search tree has at most
``(10 k) ** k`` leaves.
"""

from __future__ import annotations

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Dict, FrozenSet, List, Optional, Set, Tuple

from .errors import InconsistencyError, InvalidParameterError
from .multigraph import MultiGraph
from .recognition import (
    ComponentExcess,
    check_r,
    component_excess,
    is_r_pseudoforest,
    over_excess_components,
)
from .reducer import Instance, lift_solution, reduce

log = logging.getLogger(__name__)

FALLBACK_FACTOR = 51
BRANCH_FACTOR = 10


def theorem_bound(k: int) -> int:
    """Upper bound ``(10k + 1) ** k`` on the number of branching nodes."""
    return (BRANCH_FACTOR * k + 1) ** k


@dataclass
class SolverStats:
    branch_nodes: int = 0
    fallback_calls: int = 0
    fallback_nodes: int = 0
    peak_depth: int = 0
    rule_firings: Dict[int, int] = field(default_factory=lambda: dict.fromkeys(range(1, 6), 0))

    def merge(self, other: "SolverStats") -> None:
        self.branch_nodes += other.branch_nodes
        self.fallback_calls += other.fallback_calls
        self.fallback_nodes += other.fallback_nodes
        self.peak_depth = max(self.peak_depth, other.peak_depth)
        for rule, c in other.rule_firings.items():
            self.rule_firings[rule] = self.rule_firings.get(rule, 0) + c

    def to_dict(self) -> dict:
        d = asdict(self)
        d["rule_firings"] = {str(i): c for i, c in sorted(self.rule_firings.items())}
        return d


@dataclass
class Solution:
    vertices: Tuple[int, ...]
    certificate: List[ComponentExcess]

    @property
    def k_used(self) -> int:
        return len(self.vertices)


@dataclass
class Decision:
    k: int
    solution: Optional[Solution]
    stats: SolverStats

    @property
    def answer(self) -> bool:
        return self.solution is not None


@dataclass
class Minimum:
    k_max: int
    opt: Optional[int]
    solution: Optional[Solution]
    stats: SolverStats
    runs: List[SolverStats] = field(default_factory=list)

    def bound_holds(self) -> bool:
        """Whether every decision run stayed within its own ``(10k+1)^k``."""
        return all(s.branch_nodes <= theorem_bound(k) for k, s in enumerate(self.runs))


def top_degree_set(g: MultiGraph, size: int) -> List[int]:
    """The ``min(size, n)`` largest-degree vertices, ties broken by smaller id."""
    deg = g.degrees()
    return sorted(deg, key=lambda v: (-deg[v], v))[: max(size, 0)]


class _Search:
    def __init__(self, r: int) -> None:
        self.r = r
        self.stats = SolverStats()

    def _reduce(self, g: MultiGraph, k: int):
        red = reduce(Instance(g, self.r, k))
        for rule, c in red.trace.counts().items():
            self.stats.rule_firings[rule] += c
        return red

    def _enter(self, depth: int) -> None:
        if depth > self.stats.peak_depth:
            self.stats.peak_depth = depth

    def solve(self, g: MultiGraph, k: int, depth: int = 0) -> Optional[Set[int]]:
        self.stats.branch_nodes += 1
        self._enter(depth)
        if is_r_pseudoforest(g, self.r):
            return set()
        if k <= 0:
            return None
        red = self._reduce(g, k)
        if red.is_no:
            return None
        g2, k2 = red.instance.graph, red.instance.k
        if g2.n() <= FALLBACK_FACTOR * k2:
            x = self.fallback(g2, k2, depth)
        else:
            x = None
            for u in top_degree_set(g2, BRANCH_FACTOR * k2):
                sub = self.solve(g2.without([u]), k2 - 1, depth + 1)
                if sub is not None:
                    x = sub | {u}
                    break
        if x is None:
            return None
        return lift_solution(x, red.trace, Instance(g, self.r, k))

    def fallback(self, g: MultiGraph, k: int, depth: int) -> Optional[Set[int]]:
        self.stats.fallback_calls += 1
        return self.exhaust(g, k, depth)

    def exhaust(
        self, g: MultiGraph, k: int, depth: int, keep: FrozenSet[int] = frozenset()
    ) -> Optional[Set[int]]:
        # Any solution deletes at least one vertex of every over-excess
        # component, so branching on all vertices of one of them is complete.
        # Branch i may not delete the candidates tried before it: solutions
        # containing those were covered by the earlier siblings.
        self.stats.fallback_nodes += 1
        self._enter(depth)
        red = self._reduce(g, k)
        if red.is_no:
            return None
        forced = set(red.trace.forced_vertices())
        if forced & keep:
            return None
        g2, k2 = red.instance.graph, red.instance.k
        over = over_excess_components(g2, self.r)
        if not over:
            return lift_solution(set(), red.trace, Instance(g, self.r, k))
        if len(over) > k2:
            return None
        tried = set(keep)
        for v in branch_order(g2, over[0].component):
            if v in keep:
                continue
            sub = self.exhaust(g2.without([v]), k2 - 1, depth + 1, frozenset(tried))
            if sub is not None:
                return lift_solution(sub | {v}, red.trace, Instance(g, self.r, k))
            tried.add(v)
        return None


def branch_order(g: MultiGraph, vertices) -> List[int]:
    """``vertices`` by non-increasing degree, then ascending id."""
    return sorted(vertices, key=lambda v: (-g.degree(v), v))


def _check_params(r: int, k: int) -> None:
    check_r(r)
    if isinstance(k, bool) or not isinstance(k, int) or k < 0:
        raise InvalidParameterError(f"k must be a non-negative integer, got {k!r}")


def _finish(g: MultiGraph, r: int, k: int, x: Optional[Set[int]]) -> Optional[Solution]:
    if x is None:
        return None
    rest = g.without(x)
    cert = component_excess(rest)
    if len(x) > k or any(c.excess > r for c in cert):
        raise InconsistencyError(f"solver produced invalid deletion set {sorted(x)}")
    return Solution(tuple(sorted(x)), cert)


def _child(args) -> Tuple[Optional[Set[int]], SolverStats]:
    g, r, k, depth, mode, keep = args
    s = _Search(r)
    if mode == "solve":
        x = s.solve(g, k, depth)
    else:
        x = s.exhaust(g, k, depth, keep)
    return x, s.stats


def _solve_parallel(s: _Search, g: MultiGraph, k: int, threads: int) -> Optional[Set[int]]:
    """Root node with its children farmed out to worker processes.

    The returned set equals the sequential one: children are examined in
    branch order and the first success wins. Statistics differ because
    siblings after the winner may have been explored too.
    """
    s.stats.branch_nodes += 1
    if is_r_pseudoforest(g, s.r):
        return set()
    if k <= 0:
        return None
    red = s._reduce(g, k)
    if red.is_no:
        return None
    g2, k2 = red.instance.graph, red.instance.k
    forced = set(red.trace.forced_vertices())
    if g2.n() <= FALLBACK_FACTOR * k2:
        s.stats.fallback_calls += 1
        s.stats.fallback_nodes += 1
        red = s._reduce(g2, k2)
        if red.is_no:
            return None
        forced |= set(red.trace.forced_vertices())
        g2, k2 = red.instance.graph, red.instance.k
        over = over_excess_components(g2, s.r)
        if not over:
            return forced
        if len(over) > k2:
            return None
        order = branch_order(g2, over[0].component)
        mode = "exhaust"
    else:
        order = top_degree_set(g2, BRANCH_FACTOR * k2)
        mode = "solve"
    jobs = [
        (g2.without([u]), s.r, k2 - 1, 1, mode,
         frozenset(order[:i]) if mode == "exhaust" else frozenset())
        for i, u in enumerate(order)
    ]
    with ProcessPoolExecutor(max_workers=threads) as pool:
        futures = [pool.submit(_child, job) for job in jobs]
        try:
            for u, fut in zip(order, futures):
                sub, stats = fut.result()
                s.stats.merge(stats)
                if sub is not None:
                    return sub | {u} | forced
        finally:
            for fut in futures:
                fut.cancel()
    return None


def solve_decision(instance: Instance, threads: int = 1) -> Decision:
    """Decide whether at most ``instance.k`` deletions leave an r-pseudoforest."""
    g, r, k = instance.graph, instance.r, instance.k
    _check_params(r, k)
    s = _Search(r)
    if threads > 1:
        x = _solve_parallel(s, g, k, threads)
    else:
        x = s.solve(g, k)
    log.debug("k=%d answer=%s stats=%s", k, x is not None, s.stats)
    return Decision(k, _finish(g, r, k, x), s.stats)


def fallback_exact(instance: Instance) -> Decision:
    """Exhaustive search, correct for any size but meant for small reduced graphs."""
    g, r, k = instance.graph, instance.r, instance.k
    _check_params(r, k)
    s = _Search(r)
    x = s.fallback(g, k, 0)
    return Decision(k, _finish(g, r, k, x), s.stats)


def solve_minimize(g: MultiGraph, r: int, k_max: int, threads: int = 1) -> Minimum:
    """Smallest k <= k_max with a yes answer, by scanning k = 0, 1, ..."""
    _check_params(r, k_max)
    total = SolverStats()
    runs = []
    for k in range(k_max + 1):
        d = solve_decision(Instance(g, r, k), threads=threads)
        total.merge(d.stats)
        runs.append(d.stats)
        if d.answer:
            return Minimum(k_max, k, d.solution, total, runs)
    return Minimum(k_max, None, None, total, runs)
