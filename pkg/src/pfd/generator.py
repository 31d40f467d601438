"""Seeded instance generators.

Randomness comes from :class:`XorShift64Star`, fully specified by its
recurrence so the same seed gives the same instance on any platform or in
any language:

    state0 = splitmix64(seed)            (or 0x9E3779B97F4A7C15 if that is 0)
    x ^= x >> 12;  x ^= x << 25;  x ^= x >> 27        (mod 2**64)
    output = x * 0x2545F4914F6CDD1D                   (mod 2**64)

``below(n)`` draws ``output`` until ``output >= (2**64 - n) % n`` and
returns ``output % n``; ``random()`` is ``(output >> 11) / 2**53``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Tuple

from .errors import InvalidParameterError
from .multigraph import MultiGraph
from .recognition import check_r

MASK64 = (1 << 64) - 1
GOLDEN64 = 0x9E3779B97F4A7C15
NEW_TREE_RATE = 0.1


def splitmix64(x: int) -> int:
    z = (x + GOLDEN64) & MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


class XorShift64Star:
    def __init__(self, seed: int) -> None:
        self.state = splitmix64(seed & MASK64) or GOLDEN64

    def next_u64(self) -> int:
        x = self.state
        x ^= x >> 12
        x ^= (x << 25) & MASK64
        x ^= x >> 27
        self.state = x
        return (x * 0x2545F4914F6CDD1D) & MASK64

    def below(self, n: int) -> int:
        if n <= 0:
            raise ValueError("below() needs a positive bound")
        threshold = ((1 << 64) - n) % n
        while True:
            x = self.next_u64()
            if x >= threshold:
                return x % n

    def random(self) -> float:
        return (self.next_u64() >> 11) * (1.0 / (1 << 53))

    def chance(self, p: float) -> bool:
        return self.random() < p


@dataclass(frozen=True)
class GenSpec:
    seed: int
    n: int
    edge_budget: int = 0
    loop_rate: float = 0.0
    multi_rate: float = 0.0
    r: int = 1
    planted_k: int = 0

    def __post_init__(self) -> None:
        for name in ("n", "edge_budget", "planted_k"):
            if getattr(self, name) < 0:
                raise InvalidParameterError(f"{name} must be >= 0")
        for name in ("loop_rate", "multi_rate"):
            if not 0.0 <= getattr(self, name) <= 1.0:
                raise InvalidParameterError(f"{name} must lie in [0, 1]")
        check_r(self.r)


def random_multigraph(spec: GenSpec) -> MultiGraph:
    """``spec.n`` vertices and ``spec.edge_budget`` edges.

    Each edge is a loop with probability ``loop_rate``; otherwise it repeats
    an earlier non-loop edge with probability ``multi_rate``, or joins a
    uniform pair of distinct vertices.
    """
    rng = XorShift64Star(spec.seed)
    n = spec.n
    g = MultiGraph(n)
    if n == 0:
        return g
    pairs: List[Tuple[int, int]] = []
    for _ in range(spec.edge_budget):
        if n == 1 or rng.chance(spec.loop_rate):
            v = rng.below(n)
            g.add_edge(v, v)
        elif pairs and rng.chance(spec.multi_rate):
            u, v = pairs[rng.below(len(pairs))]
            g.add_edge(u, v)
        else:
            u = rng.below(n)
            v = rng.below(n - 1)
            if v >= u:
                v += 1
            g.add_edge(u, v)
            pairs.append((min(u, v), max(u, v)))
    return g


def random_pseudoforest(spec: GenSpec, rng: XorShift64Star) -> MultiGraph:
    """Random forest on ``spec.n`` vertices plus exactly ``r`` extra edges per tree."""
    n, r = spec.n, spec.r
    g = MultiGraph(n)
    root = list(range(n))
    tree_edges: dict = {}
    for i in range(1, n):
        if rng.chance(NEW_TREE_RATE):
            continue
        p = rng.below(i)
        g.add_edge(p, i)
        root[i] = root[p]
        tree_edges.setdefault(root[i], []).append((p, i))
    comps: dict = {}
    for v in range(n):
        comps.setdefault(root[v], []).append(v)
    for rt in sorted(comps):
        comp = comps[rt]
        edges = tree_edges.get(rt, [])
        for _ in range(r):
            if len(comp) == 1 or rng.chance(spec.loop_rate):
                v = comp[rng.below(len(comp))]
                g.add_edge(v, v)
            elif rng.chance(spec.multi_rate):
                g.add_edge(*edges[rng.below(len(edges))])
            else:
                a = rng.below(len(comp))
                b = rng.below(len(comp) - 1)
                if b >= a:
                    b += 1
                g.add_edge(comp[a], comp[b])
    return g


def planted_instance(spec: GenSpec) -> Tuple[MultiGraph, Tuple[int, ...]]:
    """An r-pseudoforest on ``spec.n`` vertices plus ``planted_k`` extra vertices.

    The extra vertices share ``edge_budget`` edges between them. Each edge
    is a loop with probability ``loop_rate``, repeats the previous target with
    probability ``multi_rate``, and otherwise picks its far end with
    probability proportional to 1 + the number of times that vertex was
    already an endpoint, so the planted vertices and their favourite targets
    carry the largest degrees. Deleting them restores the base graph, hence
    the optimum is at most ``planted_k``.
    """
    rng = XorShift64Star(spec.seed)
    g = random_pseudoforest(spec, rng)
    # one entry per vertex plus one per edge endpoint: a uniform draw is degree-biased
    pool = list(g.vertices())
    for u, v, c in g.edges():
        pool.extend([u, v] * c)
    planted = []
    k = spec.planted_k
    for j in range(k):
        p = g.add_vertex()
        planted.append(p)
        pool.append(p)
        budget = spec.edge_budget // k + (1 if j < spec.edge_budget % k else 0)
        last = None
        for _ in range(budget):
            if rng.chance(spec.loop_rate):
                t = p
            elif last is not None and rng.chance(spec.multi_rate):
                t = last
            else:
                t = pool[rng.below(len(pool))]
                if t == p:
                    t = rng.below(spec.n) if spec.n else p
            g.add_edge(p, t)
            if t != p:
                pool.append(t)
                last = t
    return g, tuple(planted)
