"""Reduction rules for r-pseudoforest deletion and their replayable trace.

Rules, in priority order (lower number wins, candidates scanned in
ascending id order):

1. remove a component that already is an r-pseudoforest;
2. a vertex with at least r+1 loops is in every solution: delete it, k -= 1;
3. cap the multiplicity of a non-loop pair at r+2;
4. delete a vertex of degree at most 1;
5. bypass a loop-free vertex of degree 2;
6. k < 0 means the instance is a no-instance (checked before every step).
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from typing import Callable, Dict, Iterable, List, Optional, Set, Tuple, Union

from .errors import InconsistencyError, ParseError, PreconditionError
from .multigraph import MultiGraph
from .recognition import check_r, component_excess, is_r_pseudoforest


@dataclass
class Instance:
    graph: MultiGraph
    r: int
    k: int

    def __post_init__(self) -> None:
        check_r(self.r)

    def copy(self) -> "Instance":
        return Instance(self.graph.copy(), self.r, self.k)


# -- trace events ----------------------------------------------------------


@dataclass(frozen=True)
class ComponentRemoved:
    vertices: Tuple[int, ...]
    rule = 1

    def args(self) -> Tuple[int, ...]:
        return self.vertices


@dataclass(frozen=True)
class ForcedVertex:
    v: int
    rule = 2

    def args(self) -> Tuple[int, ...]:
        return (self.v,)


@dataclass(frozen=True)
class MultiplicityCapped:
    u: int
    v: int
    old: int
    new: int
    rule = 3

    def args(self) -> Tuple[int, ...]:
        return (self.u, self.v, self.old, self.new)


@dataclass(frozen=True)
class LowDegreeRemoved:
    v: int
    rule = 4

    def args(self) -> Tuple[int, ...]:
        return (self.v,)


@dataclass(frozen=True)
class Bypassed:
    v: int
    u: int
    w: int
    rule = 5

    def args(self) -> Tuple[int, ...]:
        return (self.v, self.u, self.w)


Event = Union[ComponentRemoved, ForcedVertex, MultiplicityCapped, LowDegreeRemoved, Bypassed]

# which argument positions of an event are vertex ids (the rest are counts)
_VERTEX_ARGS = {1: None, 2: 1, 3: 2, 4: 1, 5: 3}


def _event_from_args(rule: int, args: List[int]) -> Event:
    if rule == 1:
        return ComponentRemoved(tuple(args))
    if rule == 2 and len(args) == 1:
        return ForcedVertex(*args)
    if rule == 3 and len(args) == 4:
        return MultiplicityCapped(*args)
    if rule == 4 and len(args) == 1:
        return LowDegreeRemoved(*args)
    if rule == 5 and len(args) == 3:
        return Bypassed(*args)
    raise ValueError(f"bad arguments for RULE{rule}: {args}")


@dataclass
class ReductionTrace:
    events: List[Event] = field(default_factory=list)

    def append(self, event: Event) -> None:
        self.events.append(event)

    def __iter__(self):
        return iter(self.events)

    def __len__(self) -> int:
        return len(self.events)

    def forced_vertices(self) -> List[int]:
        return [e.v for e in self.events if isinstance(e, ForcedVertex)]

    def counts(self) -> Dict[int, int]:
        out = {i: 0 for i in range(1, 6)}
        for e in self.events:
            out[e.rule] += 1
        return out

    def to_text(self, base: int = 0) -> str:
        """One ``RULE<i> <args...>`` line per event; vertex ids shifted by ``base``."""
        lines = []
        for e in self.events:
            args = list(e.args())
            nv = _VERTEX_ARGS[e.rule]
            nv = len(args) if nv is None else nv
            args[:nv] = [a + base for a in args[:nv]]
            lines.append(" ".join([f"RULE{e.rule}"] + [str(a) for a in args]))
        return "\n".join(lines) + ("\n" if lines else "")

    @classmethod
    def from_text(cls, text: str, base: int = 0) -> "ReductionTrace":
        trace = cls()
        for lineno, line in enumerate(text.splitlines(), 1):
            parts = line.split()
            if not parts:
                continue
            head = parts[0]
            try:
                if not head.startswith("RULE"):
                    raise ValueError(f"unknown event {head!r}")
                rule = int(head[4:])
                if rule not in _VERTEX_ARGS:
                    raise ValueError(f"unknown rule {rule}")
                args = [int(a) for a in parts[1:]]
                nv = _VERTEX_ARGS[rule]
                nv = len(args) if nv is None else nv
                args[:nv] = [a - base for a in args[:nv]]
                trace.append(_event_from_args(rule, args))
            except ValueError as exc:
                raise ParseError(str(exc), lineno) from None
        return trace

    def replay(self, instance: Instance) -> Instance:
        """Re-apply the events to a copy of ``instance`` and return the result."""
        g = instance.graph.copy()
        k = instance.k
        for e in self.events:
            if isinstance(e, ComponentRemoved):
                g.delete_vertices(e.vertices)
            elif isinstance(e, ForcedVertex):
                g.delete_vertex(e.v)
                k -= 1
            elif isinstance(e, MultiplicityCapped):
                if g.multiplicity(e.u, e.v) != e.old:
                    raise PreconditionError(f"trace mismatch at {e}")
                g.set_multiplicity(e.u, e.v, e.new)
            elif isinstance(e, LowDegreeRemoved):
                g.delete_vertex(e.v)
            else:
                if g.bypass(e.v) != (e.u, e.w):
                    raise PreconditionError(f"trace mismatch at {e}")
        return Instance(g, instance.r, k)


# -- single rules ------------------------------------------------------------


def apply_rule_1(inst: Instance) -> Optional[ComponentRemoved]:
    for ce in component_excess(inst.graph):
        if ce.excess <= inst.r:
            inst.graph.delete_vertices(ce.component)
            return ComponentRemoved(ce.component)
    return None


def apply_rule_2(inst: Instance) -> Optional[ForcedVertex]:
    g = inst.graph
    for v in g.vertices():
        if g.loops_at(v) >= inst.r + 1:
            g.delete_vertex(v)
            inst.k -= 1
            return ForcedVertex(v)
    return None


def apply_rule_3(inst: Instance) -> Optional[MultiplicityCapped]:
    cap = inst.r + 2
    g = inst.graph
    for u, v, c in g.edges():
        if u != v and c > cap:
            g.set_multiplicity(u, v, cap)
            return MultiplicityCapped(u, v, c, cap)
    return None


def apply_rule_4(inst: Instance) -> Optional[LowDegreeRemoved]:
    g = inst.graph
    for v in g.vertices():
        if g.degree(v) <= 1:
            g.delete_vertex(v)
            return LowDegreeRemoved(v)
    return None


def apply_rule_5(inst: Instance) -> Optional[Bypassed]:
    g = inst.graph
    for v in g.vertices():
        if g.degree(v) == 2 and not g.loops_at(v):
            u, w = g.bypass(v)
            return Bypassed(v, u, w)
    return None


def apply_rule_6(inst: Instance) -> bool:
    """True when the instance is a definite no (negative budget)."""
    return inst.k < 0


RULES: Tuple[Callable[[Instance], Optional[Event]], ...] = (
    apply_rule_1,
    apply_rule_2,
    apply_rule_3,
    apply_rule_4,
    apply_rule_5,
)


# -- exhaustive reduction ----------------------------------------------------


@dataclass
class Reduction:
    instance: Instance
    trace: ReductionTrace
    is_no: bool = False


def reduce_naive(instance: Instance) -> Reduction:
    """Rescan all rules after every step. Slow; kept as a reference for :func:`reduce`."""
    inst = instance.copy()
    trace = ReductionTrace()
    while True:
        if apply_rule_6(inst):
            return Reduction(inst, trace, True)
        for rule in RULES:
            event = rule(inst)
            if event is not None:
                trace.append(event)
                break
        else:
            return Reduction(inst, trace)


def reduce(instance: Instance) -> Reduction:
    """Exhaustively apply the rules to a copy of ``instance``.

    Produces the same trace as :func:`reduce_naive`. Instead of rescanning,
    candidates for rules 2-5 sit in lazily validated min-heaps that are fed
    whenever a vertex's degree, loop count or multiplicity changes, and
    components are recomputed only after rule 2 or 3 fired (rules 4 and 5
    never change a component's excess, and rule 1 leaves other components
    untouched).
    """
    check_r(instance.r)
    g = instance.graph.copy()
    r = instance.r
    k = instance.k
    trace = ReductionTrace()
    cap = r + 2

    verts = g.vertices()
    h2 = [v for v in verts if g.loops_at(v) > r]
    h3 = [(u, v) for u, v, c in g.edges() if u != v and c > cap]
    h4 = [v for v in verts if g.degree(v) <= 1]
    h5 = [v for v in verts if g.degree(v) == 2]
    for h in (h2, h3, h4, h5):
        heapq.heapify(h)

    def touch(vs: Iterable[int]) -> None:
        for x in vs:
            if x in g:
                d = g.degree(x)
                if d <= 1:
                    heapq.heappush(h4, x)
                elif d == 2:
                    heapq.heappush(h5, x)

    def pop(h: list, ok: Callable) -> Optional[object]:
        while h:
            if ok(h[0]):
                return heapq.heappop(h)
            heapq.heappop(h)
        return None

    ok2 = lambda v: v in g and g.loops_at(v) > r
    ok3 = lambda p: p[0] in g and p[1] in g and g.multiplicity(p[0], p[1]) > cap
    ok4 = lambda v: v in g and g.degree(v) <= 1
    ok5 = lambda v: v in g and g.degree(v) == 2 and not g.loops_at(v)

    comps_dirty = True
    while True:
        if k < 0:
            return Reduction(Instance(g, r, k), trace, True)
        if comps_dirty:
            for ce in component_excess(g):
                if ce.excess <= r:
                    g.delete_vertices(ce.component)
                    trace.append(ComponentRemoved(ce.component))
            comps_dirty = False
        v = pop(h2, ok2)
        if v is not None:
            nbrs = list(g.incident(v))
            g.delete_vertex(v)
            k -= 1
            trace.append(ForcedVertex(v))
            touch(nbrs)
            comps_dirty = True
            continue
        p = pop(h3, ok3)
        if p is not None:
            u, w = p
            old = g.multiplicity(u, w)
            g.set_multiplicity(u, w, cap)
            trace.append(MultiplicityCapped(u, w, old, cap))
            comps_dirty = True
            continue
        v = pop(h4, ok4)
        if v is not None:
            nbrs = list(g.incident(v))
            g.delete_vertex(v)
            trace.append(LowDegreeRemoved(v))
            touch(nbrs)
            continue
        v = pop(h5, ok5)
        if v is not None:
            u, w = g.bypass(v)
            trace.append(Bypassed(v, u, w))
            if u == w:
                if g.loops_at(u) > r:
                    heapq.heappush(h2, u)
            elif g.multiplicity(u, w) > cap:
                heapq.heappush(h3, (u, w))
            continue
        return Reduction(Instance(g, r, k), trace)


def reduced_violations(inst: Instance) -> List[str]:
    """Ways in which ``inst`` fails to be a fixed point of the rules (empty if reduced)."""
    g, r = inst.graph, inst.r
    out = []
    for u, v, c in g.edges():
        if u != v and c > r + 2:
            out.append(f"multiplicity {c} on {u}-{v} exceeds {r + 2}")
    for v in g.vertices():
        if g.degree(v) < 3:
            out.append(f"vertex {v} has degree {g.degree(v)} < 3")
        if g.loops_at(v) > r:
            out.append(f"vertex {v} has {g.loops_at(v)} loops > {r}")
    for ce in component_excess(g):
        if ce.excess <= r:
            out.append(f"component at {ce.component[0]} is an r-pseudoforest")
    return out


def lift_solution(
    x_reduced: Iterable[int], trace: ReductionTrace, original: Instance
) -> Set[int]:
    """Turn a solution of the reduced instance into one of ``original``.

    Vertex ids survive reduction unchanged, so only the vertices forced by
    rule 2 need adding. The result is re-verified against ``original``.
    """
    x = set(x_reduced) | set(trace.forced_vertices())
    if len(x) > original.k:
        raise InconsistencyError(
            f"lifted solution has {len(x)} vertices, budget is {original.k}"
        )
    if not is_r_pseudoforest(original.graph.without(x), original.r):
        raise InconsistencyError(f"lifted set {sorted(x)} is not a solution")
    return x
