"""Undirected multigraph with loops and edge multiplicities.

A loop at ``v`` contributes 2 to ``degree(v)`` and 1 to the edge count.
Vertex ids are dense non-negative integers handed out by a monotone
counter; a deleted id is never issued again by the same graph.
"""

from __future__ import annotations

from typing import Dict, Iterable, Iterator, List, Tuple

from .errors import InvalidVertexError, PreconditionError

Edge = Tuple[int, int, int]


class MultiGraph:
    __slots__ = ("_adj", "_loops", "_deg", "_m", "_next_id")

    def __init__(self, n: int = 0) -> None:
        self._adj: Dict[int, Dict[int, int]] = {}
        self._loops: Dict[int, int] = {}
        self._deg: Dict[int, int] = {}
        self._m = 0
        self._next_id = 0
        for _ in range(n):
            self.add_vertex()

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Tuple[int, int]]) -> "MultiGraph":
        """Graph on vertices ``0..n-1``; repeated pairs accumulate multiplicity."""
        g = cls(n)
        for u, v in edges:
            g.add_edge(u, v)
        return g

    # -- construction -----------------------------------------------------

    def add_vertex(self) -> int:
        v = self._next_id
        self._next_id += 1
        self._adj[v] = {}
        self._deg[v] = 0
        return v

    def add_edge(self, u: int, v: int, count: int = 1) -> None:
        self._check(u)
        self._check(v)
        if count < 1:
            raise PreconditionError(f"edge count must be positive, got {count}")
        self._m += count
        if u == v:
            self._loops[u] = self._loops.get(u, 0) + count
            self._deg[u] += 2 * count
            return
        au = self._adj[u]
        au[v] = au.get(v, 0) + count
        av = self._adj[v]
        av[u] = av.get(u, 0) + count
        self._deg[u] += count
        self._deg[v] += count

    def set_multiplicity(self, u: int, v: int, count: int) -> None:
        """Set the number of parallel ``uv`` edges (``u != v``) to ``count``."""
        self._check(u)
        self._check(v)
        if u == v:
            raise PreconditionError("set_multiplicity is for non-loop pairs")
        if count < 0:
            raise PreconditionError(f"multiplicity must be non-negative, got {count}")
        old = self._adj[u].get(v, 0)
        delta = count - old
        if count:
            self._adj[u][v] = count
            self._adj[v][u] = count
        elif old:
            del self._adj[u][v]
            del self._adj[v][u]
        self._deg[u] += delta
        self._deg[v] += delta
        self._m += delta

    def delete_vertex(self, v: int) -> None:
        self._check(v)
        for w, c in self._adj.pop(v).items():
            del self._adj[w][v]
            self._deg[w] -= c
            self._m -= c
        self._m -= self._loops.pop(v, 0)
        del self._deg[v]

    def delete_vertices(self, vs: Iterable[int]) -> None:
        for v in vs:
            self.delete_vertex(v)

    def bypass(self, v: int) -> Tuple[int, int]:
        """Delete the degree-2, loop-free vertex ``v`` and join its two neighbours.

        Returns the joined pair ``(u, w)`` with ``u <= w``. When both edge
        slots at ``v`` go to the same vertex the new edge is a loop there.
        """
        self._check(v)
        if self._loops.get(v, 0):
            raise PreconditionError(f"cannot bypass vertex {v}: it carries a loop")
        if self._deg[v] != 2:
            raise PreconditionError(
                f"cannot bypass vertex {v}: degree is {self._deg[v]}, not 2"
            )
        ends: List[int] = []
        for w, c in self._adj[v].items():
            ends.extend([w] * c)
        u, w = sorted(ends)
        self.delete_vertex(v)
        self.add_edge(u, w)
        return u, w

    # -- queries ----------------------------------------------------------

    def _check(self, v: int) -> None:
        if v not in self._adj:
            raise InvalidVertexError(v)

    def __contains__(self, v: object) -> bool:
        return v in self._adj

    def __len__(self) -> int:
        return len(self._adj)

    def n(self) -> int:
        return len(self._adj)

    def m(self) -> int:
        return self._m

    @property
    def next_id(self) -> int:
        """The id the next :meth:`add_vertex` call will return."""
        return self._next_id

    def degree(self, v: int) -> int:
        self._check(v)
        return self._deg[v]

    def loops_at(self, v: int) -> int:
        self._check(v)
        return self._loops.get(v, 0)

    def multiplicity(self, u: int, v: int) -> int:
        self._check(u)
        self._check(v)
        if u == v:
            return self._loops.get(u, 0)
        return self._adj[u].get(v, 0)

    def vertices(self) -> List[int]:
        return sorted(self._adj)

    def neighbors(self, v: int) -> List[int]:
        """Distinct non-loop neighbours of ``v`` in ascending order."""
        self._check(v)
        return sorted(self._adj[v])

    def incident(self, v: int) -> Dict[int, int]:
        """Read-only view ``{neighbour: multiplicity}`` of the non-loop edges at ``v``."""
        self._check(v)
        return self._adj[v]

    def degrees(self) -> Dict[int, int]:
        return dict(self._deg)

    def edges(self) -> Iterator[Edge]:
        """Yield ``(u, v, multiplicity)``: non-loop pairs ascending by ``(u, v)``
        with ``u < v``, then loops ``(v, v, count)`` ascending by ``v``."""
        for u in sorted(self._adj):
            for v in sorted(w for w in self._adj[u] if w > u):
                yield u, v, self._adj[u][v]
        for v in sorted(self._loops):
            yield v, v, self._loops[v]

    def connected_components(self) -> List[List[int]]:
        """Vertex sets of the components, each sorted, ordered by smallest member."""
        seen = set()
        comps = []
        for s in sorted(self._adj):
            if s in seen:
                continue
            seen.add(s)
            stack = [s]
            comp = []
            while stack:
                x = stack.pop()
                comp.append(x)
                for y in self._adj[x]:
                    if y not in seen:
                        seen.add(y)
                        stack.append(y)
            comp.sort()
            comps.append(comp)
        return comps

    # -- copies -----------------------------------------------------------

    def copy(self) -> "MultiGraph":
        g = MultiGraph.__new__(MultiGraph)
        g._adj = {v: dict(nb) for v, nb in self._adj.items()}
        g._loops = dict(self._loops)
        g._deg = dict(self._deg)
        g._m = self._m
        g._next_id = self._next_id
        return g

    def induced_copy(self, keep: Iterable[int]) -> "MultiGraph":
        """New graph ``G[keep]``; vertex ids are preserved."""
        keep = set(keep)
        for v in keep:
            self._check(v)
        g = MultiGraph.__new__(MultiGraph)
        g._adj = {}
        g._deg = {}
        g._loops = {}
        g._m = 0
        for v in keep:
            nb = {w: c for w, c in self._adj[v].items() if w in keep}
            g._adj[v] = nb
            loops = self._loops.get(v, 0)
            if loops:
                g._loops[v] = loops
            d = sum(nb.values())
            g._deg[v] = d + 2 * loops
            g._m += loops
            g._m += sum(c for w, c in nb.items() if w > v)
        g._next_id = self._next_id
        return g

    def without(self, removed: Iterable[int]) -> "MultiGraph":
        """Copy of the graph with ``removed`` deleted."""
        g = self.copy()
        g.delete_vertices(removed)
        return g

    # -- comparison -------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MultiGraph):
            return NotImplemented
        return (
            self._adj == other._adj
            and self._loops == other._loops
        )

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        return f"MultiGraph(n={self.n()}, m={self._m})"
