"""Text format for instances.

::

    c any comment
    p pfd <n> <m> <r> <k>
    e <u> <v>          (exactly m lines, 1-based ids, u == v is a loop)

Repeated ``e`` lines accumulate multiplicity. Blank lines are ignored.
"""

from __future__ import annotations

from typing import Iterable, List, Optional

from .errors import ParseError
from .multigraph import MultiGraph
from .reducer import Instance


def _ints(parts: List[str], lineno: int) -> List[int]:
    try:
        return [int(p) for p in parts]
    except ValueError:
        raise ParseError(f"expected integers, got {' '.join(parts)!r}", lineno) from None


def parse_instance(text: str) -> Instance:
    g: Optional[MultiGraph] = None
    n = m = r = k = 0
    seen = 0
    for lineno, raw in enumerate(text.splitlines(), 1):
        parts = raw.split()
        if not parts or parts[0] == "c":
            continue
        tag = parts[0]
        if tag == "p":
            if g is not None:
                raise ParseError("duplicate header", lineno)
            if len(parts) != 6 or parts[1] != "pfd":
                raise ParseError("header must read 'p pfd <n> <m> <r> <k>'", lineno)
            n, m, r, k = _ints(parts[2:], lineno)
            if n < 0 or m < 0:
                raise ParseError("n and m must be non-negative", lineno)
            if r < 1:
                raise ParseError(f"r must be at least 1, got {r}", lineno)
            if k < 0:
                raise ParseError(f"k must be non-negative, got {k}", lineno)
            g = MultiGraph(n)
        elif tag == "e":
            if g is None:
                raise ParseError("edge line before header", lineno)
            if len(parts) != 3:
                raise ParseError("edge line must read 'e <u> <v>'", lineno)
            u, v = _ints(parts[1:], lineno)
            for x in (u, v):
                if not 1 <= x <= n:
                    raise ParseError(f"vertex {x} out of range 1..{n}", lineno)
            seen += 1
            if seen > m:
                raise ParseError(f"more than the declared {m} edges", lineno)
            g.add_edge(u - 1, v - 1)
        else:
            raise ParseError(f"unknown line type {tag!r}", lineno)
    if g is None:
        raise ParseError("missing 'p pfd' header")
    if seen != m:
        raise ParseError(f"header declares {m} edges, found {seen}")
    return Instance(g, r, k)


def render_instance(
    inst: Instance, comments: Iterable[str] = ()
) -> str:
    """Inverse of :func:`parse_instance`. Live vertices are renumbered
    ``1..n`` in ascending id order."""
    g = inst.graph
    index = {v: i for i, v in enumerate(g.vertices(), 1)}
    lines = [f"c {c}" for c in comments]
    lines.append(f"p pfd {g.n()} {g.m()} {inst.r} {inst.k}")
    for u, v, c in g.edges():
        lines.extend([f"e {index[u]} {index[v]}"] * c)
    return "\n".join(lines) + "\n"
