"""Recognise r-pseudoforests by per-component cyclomatic excess.

A connected multigraph with ``m`` edges and ``n`` vertices becomes a tree
after exactly ``m - n + 1`` edge deletions, so a graph is an r-pseudoforest
iff every component has excess at most ``r``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Tuple

from .errors import InvalidParameterError
from .multigraph import MultiGraph


@dataclass(frozen=True)
class ComponentExcess:
    component: Tuple[int, ...]
    excess: int


def check_r(r: int) -> None:
    if isinstance(r, bool) or not isinstance(r, int) or r < 1:
        raise InvalidParameterError(f"r must be a positive integer, got {r!r}")


def component_excess(g: MultiGraph) -> List[ComponentExcess]:
    out = []
    for comp in g.connected_components():
        half_deg = sum(g.degree(v) for v in comp)
        out.append(ComponentExcess(tuple(comp), half_deg // 2 - len(comp) + 1))
    return out


def over_excess_components(g: MultiGraph, r: int) -> List[ComponentExcess]:
    """Components whose excess exceeds ``r``, in component order."""
    check_r(r)
    return [c for c in component_excess(g) if c.excess > r]


def is_r_pseudoforest(g: MultiGraph, r: int) -> bool:
    check_r(r)
    return all(c.excess <= r for c in component_excess(g))
