"""Brute-force ground truth: try every vertex subset, smallest first.

Only :mod:`pfd.multigraph` and :mod:`pfd.recognition` are used here so the
oracle stays independent of the reducer and the solver.
"""

from __future__ import annotations

from math import comb
from typing import Iterator, List, Optional, Set, Tuple

from .errors import GuardError
from .multigraph import MultiGraph
from .recognition import check_r, is_r_pseudoforest

MAX_VERTICES = 22
MAX_SUBSETS = 1 << 22


def colex_subsets(items: List[int], size: int) -> Iterator[Tuple[int, ...]]:
    """``size``-subsets of ``items`` in colexicographic order (Gosper's hack)."""
    n = len(items)
    if size > n:
        return
    if size == 0:
        yield ()
        return
    mask = (1 << size) - 1
    limit = 1 << n
    while mask < limit:
        yield tuple(items[i] for i in range(n) if mask >> i & 1)
        low = mask & -mask
        ripple = mask + low
        mask = (((ripple ^ mask) >> 2) // low) | ripple


def _guard(g: MultiGraph, k_cap: Optional[int]) -> int:
    n = g.n()
    cap = n if k_cap is None else min(max(k_cap, 0), n)
    if n <= MAX_VERTICES:
        return cap
    work = sum(comb(n, i) for i in range(cap + 1))
    if work > MAX_SUBSETS:
        raise GuardError(
            f"refusing to enumerate {work} subsets (n={n}, k_cap={k_cap}); "
            f"the oracle handles n <= {MAX_VERTICES} or at most {MAX_SUBSETS} subsets"
        )
    return cap


def _is_solution(g: MultiGraph, verts: List[int], x: Tuple[int, ...], r: int) -> bool:
    keep = set(verts).difference(x)
    return is_r_pseudoforest(g.induced_copy(keep), r)


def oracle_min_deletion(
    g: MultiGraph, r: int, k_cap: Optional[int] = None
) -> Optional[Tuple[int, Tuple[int, ...]]]:
    """``(opt, witness)`` with ``opt <= k_cap``, or ``None`` if no such set exists."""
    check_r(r)
    cap = _guard(g, k_cap)
    verts = g.vertices()
    for size in range(cap + 1):
        for x in colex_subsets(verts, size):
            if _is_solution(g, verts, x, r):
                return size, x
    return None


def oracle_decide(g: MultiGraph, r: int, k: int) -> bool:
    return oracle_min_deletion(g, r, k) is not None


def oracle_all_min_solutions(
    g: MultiGraph, r: int, k_cap: Optional[int] = None
) -> Set[Tuple[int, ...]]:
    """Every minimum-size solution (empty set of sets if the optimum exceeds ``k_cap``)."""
    check_r(r)
    cap = _guard(g, k_cap)
    verts = g.vertices()
    for size in range(cap + 1):
        found = {x for x in colex_subsets(verts, size) if _is_solution(g, verts, x, r)}
        if found:
            return found
    return set()
