"""Perfect matchings, 2-factors, oddness and balanced matchings."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable

from .errors import NotBalanced, NotPerfect, NotSubset, ResourceCap
from .graph import CubicGraph, Walk, edge_mask

DEFAULT_MATCHING_CAP = 10**7

Matching = frozenset


@dataclass(frozen=True)
class TwoFactor:
    """Cycle decomposition of ``G - M``; each cycle is a closed walk."""

    matching: frozenset[int]
    cycles: tuple[Walk, ...]

    @property
    def odd_cycles(self) -> tuple[Walk, ...]:
        return tuple(c for c in self.cycles if len(c) % 2)

    def cycle_of(self) -> dict[int, int]:
        """Vertex -> index of its cycle."""
        return {v: i for i, c in enumerate(self.cycles) for v in c.vertices}


def is_matching(g: CubicGraph, edges: Iterable[int]) -> bool:
    seen: set[int] = set()
    for e in edges:
        u, v = g.edges[e]
        if u in seen or v in seen:
            return False
        seen.update((u, v))
    return True


def is_perfect_matching(g: CubicGraph, edges: Iterable[int]) -> bool:
    edges = list(edges)
    return len(edges) * 2 == g.n and is_matching(g, edges)


def enumerate_perfect_matchings(
    g: CubicGraph, cap: int = DEFAULT_MATCHING_CAP
) -> list[frozenset[int]]:
    """All perfect matchings, in lexicographic order of sorted edge ids.

    Branches on the lowest uncovered vertex, trying its edges in id order.
    """
    return list(_enumerate(g, cap))


@lru_cache(maxsize=64)
def _enumerate(g: CubicGraph, cap: int) -> tuple[frozenset[int], ...]:
    out: list[frozenset[int]] = []
    covered = [False] * g.n
    chosen: list[int] = []

    def lowest_uncovered(start: int) -> int:
        for v in range(start, g.n):
            if not covered[v]:
                return v
        return -1

    def rec(start: int) -> None:
        v = lowest_uncovered(start)
        if v < 0:
            out.append(frozenset(chosen))
            if len(out) > cap:
                raise ResourceCap("perfect matching enumeration", cap)
            return
        covered[v] = True
        for e in g.incidence[v]:
            w = g.other(e, v)
            if covered[w]:
                continue
            covered[w] = True
            chosen.append(e)
            rec(v + 1)
            chosen.pop()
            covered[w] = False
        covered[v] = False

    rec(0)
    out.sort(key=sorted)
    return tuple(out)


def _cycles_of(g: CubicGraph, kept: set[int], verts: Iterable[int]) -> list[Walk]:
    """Decompose a 2-regular edge set into cycles (smallest vertex first).

    Each cycle starts at its smallest vertex and leaves it towards the
    smaller of its two neighbours.
    """
    verts = sorted(verts)
    seen: set[int] = set()
    cycles = []
    for s in verts:
        if s in seen:
            continue
        inc = [e for e in g.incidence[s] if e in kept]
        inc.sort(key=lambda e: g.other(e, s))
        walk_v = [s]
        walk_e = []
        prev_e = None
        v = s
        e = inc[0]
        while True:
            walk_e.append(e)
            w = g.other(e, v)
            walk_v.append(w)
            seen.add(v)
            if w == s:
                break
            prev_e = e
            v = w
            e = next(f for f in g.incidence[v] if f in kept and f != prev_e)
        cycles.append(Walk(tuple(walk_v), tuple(walk_e)))
    return cycles


def two_factor(g: CubicGraph, M: Iterable[int]) -> TwoFactor:
    M = frozenset(M)
    if not is_perfect_matching(g, M):
        raise NotPerfect("two_factor needs a perfect matching")
    kept = set(range(g.m)) - M
    return TwoFactor(M, tuple(_cycles_of(g, kept, range(g.n))))


def oddness(g: CubicGraph, cap: int = DEFAULT_MATCHING_CAP) -> int:
    """Minimum number of odd cycles over all 2-factors."""
    ms = enumerate_perfect_matchings(g, cap)
    if not ms:
        raise NotPerfect("graph has no perfect matching")
    return min(len(two_factor(g, M).odd_cycles) for M in ms)


def _remaining_components(g: CubicGraph, M: frozenset[int], A: frozenset[int]):
    """Components of ``G_M - V(A)`` as (vertices, edges, is_cycle)."""
    gone = {v for e in A for v in g.edges[e]}
    kept = {
        e for e in range(g.m)
        if e not in M and not (set(g.edges[e]) & gone)
    }
    seen: set[int] = set()
    out = []
    for s in range(g.n):
        if s in gone or s in seen:
            continue
        comp = {s}
        stack = [s]
        while stack:
            v = stack.pop()
            for e in g.incidence[v]:
                if e in kept:
                    w = g.other(e, v)
                    if w not in comp:
                        comp.add(w)
                        stack.append(w)
        seen |= comp
        edges = {e for v in comp for e in g.incidence[v] if e in kept}
        out.append((comp, edges, len(edges) == len(comp)))
    return out


def _check_sub(g: CubicGraph, M: frozenset[int], A: frozenset[int]) -> None:
    if not is_perfect_matching(g, M):
        raise NotPerfect("M must be a perfect matching")
    if not A <= M:
        raise NotSubset("A must be a subset of M")


def is_balanced(g: CubicGraph, M: Iterable[int], A: Iterable[int]) -> bool:
    """Whether some perfect matching meets ``M`` exactly in ``A``.

    True iff every component of ``G_M - V(A)`` is a path with an odd number of
    edges or an even cycle. An isolated vertex is a path with 0 edges.
    """
    M, A = frozenset(M), frozenset(A)
    _check_sub(g, M, A)
    for comp, edges, is_cycle in _remaining_components(g, M, A):
        if is_cycle:
            if len(edges) % 2:
                return False
        elif len(edges) % 2 == 0:
            return False
    return True


def extend_balanced(g: CubicGraph, M: Iterable[int], A: Iterable[int]) -> frozenset[int]:
    """A perfect matching ``M'`` with ``M & M' == A``."""
    M, A = frozenset(M), frozenset(A)
    if not is_balanced(g, M, A):
        raise NotBalanced("A is not a balanced M-matching")
    extra: list[int] = []
    for comp, edges, is_cycle in _remaining_components(g, M, A):
        if is_cycle:
            walk = _cycles_of(g, edges, comp)[0]
            extra += walk.edges[0::2]
        else:
            extra += _path_edges(g, comp, edges)[0::2]
    out = A | frozenset(extra)
    assert is_perfect_matching(g, out) and out & M == A
    return out


def _path_edges(g: CubicGraph, comp: set[int], edges: set[int]) -> list[int]:
    ends = [v for v in comp if sum(1 for e in g.incidence[v] if e in edges) == 1]
    v = min(ends)
    out = []
    prev = None
    while True:
        nxt = [e for e in g.incidence[v] if e in edges and e != prev]
        if not nxt:
            return out
        prev = nxt[0]
        out.append(prev)
        v = g.other(prev, v)


def balanced_by_brute_force(
    g: CubicGraph, M: Iterable[int], A: Iterable[int], matchings=None
) -> bool:
    """Reference predicate: does some perfect matching meet M exactly in A?"""
    M, A = frozenset(M), frozenset(A)
    pool = enumerate_perfect_matchings(g) if matchings is None else matchings
    return any(M & other == A for other in pool)


def fan_raspaud_search(
    g: CubicGraph, cap: int = DEFAULT_MATCHING_CAP
) -> tuple[frozenset[int], frozenset[int], frozenset[int]] | None:
    """Three perfect matchings with empty common intersection, or ``None``.

    For each ``M`` in enumeration order, look for two disjoint balanced
    M-matchings ``A = M & M2`` and ``B = M & M3``.
    """
    ms = enumerate_perfect_matchings(g, cap)
    masks = [edge_mask(M) for M in ms]
    for i, mi in enumerate(masks):
        inter = [mi & mj for mj in masks]
        for j in range(len(ms)):
            if j == i:
                continue
            for k in range(j + 1, len(ms)):
                if k == i:
                    continue
                if inter[j] & inter[k] == 0:
                    return ms[i], ms[j], ms[k]
    return None
