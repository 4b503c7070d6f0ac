"""Odd edge cuts inside edge sets, joins, and the two-matching witness searches."""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from typing import Iterable

from .graph import CubicGraph, boundary, components_after_removal, edge_mask
from .matchings import DEFAULT_MATCHING_CAP, enumerate_perfect_matchings

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class CutCertificate:
    X: frozenset[int]
    cut: frozenset[int]
    minimal: bool
    note: str = ""


def _connected(g: CubicGraph, verts: frozenset[int]) -> bool:
    if not verts:
        return False
    start = min(verts)
    seen = {start}
    stack = [start]
    while stack:
        v = stack.pop()
        for w in g.neighbors(v):
            if w in verts and w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == len(verts)


def odd_cut_inside(g: CubicGraph, S: Iterable[int]) -> CutCertificate | None:
    """An odd vertex set ``X`` with ``boundary(X) <= S``, shrunk to a minimal cut.

    Such an X exists iff ``(V, E - S)`` has a component of odd order. If the
    complement of that component falls apart, one of its pieces is odd and
    has a boundary that is a minimal odd cut inside ``S``.
    """
    S = frozenset(S)
    comps = components_after_removal(g, S)
    odd = next((vs for vs, _ in comps if len(vs) % 2), None)
    if odd is None:
        return None
    X = odd
    rest = frozenset(range(g.n)) - X
    if not _connected(g, rest):
        pieces = _pieces(g, rest)
        X = next(p for p in pieces if len(p) % 2)
        rest = frozenset(range(g.n)) - X
    cut = boundary(g, X)
    minimal = _connected(g, X) and _connected(g, rest)
    note = "" if minimal else "could not reduce to a minimal cut"
    if not minimal:
        log.warning("odd_cut_inside: %s", note)
    return CutCertificate(X, cut, minimal, note)


def _pieces(g: CubicGraph, verts: frozenset[int]) -> list[frozenset[int]]:
    out = []
    seen: set[int] = set()
    for s in sorted(verts):
        if s in seen:
            continue
        comp = {s}
        stack = [s]
        while stack:
            v = stack.pop()
            for w in g.neighbors(v):
                if w in verts and w not in comp:
                    comp.add(w)
                    stack.append(w)
        seen |= comp
        out.append(frozenset(comp))
    return out


def odd_cut_brute_force(g: CubicGraph, S: Iterable[int]) -> frozenset[int] | None:
    """Reference search over every odd vertex set; feasible for n <= 16."""
    S = frozenset(S)
    for size in range(1, g.n, 2):
        for X in itertools.combinations(range(g.n), size):
            if boundary(g, X) <= S:
                return frozenset(X)
    return None


def is_join(g: CubicGraph, J: Iterable[int]) -> bool:
    """Every vertex has odd degree in ``(V, J)``."""
    deg = [0] * g.n
    for e in set(J):
        u, v = g.edges[e]
        deg[u] += 1
        deg[v] += 1
    return all(d % 2 == 1 for d in deg)


def is_even_subgraph(g: CubicGraph, F: Iterable[int]) -> bool:
    deg = [0] * g.n
    for e in set(F):
        u, v = g.edges[e]
        deg[u] += 1
        deg[v] += 1
    return all(d % 2 == 0 for d in deg)


def parity_correction(
    g: CubicGraph, T: Iterable[int], allowed: Iterable[int]
) -> frozenset[int] | None:
    """An edge set inside ``allowed`` whose odd-degree vertices are exactly ``T``.

    Solved per component of ``(V, allowed)`` on a BFS spanning tree: a tree
    edge is taken iff the subtree below it holds an odd number of T vertices.
    Roots and neighbour order are the smallest ids, so the answer is fixed.
    """
    T = set(T)
    allowed = set(allowed)
    parent_edge: dict[int, int] = {}
    order: list[int] = []
    seen: set[int] = set()
    for root in range(g.n):
        if root in seen:
            continue
        seen.add(root)
        comp_order = [root]
        i = 0
        while i < len(comp_order):
            v = comp_order[i]
            i += 1
            for e in sorted(g.incidence[v]):
                if e not in allowed:
                    continue
                w = g.other(e, v)
                if w not in seen:
                    seen.add(w)
                    parent_edge[w] = e
                    comp_order.append(w)
        if sum(1 for v in comp_order if v in T) % 2:
            return None
        order += comp_order
    odd = {v: (v in T) for v in range(g.n)}
    chosen = set()
    for v in reversed(order):
        if v in parent_edge and odd[v]:
            e = parent_edge[v]
            chosen.add(e)
            p = g.other(e, v)
            odd[p] = not odd[p]
    return frozenset(chosen)


def join_avoiding(g: CubicGraph, S: Iterable[int]) -> frozenset[int] | None:
    """A join disjoint from ``S``, or ``None`` when ``S`` contains an odd cut.

    ``J`` avoids ``S`` iff ``E - J`` is an even subgraph containing ``S``; the
    missing part is a parity correction inside ``E - S``.
    """
    S = frozenset(S)
    deg = [0] * g.n
    for e in S:
        for v in g.edges[e]:
            deg[v] += 1
    T = [v for v in range(g.n) if deg[v] % 2]
    F = parity_correction(g, T, set(range(g.m)) - S)
    if F is None:
        return None
    J = frozenset(range(g.m)) - S - F
    assert is_join(g, J)
    return J


@dataclass(frozen=True)
class PairWitness:
    M1: frozenset[int]
    M2: frozenset[int]

    @property
    def intersection(self) -> frozenset[int]:
        return self.M1 & self.M2


def ordered_pairs(ms: list[frozenset[int]]):
    """Index pairs ``i < j`` sorted by intersection size, then by indices."""
    masks = [edge_mask(M) for M in ms]
    pairs = [
        (bin(masks[i] & masks[j]).count("1"), i, j)
        for i in range(len(ms)) for j in range(i + 1, len(ms))
    ]
    pairs.sort()
    return pairs


def ms_witness(g: CubicGraph, cap: int = DEFAULT_MATCHING_CAP) -> PairWitness | None:
    """Two perfect matchings whose intersection holds no odd edge cut.

    Pairs are tried by ascending intersection size; ``None`` means the whole
    search failed, which would refute the conjecture for this graph.
    """
    ms = enumerate_perfect_matchings(g, cap)
    for _, i, j in ordered_pairs(ms):
        if odd_cut_inside(g, ms[i] & ms[j]) is None:
            return PairWitness(ms[i], ms[j])
    log.error("no two-matching witness for graph %s: potential counterexample", g.key)
    return None


@dataclass(frozen=True)
class JoinWitness:
    M1: frozenset[int]
    M2: frozenset[int]
    J: frozenset[int]


def kr_witness(g: CubicGraph, cap: int = DEFAULT_MATCHING_CAP) -> JoinWitness | None:
    """Two perfect matchings and a join with empty common intersection."""
    pair = ms_witness(g, cap)
    if pair is None:
        return None
    S = pair.intersection
    # a perfect matching is a join, and M1 avoids the empty set
    J = pair.M1 if not S else join_avoiding(g, S)
    if J is None:
        raise AssertionError("join must exist when the intersection has no odd cut")
    return JoinWitness(pair.M1, pair.M2, J)

