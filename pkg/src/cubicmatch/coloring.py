"""Edge colourings and the perfect-matching characterisation of 3-colourability."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable, Mapping

from .cuts import odd_cut_inside
from .errors import NotPerfect, OddCycleInTwoFactor, ResourceCap
from .graph import CubicGraph
from .matchings import DEFAULT_MATCHING_CAP, enumerate_perfect_matchings, is_perfect_matching, two_factor

DEFAULT_COLOURING_CAP = 10**7


class Colour(str, enum.Enum):
    ALPHA = "alpha"
    BETA = "beta"
    GAMMA = "gamma"
    DELTA = "delta"


PROPER = (Colour.ALPHA, Colour.BETA, Colour.GAMMA)


@dataclass(frozen=True)
class EdgeColoring:
    colours: tuple[Colour, ...]

    def __getitem__(self, e: int) -> Colour:
        return self.colours[e]

    def cls(self, c: Colour) -> frozenset[int]:
        return frozenset(e for e, x in enumerate(self.colours) if x == c)

    def is_proper(self, g: CubicGraph) -> bool:
        return is_proper_colouring(g, self.colours)


def is_proper_colouring(g: CubicGraph, colours) -> bool:
    if len(colours) != g.m or set(colours) - set(PROPER):
        return False
    return all(len({colours[e] for e in g.incidence[v]}) == 3 for v in range(g.n))


def three_edge_coloring(
    g: CubicGraph, cap: int = DEFAULT_COLOURING_CAP
) -> EdgeColoring | None:
    """Proper 3-edge-colouring by backtracking over edges in id order.

    Returns ``None`` only after the search space is exhausted; a search that
    runs out of budget raises :class:`ResourceCap` instead.
    """
    colour = [-1] * g.m
    used = [0] * g.n  # bitmask of colours present at each vertex
    nodes = 0

    def rec(e: int) -> bool:
        nonlocal nodes
        if e == g.m:
            return True
        u, v = g.edges[e]
        free = ~(used[u] | used[v]) & 0b111
        for c in range(3):
            if not free >> c & 1:
                continue
            nodes += 1
            if nodes > cap:
                raise ResourceCap("3-edge-colouring search", cap)
            colour[e] = c
            used[u] |= 1 << c
            used[v] |= 1 << c
            if rec(e + 1):
                return True
            used[u] &= ~(1 << c)
            used[v] &= ~(1 << c)
        colour[e] = -1
        return False

    if not rec(0):
        return None
    return EdgeColoring(tuple(PROPER[c] for c in colour))


def chromatic_index(g: CubicGraph, cap: int = DEFAULT_COLOURING_CAP) -> int:
    return 3 if three_edge_coloring(g, cap) is not None else 4


def pm_without_odd_cut(
    g: CubicGraph, cap: int = DEFAULT_MATCHING_CAP
) -> frozenset[int] | None:
    """First perfect matching (enumeration order) containing no odd edge cut."""
    for M in enumerate_perfect_matchings(g, cap):
        if odd_cut_inside(g, M) is None:
            return M
    return None


def coloring_from_pm(g: CubicGraph, M: Iterable[int]) -> EdgeColoring:
    """Colour ``M`` alpha and alternate beta/gamma around each even cycle of G - M."""
    M = frozenset(M)
    if not is_perfect_matching(g, M):
        raise NotPerfect("coloring_from_pm needs a perfect matching")
    tf = two_factor(g, M)
    if tf.odd_cycles:
        raise OddCycleInTwoFactor(
            f"2-factor has {len(tf.odd_cycles)} odd cycle(s); M contains an odd cut"
        )
    colours = [Colour.ALPHA] * g.m
    for cyc in tf.cycles:
        for i, e in enumerate(cyc.edges):
            colours[e] = Colour.BETA if i % 2 == 0 else Colour.GAMMA
    return EdgeColoring(tuple(colours))


def colouring_from_mapping(g: CubicGraph, mapping: Mapping[int, str]) -> EdgeColoring:
    return EdgeColoring(tuple(Colour(mapping[e]) for e in range(g.m)))
