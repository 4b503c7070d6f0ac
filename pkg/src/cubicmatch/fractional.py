"""Fractional perfect matchings and the small-order bound checkers.

All weights are :class:`fractions.Fraction`; tightness tests ``w(C) == 1`` are
exact equality tests.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .cuts import ms_witness, odd_cut_inside, ordered_pairs
from .errors import BoundViolated, InvariantViolation, NoFeasibleMatching, TooLarge
from .graph import (
    UNBOUNDED,
    CubicGraph,
    boundary,
    components_after_removal,
    cyclic_edge_connectivity,
    edge_mask,
)
from .matchings import DEFAULT_MATCHING_CAP, enumerate_perfect_matchings, two_factor

DEFAULT_ODDSET_CAP = 16


@dataclass(frozen=True)
class FractionalWeights:
    w: tuple[Fraction, ...]

    @classmethod
    def uniform(cls, g: CubicGraph, value) -> "FractionalWeights":
        return cls(tuple(Fraction(value) for _ in range(g.m)))

    @classmethod
    def two_level(cls, g: CubicGraph, M: Iterable[int], on, off) -> "FractionalWeights":
        M = set(M)
        on, off = Fraction(on), Fraction(off)
        return cls(tuple(on if e in M else off for e in range(g.m)))

    def __getitem__(self, e: int) -> Fraction:
        return self.w[e]

    def total(self, edges: Iterable[int]) -> Fraction:
        return sum((self.w[e] for e in edges), Fraction(0))

    def dot(self, c: Sequence) -> Fraction:
        return sum((Fraction(ci) * wi for ci, wi in zip(c, self.w)), Fraction(0))


@dataclass(frozen=True)
class OddCutCertificate:
    """Structural facts that replace odd-set enumeration for large graphs.

    Every odd cut has at least ``min_size`` edges, and ``matching`` contains
    no odd cut with ``max_size_inside`` or fewer edges. Weights must be
    constant on ``matching`` and constant off it.
    """

    min_size: int
    matching: frozenset[int]
    max_size_inside: int = 0


def connected_sets(g: CubicGraph, max_size: int | None = None):
    """Every vertex set inducing a connected subgraph, each exactly once (as bitmasks)."""
    nbr = [0] * g.n
    for u, v in g.edges:
        nbr[u] |= 1 << v
        nbr[v] |= 1 << u
    limit = g.n if max_size is None else max_size

    def extend(sub: int, ext: int, nb: int, root: int, size: int):
        yield sub
        if size == limit:
            return
        while ext:
            low = ext & -ext
            ext ^= low
            w = low.bit_length() - 1
            fresh = nbr[w] & ~sub & ~nb & ~((1 << (root + 1)) - 1)
            yield from extend(sub | low, ext | fresh, nb | nbr[w], root, size + 1)

    for r in range(g.n):
        above = nbr[r] & ~((1 << (r + 1)) - 1)
        yield from extend(1 << r, above, nbr[r] | (1 << r), r, 1)


def _bits(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def _boundary_mask(g: CubicGraph, X: int) -> int:
    m = 0
    for e, (u, v) in enumerate(g.edges):
        if (X >> u & 1) != (X >> v & 1):
            m |= 1 << e
    return m


def odd_connected_cuts(g: CubicGraph, cap: int = DEFAULT_ODDSET_CAP):
    """``(X, boundary(X))`` over connected odd vertex sets X, as bitmasks."""
    if g.n > cap:
        raise TooLarge(f"odd-set enumeration is limited to n <= {cap}")
    full = (1 << g.n) - 1
    for X in connected_sets(g):
        if bin(X).count("1") % 2 and X != full:
            yield X, _boundary_mask(g, X)


def _basic_conditions(g: CubicGraph, w: FractionalWeights) -> bool:
    if len(w.w) != g.m or any(not 0 <= x <= 1 for x in w.w):
        return False
    return all(w.total(g.incidence[v]) == 1 for v in range(g.n))


def is_fractional_pm(
    g: CubicGraph,
    w: FractionalWeights,
    cap: int = DEFAULT_ODDSET_CAP,
    certificate: OddCutCertificate | None = None,
) -> bool:
    """Bounds, unit vertex sums and ``w(boundary X) >= 1`` for odd X.

    Only connected X are enumerated: the boundary of any odd X is the disjoint
    union of its components' boundaries and one component is odd.
    """
    if not _basic_conditions(g, w):
        return False
    if g.n <= cap:
        for X, cut in odd_connected_cuts(g, cap):
            if w.total(_bits(cut)) < 1:
                return False
        return True
    if certificate is None:
        raise TooLarge(
            f"n={g.n} exceeds the odd-set cap {cap} and no certificate was given"
        )
    return _certified_odd_cuts(g, w, certificate)


def _certified_odd_cuts(g: CubicGraph, w: FractionalWeights, cert: OddCutCertificate) -> bool:
    M = cert.matching
    on = {w[e] for e in M}
    off = {w[e] for e in range(g.m) if e not in M}
    if len(on) != 1 or len(off) > 1:
        raise TooLarge("certificate route needs weights constant on and off the matching")
    a = on.pop()
    b = off.pop() if off else Fraction(0)
    # an odd cut meets a perfect matching in an odd number of edges
    for size in range(cert.min_size | 1, g.m + 1, 2):
        for inside in range(1, min(size, len(M)) + 1, 2):
            if size - inside > g.m - len(M):
                continue
            if inside == size and size <= cert.max_size_inside:
                continue
            if inside * a + (size - inside) * b < 1:
                return False
    return True


def fractional_pm_brute_force(g: CubicGraph, w: FractionalWeights) -> bool:
    """Reference check over all 2^n vertex subsets."""
    if not _basic_conditions(g, w):
        return False
    for X in range(1, 1 << g.n):
        if bin(X).count("1") % 2 and w.total(_bits(_boundary_mask(g, X))) < 1:
            return False
    return True


def polytope_select(
    g: CubicGraph,
    w: FractionalWeights,
    c: Sequence,
    cap: int = DEFAULT_ODDSET_CAP,
    matching_cap: int = DEFAULT_MATCHING_CAP,
) -> frozenset[int]:
    """A perfect matching ``M`` with ``c . chi(M) >= c . w`` meeting every tight
    odd cut (``w(C) == 1``) in exactly one edge.

    Among the feasible matchings the one maximising ``c . chi(M)`` is taken,
    first in enumeration order on ties.
    """
    c = [Fraction(x) for x in c]
    tight = [cut for X, cut in odd_connected_cuts(g, cap) if w.total(_bits(cut)) == 1]
    target = w.dot(c)
    best = None
    best_value = None
    for M in enumerate_perfect_matchings(g, matching_cap):
        mm = edge_mask(M)
        if any(bin(mm & cut).count("1") != 1 for cut in tight):
            continue
        value = sum((c[e] for e in M), Fraction(0))
        if best is None or value > best_value:
            best, best_value = M, value
    if best is None or best_value < target:
        raise NoFeasibleMatching(
            "no perfect matching reaches c.w while meeting every tight cut once"
        )
    return best


# -- Theorem-style checks ---------------------------------------------------


def three_edge_cuts(g: CubicGraph) -> list[frozenset[int]]:
    """All inclusion-minimal edge cuts with exactly three edges."""
    out = []
    for trio in itertools.combinations(range(g.m), 3):
        comps = components_after_removal(g, trio)
        if len(comps) != 2:
            continue
        side = comps[0][0]
        if all((g.edges[e][0] in side) != (g.edges[e][1] in side) for e in trio):
            out.append(frozenset(trio))
    return out


@dataclass
class Theorem3Result:
    M: frozenset[int]
    M2: frozenset[int]
    intersection: frozenset[int]
    bound: int
    three_cuts: int
    odd_cut: object = None

    @property
    def ok(self) -> bool:
        return len(self.intersection) <= self.bound and self.odd_cut is None


def theorem3_check(g: CubicGraph, cap: int = DEFAULT_MATCHING_CAP) -> Theorem3Result:
    """Pair ``(M, M')`` with ``M`` meeting every 3-cut once and ``|M & M'|``
    minimal; the intersection must have at most ``n // 10`` edges and hold no
    odd cut. A failure raises :class:`BoundViolated` with the offending pair."""
    if g.n >= 50:
        raise TooLarge("theorem3_check covers graphs of order below 50")
    cuts = [edge_mask(c) for c in three_edge_cuts(g)]
    ms = enumerate_perfect_matchings(g, cap)
    masks = [edge_mask(M) for M in ms]
    good = [i for i, mm in enumerate(masks) if all(bin(mm & c).count("1") == 1 for c in cuts)]
    if not good:
        raise BoundViolated("no perfect matching meets every 3-edge cut exactly once")
    best = None
    for i in good:
        for j in range(len(ms)):
            if j == i:
                continue
            size = bin(masks[i] & masks[j]).count("1")
            if best is None or size < best[0]:
                best = (size, i, j)
    if best is None:
        raise BoundViolated("graph has a single perfect matching")
    _, i, j = best
    inter = ms[i] & ms[j]
    result = Theorem3Result(ms[i], ms[j], inter, g.n // 10, len(cuts), odd_cut_inside(g, inter))
    if not result.ok:
        raise BoundViolated(
            f"|M & M'| = {len(inter)} with bound {g.n // 10}, odd cut: {result.odd_cut is not None}",
            {"result": result},
        )
    return result


@dataclass
class BoundReport:
    n: int
    k: object
    applicable: bool
    s: int | None = None
    pair_bound: Fraction | None = None
    min_pair_intersection: int | None = None
    alternative1: bool | None = None
    alternative1_pair: tuple | None = None
    alternative2: bool | None = None
    alternative2_cuts: list = field(default_factory=list)
    theorem5_threshold: int | None = None
    theorem5_applies: bool = False
    theorem5_witness: object = None
    notes: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        if not self.applicable:
            return True
        if not (self.alternative1 or self.alternative2):
            return False
        return not self.theorem5_applies or self.theorem5_witness is not None


def _odd_cut_of_size_in(g: CubicGraph, M: frozenset[int], size: int):
    """A minimal odd cut with exactly ``size`` edges lying inside ``M``.

    Such a cut is the boundary of a union of cycles of ``G - M``.
    """
    cycles = [frozenset(c.vertices) for c in two_factor(g, M).cycles]
    for r in range(1, len(cycles)):
        for combo in itertools.combinations(cycles, r):
            X = frozenset().union(*combo)
            if len(X) % 2 == 0:
                continue
            cut = boundary(g, X)
            if len(cut) != size or not cut <= M:
                continue
            if len(components_after_removal(g, cut)) == 2:
                return X, cut
    return None


def theorem45_check(g: CubicGraph, cap: int = DEFAULT_MATCHING_CAP, k=None) -> BoundReport:
    """Which alternative of the cyclic-connectivity dichotomy holds, by enumeration.

    With ``s = 2*floor(k/2) + 3``: either some pair has ``|M & M'| <= n/(2s)``,
    or every perfect matching contains an odd cut of size ``s - 2``. For
    ``k >= 4`` and ``n < 2*s*(s-2)`` a two-matching witness must also exist.
    """
    if k is None:
        k = cyclic_edge_connectivity(g).size
    if k == UNBOUNDED or k < 3:
        return BoundReport(g.n, k, False, notes=["cyclic edge connectivity is not an integer >= 3"])
    s = 2 * (k // 2) + 3
    if s % 2 == 0 or s < 5:
        raise InvariantViolation(f"derived threshold s={s} must be odd and >= 5")
    ms = enumerate_perfect_matchings(g, cap)
    rep = BoundReport(g.n, k, True, s=s, pair_bound=Fraction(g.n, 2 * s))
    pairs = ordered_pairs(ms)
    if pairs:
        size, i, j = pairs[0]
        rep.min_pair_intersection = size
        rep.alternative1 = size <= rep.pair_bound
        if rep.alternative1:
            rep.alternative1_pair = (ms[i], ms[j])
    else:
        rep.alternative1 = False
    cuts = []
    for M in ms:
        found = _odd_cut_of_size_in(g, M, s - 2)
        if found is None:
            cuts = None
            break
        cuts.append((M, found))
    rep.alternative2 = cuts is not None
    rep.alternative2_cuts = cuts or []
    rep.theorem5_threshold = 2 * s * (s - 2)
    rep.theorem5_applies = k >= 4 and g.n < rep.theorem5_threshold
    if rep.theorem5_applies:
        rep.theorem5_witness = ms_witness(g, cap)
    return rep
