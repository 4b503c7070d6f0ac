"""Well-intersection and the two rerouting steps applied to inner cycles."""

from __future__ import annotations

from dataclasses import dataclass, field

from ..coloring import Colour
from ..errors import ConstructionError
from ..graph import Walk
from .structure import OddPairDecomposition, PathColoring

A, B, C = Colour.ALPHA, Colour.BETA, Colour.GAMMA


# -- well-intersection -----------------------------------------------------


@dataclass(frozen=True)
class Intersection:
    """Alpha endpoints of a walk on a cycle and the gaps they cut it into."""

    points: tuple[int, ...]  # in cyclic order
    gaps: tuple[int, ...]  # gaps[i] runs from points[i] to points[i+1]; last one closes

    @property
    def ok(self) -> bool:
        return all(g % 2 for g in self.gaps)

    @property
    def ok_open(self) -> bool:
        """Only the gaps strictly between the first and last point."""
        return all(g % 2 for g in self.gaps[:-1])


def intersection(pc: PathColoring, walk: Walk, cycle: Walk) -> Intersection:
    alphas = pc.alpha_edges(walk)
    ring = cycle.vertices[:-1]
    pos = [i for i, v in enumerate(ring) if pc.alpha_at(v) in alphas]
    L = len(ring)
    gaps = tuple((pos[(t + 1) % len(pos)] - pos[t]) % L or L for t in range(len(pos)))
    return Intersection(tuple(ring[i] for i in pos), gaps)


def well_intersects(pc: PathColoring, walk: Walk, cycle: Walk, closing: bool = True) -> bool:
    """Alpha endpoints of ``walk`` cut ``cycle`` into odd pieces.

    With ``closing=False`` the piece from the last point back to the first is
    ignored. A walk with no alpha endpoint on the cycle counts as well
    intersecting.
    """
    it = intersection(pc, walk, cycle)
    return it.ok if closing else it.ok_open


def is_crossing(pc: PathColoring, dec: OddPairDecomposition, c: int) -> bool:
    """Whether the arc through label ``min(C)`` ends at label ``max(C)``."""
    from .structure import split_inner_cycle

    p, _ = split_inner_cycle(pc, dec, c)
    return p.end == dec.maxs[c] - 1


# -- position helpers ------------------------------------------------------


def _first_in(walk: Walk, verts, after: int = 0) -> int | None:
    for i in range(after, len(walk.vertices)):
        if walk.vertices[i] in verts:
            return i
    return None


def _pos(walk: Walk, v: int, after: int = 0) -> int | None:
    try:
        return walk.index(v, after)
    except ValueError:
        return None


def _head(walk: Walk, i: int) -> Walk:
    return walk.slice(0, i)


def _tail(walk: Walk, i: int) -> Walk:
    return walk.slice(i, len(walk.vertices) - 1)


def _ring_path(cycle: Walk, a: int, b: int, avoid_edge: int | None = None,
               avoid_vertex: int | None = None) -> Walk:
    """The path of ``cycle`` from ``a`` to ``b`` that avoids an edge or vertex."""
    ring = cycle.vertices[:-1]
    L = len(ring)
    ia = ring.index(a)
    for step in (1, -1):
        verts = [a]
        edges = []
        i = ia
        ok = True
        while verts[-1] != b:
            e = cycle.edges[i] if step == 1 else cycle.edges[(i - 1) % L]
            i = (i + step) % L
            v = ring[i]
            if e == avoid_edge or (v == avoid_vertex and v != b):
                ok = False
                break
            verts.append(v)
            edges.append(e)
        if ok and (avoid_vertex is None or avoid_vertex not in verts):
            return Walk(tuple(verts), tuple(edges))
    raise ConstructionError("ring", f"no path from {a + 1} to {b + 1} with the required avoidance")


def _is_gamma_chain(pc: PathColoring, w: Walk) -> bool:
    return len(w) % 2 == 1 and pc.colours[w.edges[0]] != B and pc.colours[w.edges[-1]] != B


# -- first rerouting: reach the max edge along a gamma chain ----------------


@dataclass(frozen=True)
class Reroute:
    R: Walk
    R2: Walk
    branch: str  # "no-swap" or "swap"
    x: int
    x2: int
    y: int
    y2: int
    chain: Walk  # R(x, y)
    conclusions: dict = field(compare=False)

    @property
    def ok(self) -> bool:
        return all(self.conclusions.values())


def reroute_pair(pc: PathColoring, dec: OddPairDecomposition, c: int, Q: Walk, Q2: Walk) -> Reroute:
    """Make ``R`` reach an end of ``e_max`` of cycle ``c`` along a gamma chain.

    ``x``/``x2`` are the first vertices of ``Q``/``Q2`` on the cycle. The
    chain is the odd arc from ``x`` to an end ``y`` of ``e_max`` that avoids
    ``e_max``. If ``Q`` visits ``y`` later, both walks are shortcut along the
    cycle (``R = Q`` when ``Q`` already follows the chain); otherwise, when
    ``Q2`` holds ``y`` and ``Q`` holds the other end ``y2``, the tails are
    swapped.
    """
    cyc = dec.cycles[c]
    vs = dec.vertex_sets[c]
    emax = pc.e(dec.maxs[c])
    ends = set(pc.h.edges[emax])
    ix = _first_in(Q, vs)
    ix2 = _first_in(Q2, vs)
    if ix is None or ix2 is None:
        raise ConstructionError("lemma7", "a walk misses the cycle", {"cycle_min": dec.mins[c]})
    x, x2 = Q.vertices[ix], Q2.vertices[ix2]
    arcs = [_ring_path(cyc, x, t, avoid_edge=emax) for t in sorted(ends) if t != x]
    odd = [a for a in arcs if len(a) % 2 == 1]
    if x in ends or len(odd) != 1:
        raise ConstructionError("lemma7", "first vertex sits on e_max or parity is off",
                                {"x": x + 1, "cycle_min": dec.mins[c]})
    chain = odd[0]
    y = chain.end
    y2 = next(iter(ends - {y}))
    iy = _pos(Q, y, ix)
    if iy is not None:
        branch = "no-swap"
        R = _head(Q, ix) + chain + _tail(Q, iy)
        iy2 = _pos(Q2, y2, ix2)
        if iy2 is None:
            raise ConstructionError("lemma7", "second walk misses the other end of e_max",
                                    {"y2": y2 + 1})
        R2 = _head(Q2, ix2) + _ring_path(cyc, x2, y2, avoid_edge=emax) + _tail(Q2, iy2) \
            if x2 != y2 else Q2
    else:
        iy_ = _pos(Q2, y, ix2)
        iy2 = _pos(Q, y2, ix)
        if iy_ is None or iy2 is None:
            raise ConstructionError("lemma7", "neither walk continues through the end of the chain",
                                    {"y": y + 1, "y2": y2 + 1})
        branch = "swap"
        R = _head(Q, ix) + chain + _tail(Q2, iy_)
        if x2 == y2:
            R2 = _head(Q2, ix2) + _tail(Q, iy2)
        else:
            R2 = _head(Q2, ix2) + _ring_path(cyc, x2, y2, avoid_edge=emax) + _tail(Q, iy2)
    jx = len(_head(Q, ix))
    jy = jx + len(chain)
    concl = {
        "prefixes_kept": R.vertices[:ix + 1] == Q.vertices[:ix + 1]
        and R2.vertices[:ix2 + 1] == Q2.vertices[:ix2 + 1],
        "ends_of_emax_covered": y in R and y2 in R2,
        "tails_from_inputs": _tails_ok(R, Q, Q2) and _tails_ok(R2, Q, Q2),
        "arcs_on_cycle": set(R.edges[jx:jy]) <= set(cyc.edges),
        "gamma_chain": _is_gamma_chain(pc, R.slice(jx, jy)),
    }
    return Reroute(R, R2, branch, x, x2, y, y2, chain, concl)


def _tails_ok(R: Walk, Q: Walk, Q2: Walk) -> bool:
    return R.end in (Q.end, Q2.end)


# -- second rerouting: keep the gamma chain clean --------------------------


@dataclass(frozen=True)
class Rerouted:
    S: Walk
    S2: Walk
    branch: str  # "disjoint", "case1" or "case2"
    sigma: int
    sigma2: int
    end: int  # x_sigma on R
    end2: int  # x'_sigma on R2
    pos_end: int  # position of x_sigma in R
    pos_end2: int
    swapped: bool  # S ends at x'_sigma
    conclusions: dict = field(compare=False)

    @property
    def ok(self) -> bool:
        return all(self.conclusions.values())


def _sigma(pc: PathColoring, dec: OddPairDecomposition, order, j: int, W: Walk, start: int):
    """The next cycle of the sequence whose max edge ``W`` reaches after ``start``.

    Returns ``(sigma, position of the first vertex of that cycle after start)``.
    """
    h = len(order)
    cands = [s for s in (j + 1, j + 2) if s <= h]
    for i in range(start, len(W.vertices)):
        v = W.vertices[i]
        for s in cands:
            c = order[s - 1]
            if s == h:
                hit = v in dec.vertex_sets[c]
            else:
                hit = v in pc.h.edges[pc.e(dec.maxs[c])]
            if hit:
                first = _first_in(W, dec.vertex_sets[c], start)
                return s, first
    raise ConstructionError("lemma8", f"walk reaches neither follower of cycle {j}")


def make_well_intersecting(
    pc: PathColoring, dec: OddPairDecomposition, order, j: int, rr: Reroute
) -> Rerouted:
    """Turn the rerouted pair into ``S``, ``S2`` with ``S`` well intersecting cycle ``j``.

    ``order`` lists the cycle indices of the sequence (1-based position ``j``).
    """
    c = order[j - 1]
    cyc = dec.cycles[c]
    R, R2 = rr.R, rr.R2
    ix = R.index(rr.x)
    iy = ix + len(rr.chain)
    ix2 = R2.index(rr.x2)
    sig, ie = _sigma(pc, dec, order, j, R, iy)
    iy2 = _pos(R2, rr.y2, ix2)
    sig2, ie2 = _sigma(pc, dec, order, j, R2, iy2 if iy2 is not None else ix2)
    # beta path from y to x through e_max
    pbeta = _ring_path(cyc, rr.y, rr.x, avoid_edge=rr.chain.edges[-1])
    if set(pbeta.edges) & set(rr.chain.edges) or pbeta.vertices[1] != rr.y2:
        raise ConstructionError("lemma8", "beta side of the cycle is malformed")
    dist = {v: i for i, v in enumerate(pbeta.vertices)}
    pb_edges = set(pbeta.edges)
    hits = [t for t in range(iy, ie) if R.edges[t] in pb_edges]
    swapped = False
    if not hits:
        branch = "disjoint"
        S = R.slice(ix, ie)
        S2 = R2.slice(ix2, ie2)
    else:
        t = max(hits, key=lambda t: (max(dist[R.vertices[t]], dist[R.vertices[t + 1]]), -t))
        a, b = R.vertices[t], R.vertices[t + 1]
        if dist[b] < dist[a]:
            branch = "case1"
            S = R.slice(ix, iy) + pbeta.slice(0, dist[b]) + R.slice(t + 1, ie)
            S2 = R2.slice(ix2, ie2)
        else:
            branch = "case2"
            if iy2 is None:
                raise ConstructionError("lemma8", "second walk misses the other end of e_max")
            back = pbeta.slice(1, dist[a]).reversed()
            S = R.slice(ix, t) + back + R2.slice(iy2, ie2)
            S2 = _ring_path(cyc, rr.x2, b, avoid_vertex=a) + R.slice(t + 1, ie)
            swapped = True
    end, end2 = R.vertices[ie], R2.vertices[ie2]
    concl = {
        "starts": S.start == rr.x and S2.start == rr.x2,
        "ends": {S.end, S2.end} == {end, end2} and end != end2
        or (S.end, S2.end) in ((end, end2), (end2, end)),
        "inside_inputs": set(S.vertices) | set(S2.vertices)
        <= set(R.vertices[ix:ie + 1]) | set(R2.vertices[ix2:ie2 + 1]) | dec.vertex_sets[c],
        "well_intersects": well_intersects(pc, R.slice(0, ix) + S, cyc),
    }
    return Rerouted(S, S2, branch, sig, sig2, end, end2, ie, ie2, swapped, concl)
