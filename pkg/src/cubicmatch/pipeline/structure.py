"""Path colouring, odd-pair decomposition, Gamma sequence, auxiliary graph, walks.

Everything here runs on a relabelled copy ``h`` of the input graph in which
the Hamiltonian path is ``0, 1, ..., n-1``. The traditional 1-based label of
vertex ``v`` is ``v + 1``, and the path edge ``e_i`` (``1 <= i <= n-1``) joins
``i-1`` and ``i``. Results are mapped back to the input graph's ids by
:class:`PathColoring`.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ..coloring import Colour, EdgeColoring, coloring_from_pm
from ..errors import ConstructionError, InvariantViolation, NotHamiltonian
from ..graph import CubicGraph, Walk, build_graph
from ..matchings import is_perfect_matching, two_factor

A, B, C, D = Colour.ALPHA, Colour.BETA, Colour.GAMMA, Colour.DELTA


@dataclass(frozen=True)
class PathColoring:
    g: CubicGraph
    path: Walk
    h: CubicGraph
    colours: tuple[Colour, ...]
    m_alpha: frozenset[int]
    to_g_edge: tuple[int, ...]

    @property
    def n(self) -> int:
        return self.h.n

    def e(self, i: int) -> int:
        """Edge id in ``h`` of the path edge ``e_i``."""
        return self.h.edge_id(i - 1, i)

    def alpha_at(self, v: int) -> int:
        return next(e for e in self.h.incidence[v] if self.colours[e] == A)

    def alpha_edges(self, walk: Walk) -> frozenset[int]:
        return frozenset(e for e in walk.edges if self.colours[e] == A)

    def g_vertex(self, v: int) -> int:
        return self.path.vertices[v]

    def g_edges(self, edges) -> frozenset[int]:
        return frozenset(self.to_g_edge[e] for e in edges)

    def g_walk(self, walk: Walk) -> Walk:
        return Walk(
            tuple(self.path.vertices[v] for v in walk.vertices),
            tuple(self.to_g_edge[e] for e in walk.edges),
        )

    def colouring_in_g(self) -> dict[int, Colour]:
        return {self.to_g_edge[e]: c for e, c in enumerate(self.colours)}


def color_along_path(g: CubicGraph, path: Walk) -> PathColoring:
    """Alternate alpha/beta along the path (alpha first), chords gamma, and one
    chord at each end of the path delta.

    At each end the delta chord is the one whose other end comes earlier on
    the path; at the last vertex a chord to the first vertex is skipped.
    """
    verts = path.vertices
    if len(verts) != g.n or len(set(verts)) != g.n or not path.is_valid(g):
        raise NotHamiltonian("walk is not a Hamiltonian path of the graph")
    pos = {v: i for i, v in enumerate(verts)}
    pairs = sorted(tuple(sorted((pos[u], pos[v]))) for u, v in g.edges)
    h = build_graph(g.n, pairs)
    to_g = tuple(g.edge_id(verts[u], verts[v]) for u, v in h.edges)
    colours = [C] * h.m
    for i in range(1, h.n):
        colours[h.edge_id(i - 1, i)] = A if i % 2 else B
    first = min((e for e in h.incidence[0] if h.other(e, 0) != 1), key=lambda e: h.other(e, 0))
    last_v = h.n - 1
    # skip a chord back to vertex 0 so the two delta edges stay disjoint
    last = min(
        (e for e in h.incidence[last_v] if h.other(e, last_v) not in (last_v - 1, 0)),
        key=lambda e: h.other(e, last_v),
    )
    colours[first] = D
    colours[last] = D
    m_alpha = frozenset(e for e in range(h.m) if colours[e] == A)
    pc = PathColoring(g, path, h, tuple(colours), m_alpha, to_g)
    check_path_coloring(pc)
    return pc


def check_path_coloring(pc: PathColoring) -> None:
    h = pc.h
    if not is_perfect_matching(h, pc.m_alpha):
        raise InvariantViolation("alpha class is not a perfect matching")
    if pc.colours[pc.e(h.n - 1)] != A:
        raise InvariantViolation("last path edge must be alpha")
    deltas = [e for e, c in enumerate(pc.colours) if c == D]
    if len(deltas) != 2:
        raise InvariantViolation("need exactly two delta edges")
    if not any(0 in h.edges[e] for e in deltas) or not any(h.n - 1 in h.edges[e] for e in deltas):
        raise InvariantViolation("delta edges must sit at both ends of the path")


# -- decomposition --------------------------------------------------------


@dataclass(frozen=True)
class OddPairDecomposition:
    """Cycles of ``G - M_alpha``; index 0 holds vertex 1, the last holds vertex n.

    ``mins``/``maxs`` are 1-based path-edge indices (always even).
    """

    cycles: tuple[Walk, ...]
    vertex_sets: tuple[frozenset[int], ...]
    mins: tuple[int, ...]
    maxs: tuple[int, ...]
    cycle_of: tuple[int, ...]

    @property
    def k(self) -> int:
        return len(self.cycles)

    @property
    def first(self) -> int:
        return 0

    @property
    def last(self) -> int:
        return len(self.cycles) - 1

    def edge_set(self, c: int) -> frozenset[int]:
        return frozenset(self.cycles[c].edges)


def decompose(pc: PathColoring) -> EdgeColoring | OddPairDecomposition:
    """Either a proper 3-edge-colouring (when ``G - M_alpha`` has no odd cycle)
    or the cycles of ``G - M_alpha`` with the two odd ones identified."""
    h = pc.h
    tf = two_factor(h, pc.m_alpha)
    cyc_of = tf.cycle_of()
    odd = [i for i, c in enumerate(tf.cycles) if len(c) % 2]
    if not odd:
        col = coloring_from_pm(h, pc.m_alpha)
        return EdgeColoring(tuple(col[e] for e in _inverse(pc)))
    first, last = cyc_of[0], cyc_of[h.n - 1]
    if len(odd) != 2 or set(odd) != {first, last} or first == last:
        raise InvariantViolation(
            f"odd cycles {odd} do not split vertices 1 and n (cycles {first}, {last})"
        )
    mins: dict[int, int] = {}
    maxs: dict[int, int] = {}
    for i in range(2, h.n - 1, 2):
        c = cyc_of[i - 1]
        mins.setdefault(c, i)
        maxs[c] = i
    middle = sorted((c for c in range(len(tf.cycles)) if c not in (first, last)), key=lambda c: mins[c])
    order = [first] + middle + [last]
    cycles = tuple(tf.cycles[c] for c in order)
    dec = OddPairDecomposition(
        cycles=cycles,
        vertex_sets=tuple(frozenset(c.vertices) for c in cycles),
        mins=tuple(mins[c] for c in order),
        maxs=tuple(maxs[c] for c in order),
        cycle_of=tuple(order.index(cyc_of[v]) for v in range(h.n)),
    )
    check_decomposition(pc, dec)
    return dec


def _inverse(pc: PathColoring) -> list[int]:
    inv = [0] * len(pc.to_g_edge)
    for he, ge in enumerate(pc.to_g_edge):
        inv[ge] = he
    return inv


def check_decomposition(pc: PathColoring, dec: OddPairDecomposition) -> None:
    for c in range(dec.k):
        lo, hi = dec.mins[c], dec.maxs[c]
        if lo % 2 or hi % 2:
            raise InvariantViolation("min(C) and max(C) must be even")
        if (lo == hi) != (len(dec.cycles[c]) == 3):
            raise InvariantViolation("min(C) == max(C) exactly for triangles")
        parity = len(dec.cycles[c]) % 2
        if parity != (c in (dec.first, dec.last)):
            raise InvariantViolation("only the end cycles may be odd")
    for v in range(1, pc.n - 1):
        cols = sorted(pc.colours[e] for e in dec.cycles[dec.cycle_of[v]].edges if v in pc.h.edges[e])
        if len(cols) != 2 or cols[0] != B or cols[1] not in (C, D):
            raise InvariantViolation(f"vertex {v + 1} must see one beta and one chord on its cycle")


# -- Gamma sequence --------------------------------------------------------


@dataclass(frozen=True)
class GammaSequence:
    order: tuple[int, ...]  # cycle indices into the decomposition

    @property
    def h(self) -> int:
        return len(self.order)

    def inner(self) -> range:
        """1-based positions ``2..h-1`` of the even cycles of the sequence."""
        return range(2, len(self.order))

    def cycle(self, j: int) -> int:
        return self.order[j - 1]


def gamma_sequence(dec: OddPairDecomposition) -> GammaSequence:
    """Chain of cycles from C_1 to C_k whose path-index intervals overlap."""
    seq = [dec.first]
    min_last = dec.mins[dec.last]
    while True:
        top = dec.maxs[seq[-1]]
        if top > min_last:
            seq.append(dec.last)
            break
        cands = [c for c in range(dec.k) if dec.mins[c] < top < dec.maxs[c]]
        if not cands:
            raise InvariantViolation(
                f"no cycle straddles index {top}; is the graph bridgeless?"
            )
        nxt = max(cands, key=lambda c: (dec.maxs[c], -c))
        if nxt in seq or dec.maxs[nxt] <= top:
            raise InvariantViolation("Gamma sequence does not advance")
        seq.append(nxt)
    out = GammaSequence(tuple(seq))
    check_gamma(dec, out)
    return out


def check_gamma(dec: OddPairDecomposition, seq: GammaSequence) -> None:
    mn = [dec.mins[c] for c in seq.order]
    mx = [dec.maxs[c] for c in seq.order]
    h = seq.h
    n_edges = None
    if h < 2 or seq.order[0] != dec.first or seq.order[-1] != dec.last:
        raise InvariantViolation("sequence must run from C_1 to C_k")
    if h == 2:
        if not 1 < mn[1] < mx[0]:
            raise InvariantViolation("h=2 needs 1 < min(C_k) < max(C_1)")
        return
    for j in range(1, h - 1):  # 0-based inner positions
        if not mn[j] < mx[j - 1] < mn[j + 1] < mx[j]:
            raise InvariantViolation(f"interleaving fails at position {j + 1}")
        if len(dec.cycles[seq.order[j]]) % 2:
            raise InvariantViolation("inner Gamma cycles must be even")
    del n_edges


# -- auxiliary graph -------------------------------------------------------


@dataclass(frozen=True)
class HEdge:
    u: int
    v: int
    path_index: int | None = None  # i for the path edge e_i
    represents: tuple[int, str] | None = None  # (j, "P") or (j, "P'")


@dataclass(frozen=True)
class Component:
    vertices: tuple[int, ...]
    hedges: tuple[int, ...]


@dataclass(frozen=True)
class AuxiliaryGraph:
    hedges: tuple[HEdge, ...]
    arcs: dict = field(compare=False)  # (j, "P"|"P'") -> Walk oriented from the min side
    components: tuple[Component, ...]
    deleted: tuple[int, ...]  # path indices i of deleted e_i
    first_ends: tuple[int, ...]
    last_ends: tuple[int, ...]
    claim_bound: int | None = None  # max(Gamma_{h-2}) when h > 2


def split_inner_cycle(pc: PathColoring, dec: OddPairDecomposition, c: int):
    """The two arcs of an even cycle left after deleting ``e_min`` and ``e_max``.

    Returns ``(P, P')``: ``P`` contains label ``min(C)``, ``P'`` contains
    ``min(C)+1``; both are oriented from the min side to the max side.
    """
    lo, hi = dec.mins[c], dec.maxs[c]
    cut = {pc.e(lo), pc.e(hi)}
    cyc = dec.cycles[c]
    verts = list(cyc.vertices[:-1])
    edges = list(cyc.edges)
    # rotate so the walk starts right after e_lo
    k = edges.index(pc.e(lo))
    verts = verts[k + 1:] + verts[:k + 1]
    edges = edges[k + 1:] + edges[:k + 1]
    # verts[0] is an end of e_lo; edges[-1] is e_lo
    m = edges.index(pc.e(hi))
    arc1 = Walk(tuple(verts[:m + 1]), tuple(edges[:m]))
    arc2 = Walk(tuple(verts[m + 1:]), tuple(edges[m + 1:-1]))
    lo_side = {lo - 1, lo}
    arcs = []
    for arc in (arc1, arc2):
        if arc.start not in lo_side:
            arc = arc.reversed()
        if arc.start not in lo_side or arc.end not in {hi - 1, hi} or set(arc.edges) & cut:
            raise InvariantViolation("bad arc split of an inner cycle")
        if len(arc) % 2 == 0:
            raise InvariantViolation("arcs of an inner cycle must be odd")
        arcs.append(arc)
    arcs.sort(key=lambda a: 0 if a.start == lo - 1 else 1)
    return arcs[0], arcs[1]


def build_auxiliary(pc: PathColoring, dec: OddPairDecomposition, seq: GammaSequence) -> AuxiliaryGraph:
    n = pc.n
    h_ = seq.h
    deleted = {dec.maxs[seq.cycle(1)], dec.mins[seq.cycle(h_)]}
    for j in seq.inner():
        c = seq.cycle(j)
        deleted |= {dec.mins[c], dec.maxs[c]}
    if len(deleted) != 2 + 2 * (h_ - 2):
        raise InvariantViolation("deleted path edges collide")
    hedges = [HEdge(i - 1, i, path_index=i) for i in range(1, n) if i not in deleted]
    arcs = {}
    for j in seq.inner():
        p, pp = split_inner_cycle(pc, dec, seq.cycle(j))
        arcs[(j, "P")] = p
        arcs[(j, "P'")] = pp
        hedges.append(HEdge(p.start, p.end, represents=(j, "P")))
        hedges.append(HEdge(pp.start, pp.end, represents=(j, "P'")))
    inc: list[list[int]] = [[] for _ in range(n)]
    for k, he in enumerate(hedges):
        inc[he.u].append(k)
        inc[he.v].append(k)
    m1 = dec.maxs[seq.cycle(1)]
    mh = dec.mins[seq.cycle(h_)]
    first_ends = (0, m1 - 1, m1)  # labels 1, max(G1), max(G1)+1
    last_ends = (mh - 1, mh, n - 1)  # labels min(Gh), min(Gh)+1, n
    ones = sorted(v for v in range(n) if len(inc[v]) == 1)
    if ones != sorted(first_ends + last_ends):
        raise InvariantViolation(f"degree-1 vertices {ones} are not the six expected ends")
    if any(len(inc[v]) not in (1, 2) for v in range(n)):
        raise InvariantViolation("auxiliary graph has a vertex of degree other than 1 or 2")
    comps = []
    for s in first_ends:
        verts = [s]
        used = []
        prev = None
        v = s
        while True:
            nxt = [k for k in inc[v] if k != prev]
            if not nxt:
                break
            k = nxt[0]
            used.append(k)
            he = hedges[k]
            v = he.v if he.u == v else he.u
            verts.append(v)
            prev = k
        comps.append(Component(tuple(verts), tuple(used)))
    bound = dec.maxs[seq.cycle(h_ - 2)] if h_ > 2 else None
    aux = AuxiliaryGraph(tuple(hedges), arcs, tuple(comps), tuple(sorted(deleted)), first_ends,
                         last_ends, bound)
    check_auxiliary(pc, aux)
    return aux


def check_auxiliary(pc: PathColoring, aux: AuxiliaryGraph) -> None:
    covered = sum(len(c.vertices) for c in aux.components)
    if covered != pc.n:
        raise InvariantViolation("auxiliary graph has components other than the three paths")
    for comp in aux.components:
        if aux.claim_bound is not None and max(comp.vertices) + 1 <= aux.claim_bound:
            raise InvariantViolation("component stops before max(Gamma_{h-2})")
        if comp.vertices[-1] not in aux.last_ends:
            raise InvariantViolation(
                f"component from {comp.vertices[0] + 1} ends at {comp.vertices[-1] + 1}, "
                "not in the far triple"
            )
        if len(comp.hedges) % 2 == 0:
            raise InvariantViolation("auxiliary components must be odd paths")


# -- the three walks -------------------------------------------------------


@dataclass(frozen=True)
class WalkInfo:
    walk: Walk
    q: int
    q_end: int
    uses: tuple[tuple[int, str], ...]  # arcs substituted for additional edges


@dataclass(frozen=True)
class WalkTriple:
    walks: tuple[WalkInfo, ...]

    def __getitem__(self, i: int) -> Walk:
        return self.walks[i].walk


def derive_walks(
    pc: PathColoring, dec: OddPairDecomposition, seq: GammaSequence, aux: AuxiliaryGraph
) -> WalkTriple:
    c1 = dec.vertex_sets[dec.first]
    ck = dec.vertex_sets[dec.last]
    out = []
    for comp in aux.components:
        vs = comp.vertices
        qi = max(i for i, v in enumerate(vs) if v in c1)
        # first C_k vertex after q; the far end of the component is in C_k
        qe = min((i for i, v in enumerate(vs) if v in ck and i > qi), default=None)
        if qe is None:
            raise ConstructionError(
                "walks", "component has no C_k vertex after its last C_1 vertex",
                {"component": [v + 1 for v in vs]},
            )
        walk = Walk.single(vs[qi])
        uses = []
        for t in range(qi, qe):
            he = aux.hedges[comp.hedges[t]]
            if he.path_index is not None:
                piece = Walk((vs[t], vs[t + 1]), (pc.e(he.path_index),))
            else:
                arc = aux.arcs[he.represents]
                piece = arc if arc.start == vs[t] else arc.reversed()
                uses.append(he.represents)
            walk = walk + piece
        out.append(WalkInfo(walk, vs[qi], vs[qe], tuple(uses)))
    triple = WalkTriple(tuple(out))
    check_walks(pc, dec, triple)
    return triple


def check_walks(pc: PathColoring, dec: OddPairDecomposition, triple: WalkTriple) -> None:
    c1e = dec.edge_set(dec.first)
    cke = dec.edge_set(dec.last)
    alphas = [pc.alpha_edges(w.walk) for w in triple.walks]
    for a in range(3):
        for b in range(a + 1, 3):
            if alphas[a] & alphas[b]:
                raise ConstructionError("walks", f"walks {a + 1} and {b + 1} share an alpha edge")
    for i, info in enumerate(triple.walks):
        w = info.walk
        if not w.is_valid(pc.h):
            raise ConstructionError("walks", f"walk {i + 1} is not a walk of the graph")
        if set(w.edges) & (c1e | cke):
            raise ConstructionError("walks", f"walk {i + 1} uses an edge of C_1 or C_k")
        if dec.cycle_of[w.start] != dec.first or dec.cycle_of[w.end] != dec.last:
            raise ConstructionError("walks", f"walk {i + 1} does not run from C_1 to C_k")
        if pc.colours[w.edges[0]] != A or pc.colours[w.edges[-1]] != A:
            raise ConstructionError("walks", f"walk {i + 1} must start and end with alpha edges")
        if len(w) % 2 == 0:
            raise ConstructionError("walks", f"walk {i + 1} has even length")
