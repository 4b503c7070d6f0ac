"""End-to-end construction for traceable cubic graphs.

Given a Hamiltonian path, either find a 3-edge-colouring (the escape) or
build three perfect matchings ``M_i`` and joins ``J_i``, ``J'_i`` with
``M_alpha & M_i & J_i`` and ``M_alpha & M_i & J'_i`` empty. Every step is
checked and a failed check raises :class:`ConstructionError` with the trace
gathered so far.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ..coloring import EdgeColoring
from ..cuts import is_join, odd_cut_inside
from ..errors import ConstructionError, InvariantViolation, NotHamiltonian
from ..graph import CubicGraph, Walk, find_hamiltonian_path, DEFAULT_NODE_CAP
from ..matchings import extend_balanced, is_balanced, is_perfect_matching
from .lemmas import intersection, is_crossing, make_well_intersecting, reroute_pair, well_intersects
from .structure import (
    AuxiliaryGraph,
    GammaSequence,
    OddPairDecomposition,
    PathColoring,
    WalkTriple,
    build_auxiliary,
    color_along_path,
    decompose,
    derive_walks,
    gamma_sequence,
)


@dataclass(frozen=True)
class Escape:
    """The alpha matching left only even cycles, so the graph is 3-edge-colourable."""

    colouring: EdgeColoring  # edge ids of the input graph


@dataclass(frozen=True)
class Triple:
    """One of the three outcomes: a balanced walk set and its matching and joins."""

    walk: Walk  # S_i, in ids of the relabelled graph
    A: frozenset[int]
    M: frozenset[int]
    joins: tuple[frozenset[int], frozenset[int]]
    others: tuple[Walk, Walk]


@dataclass
class Trace:
    steps: list = field(default_factory=list)

    def add(self, step: str, **data) -> None:
        self.steps.append({"step": step, **data})


@dataclass(frozen=True)
class Structure:
    pc: PathColoring
    dec: OddPairDecomposition
    seq: GammaSequence
    aux: AuxiliaryGraph
    walks: WalkTriple


@dataclass(frozen=True)
class Theorem6Result:
    pc: PathColoring
    structure: Structure | None
    escape: Escape | None
    triples: tuple[Triple, ...]
    trace: Trace

    @property
    def escaped(self) -> bool:
        return self.escape is not None

    def matchings_in_g(self) -> list[frozenset[int]]:
        return [self.pc.g_edges(t.M) for t in self.triples]

    def joins_in_g(self) -> list[tuple[frozenset[int], frozenset[int]]]:
        return [tuple(self.pc.g_edges(J) for J in t.joins) for t in self.triples]

    @property
    def m_alpha_in_g(self) -> frozenset[int]:
        return self.pc.g_edges(self.pc.m_alpha)


def _label(v: int) -> int:
    return v + 1


def analyse(g: CubicGraph, path: Walk, trace: Trace) -> tuple[PathColoring, Structure | EdgeColoring]:
    try:
        pc = color_along_path(g, path)
        trace.add("colour", path=[_label(v) for v in range(g.n)])
        dec = decompose(pc)
        if isinstance(dec, EdgeColoring):
            trace.add("escape")
            return pc, dec
        trace.add("decompose", k=dec.k, mins=list(dec.mins), maxs=list(dec.maxs))
        seq = gamma_sequence(dec)
        trace.add("gamma", h=seq.h, order=list(seq.order),
                  crossing=[is_crossing(pc, dec, seq.cycle(j)) for j in seq.inner()])
        aux = build_auxiliary(pc, dec, seq)
        trace.add("auxiliary", deleted=list(aux.deleted))
        walks = derive_walks(pc, dec, seq, aux)
        trace.add("walks", walks=[[_label(v) for v in w.walk.vertices] for w in walks.walks])
    except InvariantViolation as exc:
        raise ConstructionError("structure", str(exc), trace.steps) from exc
    return pc, Structure(pc, dec, seq, aux, walks)


def find_path(g: CubicGraph, node_cap: int = DEFAULT_NODE_CAP) -> Walk:
    path = find_hamiltonian_path(g, node_cap)
    if path is None:
        raise NotHamiltonian("graph has no Hamiltonian path")
    return path


# -- building S_i ------------------------------------------------------------


def _emax_ends(st: Structure, j: int) -> set[int]:
    c = st.seq.cycle(j)
    return set(st.pc.h.edges[st.pc.e(st.dec.maxs[c])])


def balance_walk(st: Structure, i: int, trace: Trace) -> tuple[Walk, list[Walk]]:
    """Rework walk ``i`` (0-based) until its alpha edges are balanced.

    Scans the walk for an end of ``e_max`` of an inner cycle not yet handled,
    reroutes there together with the other walk holding the other end, and
    repeats. Returns the new walk and the two updated other walks.
    """
    pc, dec, seq = st.pc, st.dec, st.seq
    S1 = st.walks[i]
    others = {k: st.walks[k] for k in range(3) if k != i}
    done: set[int] = set()
    order = seq.order
    while True:
        hit = None
        for v in S1.vertices:
            for j in seq.inner():
                if j not in done and v in _emax_ends(st, j):
                    hit = j
                    break
            if hit:
                break
        if hit is None:
            break
        j = hit
        ends = _emax_ends(st, j)
        on_s = ends & set(S1.vertices)
        cands = [k for k in sorted(others) if ends - on_s & set(others[k].vertices)]
        cands += [k for k in sorted(others) if k not in cands and ends & set(others[k].vertices)]
        if not cands:
            raise ConstructionError("theorem6", f"no partner walk for cycle {j}", trace.steps)
        k = cands[0]
        c = seq.cycle(j)
        rr = reroute_pair(pc, dec, c, S1, others[k])
        trace.add("lemma7", walk=i + 1, partner=k + 1, j=j, branch=rr.branch,
                  x=_label(rr.x), y=_label(rr.y), conclusions=rr.conclusions)
        if not rr.ok:
            raise ConstructionError("lemma7", f"conclusions fail at cycle {j}", trace.steps)
        rw = make_well_intersecting(pc, dec, order, j, rr)
        trace.add("lemma8", walk=i + 1, j=j, branch=rw.branch, sigma=rw.sigma,
                  sigma2=rw.sigma2, sigma_pair=sorted({rw.sigma, rw.sigma2}) == [j + 1, j + 2],
                  conclusions=rw.conclusions)
        if not rw.ok:
            raise ConstructionError("lemma8", f"conclusions fail at cycle {j}", trace.steps)
        R, R2 = rr.R, rr.R2
        head = S1.slice(0, S1.index(rr.x))
        head2 = R2.slice(0, R2.index(rr.x2))
        tail_r = R.slice(rw.pos_end, len(R.vertices) - 1)
        tail_r2 = R2.slice(rw.pos_end2, len(R2.vertices) - 1)
        if not rw.swapped:
            S1 = head + rw.S + tail_r
            new2 = head2 + rw.S2 + tail_r2
        else:
            S1 = head + rw.S + tail_r2
            new2 = head2 + rw.S2 + tail_r
        others[k] = new2
        done.add(j)
    return S1, [others[k] for k in sorted(others)]


def _ring_arc(cycle: Walk, a: int, b: int) -> list[int]:
    ring = cycle.vertices[:-1]
    L = len(ring)
    ia, ib = ring.index(a), ring.index(b)
    fwd = [cycle.edges[(ia + t) % L] for t in range((ib - ia) % L)]
    back = [cycle.edges[(ib + t) % L] for t in range((ia - ib) % L)]
    return fwd if len(fwd) <= len(back) else back


def join_pair(st: Structure, S: Walk, others: list[Walk]) -> tuple[frozenset[int], ...]:
    """``J = E - F`` where ``F`` closes ``S`` and another walk through the end cycles."""
    c1 = st.dec.cycles[st.dec.first]
    ck = st.dec.cycles[st.dec.last]
    out = []
    for O in others:
        F: set[int] = set()
        for e in (*S.edges, *O.edges, *_ring_arc(c1, S.start, O.start), *_ring_arc(ck, S.end, O.end)):
            F ^= {e}
        out.append(frozenset(range(st.pc.h.m)) - F)
    return tuple(out)


def _finish(st: Structure, i: int, S: Walk, others: list[Walk], trace: Trace) -> Triple:
    pc = st.pc
    h = pc.h
    A = pc.alpha_edges(S)
    if not is_balanced(h, pc.m_alpha, A):
        bad = [c for c in range(st.dec.k) if not well_intersects(pc, S, st.dec.cycles[c])]
        raise ConstructionError("theorem6", f"alpha edges of S_{i + 1} are not balanced",
                                trace.steps + [{"step": "unbalanced", "cycles": bad}])
    for O in others:
        if pc.alpha_edges(O) & A:
            raise ConstructionError("theorem6", f"S_{i + 1} shares an alpha edge with a partner",
                                    trace.steps)
    M = extend_balanced(h, pc.m_alpha, A)
    if odd_cut_inside(h, pc.m_alpha & M) is not None:
        raise ConstructionError("theorem6", "intersection contains an odd cut", trace.steps)
    joins = join_pair(st, S, others)
    for J in joins:
        if not is_join(h, J) or J & A:
            raise ConstructionError("theorem6", "join check failed", trace.steps)
    # cycles whose balance needed the piece closing the cyclic order
    closing = [
        c for c in range(st.dec.k)
        if (it := intersection(pc, S, st.dec.cycles[c])).ok != it.ok_open
    ]
    trace.add("triple", i=i + 1, A=sorted(A), M=sorted(M), closing_gap_decisive=closing)
    return Triple(S, A, M, joins, tuple(others))


def theorem6_pipeline(
    g: CubicGraph, path: Walk | None = None, node_cap: int = DEFAULT_NODE_CAP
) -> Theorem6Result:
    trace = Trace()
    if path is None:
        path = find_path(g, node_cap)
    pc, st = analyse(g, path, trace)
    if isinstance(st, EdgeColoring):
        return Theorem6Result(pc, None, Escape(st), (), trace)
    triples = []
    for i in range(3):
        S, others = balance_walk(st, i, trace)
        triples.append(_finish(st, i, S, others, trace))
    for t in triples:
        if pc.m_alpha & t.M & t.joins[0] or pc.m_alpha & t.M & t.joins[1]:
            raise ConstructionError("theorem6", "triple intersection not empty", trace.steps)
    return Theorem6Result(pc, st, None, tuple(triples), trace)


# -- special cases -------------------------------------------------------------


@dataclass(frozen=True)
class SpecialCase:
    name: str  # "h2", "h3" or "non-crossing"
    matchings: tuple[frozenset[int], ...]  # ids of the relabelled graph
    balanced_walks: tuple[int, ...]
    colours: dict = field(compare=False, default_factory=dict)


def _green_red(st: Structure) -> dict[str, list[int]]:
    """Colour the pieces of the path between deleted edges green, red, green, ..."""
    pieces = []
    cur = [0]
    for i in range(1, st.pc.n):
        if i in st.aux.deleted:
            pieces.append(cur)
            cur = [i]
        else:
            cur.append(i)
    pieces.append(cur)
    out: dict[str, list[int]] = {"green": [], "red": []}
    for t, piece in enumerate(pieces):
        out["green" if t % 2 == 0 else "red"].append(t)
    return out


def special_cases(st: Structure, trace: Trace | None = None) -> SpecialCase | None:
    """Shortcuts when the Gamma sequence is short or never crosses."""
    trace = trace or Trace()
    pc = st.pc
    h = st.seq.h
    alphas = [pc.alpha_edges(st.walks[k]) for k in range(3)]
    bal = [is_balanced(pc.h, pc.m_alpha, a) for a in alphas]

    def extend(a):
        return extend_balanced(pc.h, pc.m_alpha, a)

    if h == 2:
        if not all(bal):
            raise ConstructionError("special", "h=2 walks are not all balanced", trace.steps)
        ms = tuple(extend(a) for a in alphas)
        if pc.m_alpha & ms[0] & ms[1] & ms[2]:
            raise ConstructionError("special", "three matchings meet", trace.steps)
        return SpecialCase("h2", ms, (0, 1, 2))
    if h == 3:
        ends = _emax_ends(st, 2)
        plain = [k for k in range(3) if not ends & set(st.walks[k].vertices)]
        for b in plain:
            if not bal[b]:
                continue
            for a in range(3):
                if a == b:
                    continue
                try:
                    S, others = balance_walk(st, a, trace)
                except ConstructionError:
                    continue
                A = pc.alpha_edges(S)
                if A & alphas[b] or not is_balanced(pc.h, pc.m_alpha, A):
                    continue
                ms = (extend(A), extend(alphas[b]))
                if not pc.m_alpha & ms[0] & ms[1]:
                    return SpecialCase("h3", ms, (a, b))
        raise ConstructionError("special", "h=3 shortcut failed", trace.steps)
    crossing = [is_crossing(pc, st.dec, st.seq.cycle(j)) for j in st.seq.inner()]
    if not any(crossing):
        for a in range(3):
            for b in range(a + 1, 3):
                if bal[a] and bal[b]:
                    ms = (extend(alphas[a]), extend(alphas[b]))
                    return SpecialCase("non-crossing", ms, (a, b), _green_red(st))
        raise ConstructionError("special", "no two walks are balanced", trace.steps)
    return None
