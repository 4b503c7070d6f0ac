"""Cubic graphs, walks, and structural queries.

Vertices are ``0..n-1``. Edges get dense identifiers in sorted order of their
endpoint pairs, so every edge set in a certificate is a sorted list of ints.
Edge sets and vertex sets are plain ``frozenset`` objects; hot loops use int
bitmasks via :func:`edge_mask`.
"""

from __future__ import annotations

import hashlib
import itertools
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

from .errors import (
    Disconnected,
    InvariantViolation,
    NotCubic,
    NotSimple,
    ResourceCap,
)

EdgeSet = frozenset
VertexSet = frozenset

DEFAULT_CYCLE_CAP = 10**6
DEFAULT_NODE_CAP = 10**7


@dataclass(frozen=True)
class CubicGraph:
    n: int
    edges: tuple[tuple[int, int], ...]
    incidence: tuple[tuple[int, ...], ...] = field(repr=False, compare=False)
    _ids: dict = field(repr=False, compare=False, hash=False)

    @property
    def m(self) -> int:
        return len(self.edges)

    @property
    def vertices(self) -> range:
        return range(self.n)

    @property
    def all_edges(self) -> frozenset[int]:
        return frozenset(range(len(self.edges)))

    @property
    def key(self) -> str:
        """Content hash used as the graph's identity in certificates."""
        text = f"{self.n}:" + ",".join(f"{u}-{v}" for u, v in self.edges)
        return hashlib.sha256(text.encode()).hexdigest()[:16]

    def edge_id(self, u: int, v: int) -> int:
        try:
            return self._ids[(u, v) if u < v else (v, u)]
        except KeyError:
            raise KeyError(f"no edge {u}-{v}") from None

    def has_edge(self, u: int, v: int) -> bool:
        return ((u, v) if u < v else (v, u)) in self._ids

    def other(self, e: int, v: int) -> int:
        a, b = self.edges[e]
        if v == a:
            return b
        if v == b:
            return a
        raise ValueError(f"vertex {v} is not an end of edge {e}")

    def neighbors(self, v: int) -> list[int]:
        return [self.other(e, v) for e in self.incidence[v]]

    def endpoints(self, edges: Iterable[int]) -> list[list[int]]:
        return [list(self.edges[e]) for e in sorted(edges)]


def build_graph(n: int, pairs: Iterable[Sequence[int]]) -> CubicGraph:
    """Validate ``pairs`` as a connected simple cubic graph on ``n`` vertices."""
    seen: set[tuple[int, int]] = set()
    for p in pairs:
        u, v = int(p[0]), int(p[1])
        if not (0 <= u < n and 0 <= v < n):
            raise NotSimple(f"edge {u}-{v} has an endpoint outside 0..{n - 1}")
        if u == v:
            raise NotSimple(f"loop at vertex {u}")
        key = (u, v) if u < v else (v, u)
        if key in seen:
            raise NotSimple(f"parallel edge {key[0]}-{key[1]}")
        seen.add(key)
    edges = tuple(sorted(seen))
    incidence: list[list[int]] = [[] for _ in range(n)]
    for i, (u, v) in enumerate(edges):
        incidence[u].append(i)
        incidence[v].append(i)
    bad = [v for v in range(n) if len(incidence[v]) != 3]
    if bad:
        raise NotCubic(f"vertex {bad[0]} has degree {len(incidence[bad[0]])}")
    if n < 4 or n % 2:
        raise NotCubic(f"a cubic graph needs an even order >= 4, got {n}")
    g = CubicGraph(
        n=n,
        edges=edges,
        incidence=tuple(tuple(x) for x in incidence),
        _ids={uv: i for i, uv in enumerate(edges)},
    )
    if len(components_after_removal(g, frozenset())) != 1:
        raise Disconnected("graph is not connected")
    return g


def edge_mask(edges: Iterable[int]) -> int:
    m = 0
    for e in edges:
        m |= 1 << e
    return m


def mask_edges(mask: int) -> frozenset[int]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return frozenset(out)


def boundary(g: CubicGraph, X: Iterable[int]) -> frozenset[int]:
    """Edges with exactly one end in ``X``."""
    xs = set(X)
    out = set()
    for v in xs:
        for e in g.incidence[v]:
            if g.other(e, v) not in xs:
                out.add(e)
    return frozenset(out)


def components_after_removal(
    g: CubicGraph, removed: Iterable[int]
) -> list[tuple[frozenset[int], list[int]]]:
    """Connected components of ``(V, E - removed)``, ordered by smallest vertex.

    Each component comes with the sorted list of surviving edges inside it.
    """
    gone = set(removed)
    comp = [-1] * g.n
    result = []
    for s in range(g.n):
        if comp[s] >= 0:
            continue
        idx = len(result)
        comp[s] = idx
        verts = [s]
        stack = [s]
        while stack:
            v = stack.pop()
            for e in g.incidence[v]:
                if e in gone:
                    continue
                w = g.other(e, v)
                if comp[w] < 0:
                    comp[w] = idx
                    verts.append(w)
                    stack.append(w)
        result.append(verts)
    out = []
    for verts in result:
        vs = frozenset(verts)
        inner = sorted(
            {e for v in verts for e in g.incidence[v] if e not in gone}
        )
        out.append((vs, inner))
    return out


def bridges(g: CubicGraph, removed: Iterable[int] = ()) -> frozenset[int]:
    """Edges whose removal disconnects ``g - removed`` (iterative low-link DFS)."""
    gone = set(removed)
    disc = [-1] * g.n
    low = [0] * g.n
    found = set()
    t = 0
    for root in range(g.n):
        if disc[root] >= 0:
            continue
        disc[root] = low[root] = t
        t += 1
        stack = [(root, -1, iter(g.incidence[root]))]
        while stack:
            v, via, it = stack[-1]
            advanced = False
            for e in it:
                if e == via or e in gone:
                    continue
                w = g.other(e, v)
                if disc[w] < 0:
                    disc[w] = low[w] = t
                    t += 1
                    stack.append((w, e, iter(g.incidence[w])))
                    advanced = True
                    break
                low[v] = min(low[v], disc[w])
            if not advanced:
                stack.pop()
                if stack:
                    parent = stack[-1][0]
                    low[parent] = min(low[parent], low[v])
                    if low[v] > disc[parent]:
                        found.add(via)
    return frozenset(found)


def is_bridgeless(g: CubicGraph) -> bool:
    return not bridges(g)


def has_cycle(g: CubicGraph, verts: Iterable[int]) -> bool:
    """Whether the subgraph induced on ``verts`` contains a cycle."""
    vs = set(verts)
    inner = {e for v in vs for e in g.incidence[v] if g.other(e, v) in vs}
    seen: set[int] = set()
    ncomp = 0
    for s in vs:
        if s in seen:
            continue
        ncomp += 1
        seen.add(s)
        stack = [s]
        while stack:
            v = stack.pop()
            for w in g.neighbors(v):
                if w in vs and w not in seen:
                    seen.add(w)
                    stack.append(w)
    # a forest on |vs| vertices with ncomp trees has |vs| - ncomp edges
    return len(inner) > len(vs) - ncomp


# -- cycles -----------------------------------------------------------------


def induced_cycles(g: CubicGraph, cap: int = DEFAULT_CYCLE_CAP) -> list[tuple[int, ...]]:
    """All chordless cycles, each as a vertex tuple starting at its smallest
    vertex with the second vertex smaller than the last."""
    adj = [set(g.neighbors(v)) for v in range(g.n)]
    out: list[tuple[int, ...]] = []
    for s in range(g.n):
        # path is induced; vertices > s only
        stack = [(s, [s], {s})]
        while stack:
            v, path, inpath = stack.pop()
            for w in sorted(adj[v], reverse=True):
                if w <= s or w in inpath:
                    continue
                # w may touch only v, and s (which then closes the cycle)
                bad = False
                for u in adj[w]:
                    if u in inpath and u != v and u != s:
                        bad = True
                        break
                if bad:
                    continue
                if s in adj[w] and len(path) >= 2:
                    if path[1] < w:
                        out.append(tuple(path + [w]))
                        if len(out) > cap:
                            raise ResourceCap("cycle enumeration", cap)
                    continue
                stack.append((w, path + [w], inpath | {w}))
    out.sort(key=lambda c: (len(c), c))
    return out


def girth(g: CubicGraph) -> int:
    best = g.n + 1
    for s in range(g.n):
        dist = {s: 0}
        parent = {s: -1}
        q = deque([s])
        while q:
            v = q.popleft()
            for w in g.neighbors(v):
                if w not in dist:
                    dist[w] = dist[v] + 1
                    parent[w] = v
                    q.append(w)
                elif parent[v] != w:
                    best = min(best, dist[v] + dist[w] + 1)
    return best


# -- cyclic edge connectivity ----------------------------------------------


class Unbounded:
    """Marker: the graph has no two vertex-disjoint cycles."""

    def __repr__(self) -> str:
        return "Unbounded"

    def __eq__(self, other) -> bool:
        return isinstance(other, Unbounded)

    def __hash__(self) -> int:
        return hash("Unbounded")


UNBOUNDED = Unbounded()


@dataclass(frozen=True)
class CyclicCut:
    size: int | Unbounded
    side: frozenset[int] = frozenset()
    cut: frozenset[int] = frozenset()


def _min_cut_between(
    g: CubicGraph, A: frozenset[int], B: frozenset[int], limit: int
) -> tuple[int, frozenset[int]]:
    """Edge-disjoint path count between vertex sets A and B, stopping at ``limit``.

    Returns ``(flow, side)``; ``side`` is the residual-reachable set from A when
    ``flow < limit`` (a minimum cut), otherwise empty.
    """
    # flow[e] in {-1, 0, 1}: +1 means one unit from edges[e][0] to edges[e][1]
    flow = [0] * g.m
    value = 0
    while value < limit:
        prev: dict[int, tuple[int, int]] = {}
        seen = set(A)
        q = deque(sorted(A))
        hit = -1
        while q and hit < 0:
            v = q.popleft()
            for e in g.incidence[v]:
                w = g.other(e, v)
                if w in seen:
                    continue
                forward = 1 if v == g.edges[e][0] else -1
                if flow[e] == forward:
                    continue
                seen.add(w)
                prev[w] = (v, e)
                if w in B:
                    hit = w
                    break
                q.append(w)
        if hit < 0:
            return value, frozenset(seen)
        w = hit
        while w not in A:
            v, e = prev[w]
            forward = 1 if v == g.edges[e][0] else -1
            flow[e] += forward
            w = v
        value += 1
    return value, frozenset()


def cyclic_edge_connectivity(
    g: CubicGraph, cap: int = DEFAULT_CYCLE_CAP
) -> CyclicCut:
    """Smallest edge cut leaving two components that both contain a cycle.

    Works over pairs of vertex-disjoint chordless cycles (every side of a
    cyclic cut contains a chordless cycle) with a max-flow per pair. The best
    value found so far bounds every later flow computation, and the search
    stops as soon as it reaches the ordinary edge connectivity.
    """
    cycles = induced_cycles(g, cap)
    sets = [frozenset(c) for c in cycles]
    lam = edge_connectivity(g)
    best = None
    best_side: frozenset[int] = frozenset()
    for i, A in enumerate(sets):
        for B in sets[i + 1:]:
            if A & B:
                continue
            limit = best if best is not None else g.m + 1
            value, side = _min_cut_between(g, A, B, limit)
            if value < limit:
                best, best_side = value, side
                if best <= lam:
                    break
        if best is not None and best <= lam:
            break
    if best is None:
        return CyclicCut(UNBOUNDED)
    cut = boundary(g, best_side)
    if len(cut) != best:
        raise InvariantViolation("flow value differs from cut size")
    _check_girth_bound(g, best, cycles)
    return CyclicCut(best, best_side, cut)


def _check_girth_bound(g: CubicGraph, k: int, cycles) -> None:
    for c in cycles:
        rest = set(range(g.n)) - set(c)
        if has_cycle(g, rest):
            if k > len(boundary(g, c)):
                raise InvariantViolation(
                    f"cyclic connectivity {k} exceeds cut of a short cycle"
                )
            return


def edge_connectivity(g: CubicGraph) -> int:
    """Edge connectivity, which is at most 3 in a cubic graph."""
    if bridges(g):
        return 1
    # a 2-edge cut through e exists iff g - e has a bridge
    if any(bridges(g, (e,)) for e in range(g.m)):
        return 2
    return 3


# -- walks ------------------------------------------------------------------


@dataclass(frozen=True)
class Walk:
    """A walk ``v0 e1 v1 ... el vl``; vertices and edges may repeat.

    ``precedes`` and ``sub`` use first occurrences, matching the usual reading
    of the order a walk induces on its vertices.
    """

    vertices: tuple[int, ...]
    edges: tuple[int, ...]

    def __post_init__(self):
        if len(self.vertices) != len(self.edges) + 1:
            raise ValueError("a walk has one more vertex than edges")

    @classmethod
    def from_vertices(cls, g: CubicGraph, verts: Sequence[int]) -> "Walk":
        verts = tuple(verts)
        return cls(verts, tuple(g.edge_id(a, b) for a, b in zip(verts, verts[1:])))

    @classmethod
    def single(cls, v: int) -> "Walk":
        return cls((v,), ())

    @property
    def start(self) -> int:
        return self.vertices[0]

    @property
    def end(self) -> int:
        return self.vertices[-1]

    def __len__(self) -> int:
        return len(self.edges)

    def __contains__(self, v: int) -> bool:
        return v in self.vertices

    def index(self, v: int, after: int = 0) -> int:
        return self.vertices.index(v, after)

    def precedes(self, z: int, t: int) -> bool:
        return self.index(z) < self.index(t)

    def slice(self, i: int, j: int) -> "Walk":
        """The sub-walk between vertex positions ``i <= j``."""
        if not 0 <= i <= j < len(self.vertices):
            raise ValueError(f"bad walk slice {i}..{j}")
        return Walk(self.vertices[i:j + 1], self.edges[i:j])

    def sub(self, z: int, t: int) -> "Walk":
        """``W(z, t)``: from the first ``z`` to the first ``t`` after it."""
        i = self.index(z)
        return self.slice(i, self.index(t, i))

    def prefix(self, z: int) -> "Walk":
        return self.slice(0, self.index(z))

    def suffix(self, z: int) -> "Walk":
        return self.slice(self.index(z), len(self.vertices) - 1)

    def reversed(self) -> "Walk":
        return Walk(self.vertices[::-1], self.edges[::-1])

    def __add__(self, other: "Walk") -> "Walk":
        if self.end != other.start:
            raise ValueError(
                f"cannot concatenate walk ending at {self.end} "
                f"with walk starting at {other.start}"
            )
        return Walk(self.vertices + other.vertices[1:], self.edges + other.edges)

    def is_valid(self, g: CubicGraph) -> bool:
        for i, e in enumerate(self.edges):
            if set(g.edges[e]) != {self.vertices[i], self.vertices[i + 1]}:
                return False
        return True


# -- Hamiltonian paths --------------------------------------------------------


def hamiltonian_paths(
    g: CubicGraph, node_cap: int = DEFAULT_NODE_CAP
) -> Iterator[Walk]:
    """All Hamiltonian paths in DFS order (start ascending, neighbours ascending).

    Each undirected path is produced twice, once from each end.
    """
    nbrs = [sorted(g.neighbors(v)) for v in range(g.n)]
    nodes = 0
    for s in range(g.n):
        path = [s]
        used = [False] * g.n
        used[s] = True
        stack = [iter(nbrs[s])]
        while stack:
            for w in stack[-1]:
                if used[w]:
                    continue
                nodes += 1
                if nodes > node_cap:
                    raise ResourceCap("Hamiltonian path search", node_cap)
                used[w] = True
                path.append(w)
                if len(path) == g.n:
                    yield Walk.from_vertices(g, path)
                    used[w] = False
                    path.pop()
                    continue
                stack.append(iter(nbrs[w]))
                break
            else:
                stack.pop()
                v = path.pop()
                used[v] = False


def find_hamiltonian_path(
    g: CubicGraph, node_cap: int = DEFAULT_NODE_CAP
) -> Walk | None:
    """First Hamiltonian path in DFS order, or ``None`` if there is none."""
    for p in hamiltonian_paths(g, node_cap):
        return p
    return None


def has_hamiltonian_cycle(g: CubicGraph, node_cap: int = DEFAULT_NODE_CAP) -> bool:
    # every Hamiltonian cycle through vertex 0 shows up as a path from 0
    for p in hamiltonian_paths(g, node_cap):
        if p.start != 0:
            return False
        if g.has_edge(p.start, p.end):
            return True
    return False


def exhaustive_cyclic_connectivity(g: CubicGraph) -> int | Unbounded:
    """Reference value by trying every edge subset of increasing size."""
    for c in range(1, g.m + 1):
        for cut in itertools.combinations(range(g.m), c):
            comps = components_after_removal(g, cut)
            if len(comps) < 2:
                continue
            with_cycle = sum(1 for vs, es in comps if len(es) >= len(vs))
            if with_cycle >= 2:
                return c
    return UNBOUNDED
