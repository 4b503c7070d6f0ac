"""Named cubic graph families and a seeded random bridgeless generator."""

from __future__ import annotations

import random

from .errors import BadParams, CubicError
from .graph import CubicGraph, build_graph, is_bridgeless


def k4() -> CubicGraph:
    return build_graph(4, [(u, v) for u in range(4) for v in range(u + 1, 4)])


def k33() -> CubicGraph:
    return build_graph(6, [(u, v) for u in range(3) for v in range(3, 6)])


def prism(m: int) -> CubicGraph:
    """Two m-cycles ``0..m-1`` and ``m..2m-1`` joined by rungs ``i ~ m+i``."""
    if m < 3:
        raise BadParams("prism needs m >= 3")
    pairs = []
    for i in range(m):
        j = (i + 1) % m
        pairs += [(i, j), (m + i, m + j), (i, m + i)]
    return build_graph(2 * m, pairs)


def moebius_ladder(m: int) -> CubicGraph:
    """A 2m-cycle with the m long diagonals ``i ~ i+m``."""
    if m < 3:
        raise BadParams("moebius_ladder needs m >= 3")
    n = 2 * m
    pairs = [(i, (i + 1) % n) for i in range(n)] + [(i, i + m) for i in range(m)]
    return build_graph(n, pairs)


def generalized_petersen(m: int, t: int) -> CubicGraph:
    """Outer cycle ``0..m-1``, spokes ``i ~ m+i``, inner edges ``m+i ~ m+(i+t)``."""
    if m < 3 or not 1 <= t < m / 2:
        raise BadParams("generalized_petersen needs m >= 3 and 1 <= t < m/2")
    pairs = []
    for i in range(m):
        pairs += [(i, (i + 1) % m), (i, m + i), (m + i, m + (i + t) % m)]
    return build_graph(2 * m, pairs)


def petersen() -> CubicGraph:
    return generalized_petersen(5, 2)


def flower_snark(m: int) -> CubicGraph:
    """Flower snark J_m: centres ``a_i = i``, ``b_i = m+i``, ``c_i = 2m+i``,
    ``d_i = 3m+i``; the b's form an m-cycle and the c's and d's one 2m-cycle."""
    if m < 5 or m % 2 == 0:
        raise BadParams("flower_snark needs an odd m >= 5")
    a, b, c, d = (lambda i: i), (lambda i: m + i), (lambda i: 2 * m + i), (lambda i: 3 * m + i)
    pairs = []
    for i in range(m):
        j = (i + 1) % m
        pairs += [(a(i), b(i)), (a(i), c(i)), (a(i), d(i)), (b(i), b(j))]
        pairs.append((c(i), c(j)) if j else (c(i), d(0)))
        pairs.append((d(i), d(j)) if j else (d(i), c(0)))
    return build_graph(4 * m, pairs)


def random_bridgeless(n: int, seed: int, max_tries: int = 100_000) -> CubicGraph:
    """Uniform pairing model with rejection until simple, connected and bridgeless."""
    if n < 4 or n % 2:
        raise BadParams("random_bridgeless needs an even n >= 4")
    rng = random.Random(seed)
    points = [v for v in range(n) for _ in range(3)]
    for _ in range(max_tries):
        rng.shuffle(points)
        pairs = list(zip(points[0::2], points[1::2]))
        try:
            g = build_graph(n, pairs)
        except CubicError:
            continue
        if is_bridgeless(g):
            return g
    raise BadParams(f"no bridgeless cubic graph found for n={n} in {max_tries} tries")


def inflate(g: CubicGraph, vertices) -> CubicGraph:
    """Replace each listed vertex by a triangle; keeps the chromatic index."""
    vertices = sorted(set(vertices))
    nxt = g.n
    port: dict[tuple[int, int], int] = {}
    pairs = []
    for v in vertices:
        corners = [v, nxt, nxt + 1]
        nxt += 2
        pairs += [(corners[0], corners[1]), (corners[1], corners[2]), (corners[0], corners[2])]
        for c, e in zip(corners, sorted(g.incidence[v])):
            port[(v, e)] = c
    for e, (u, w) in enumerate(g.edges):
        pairs.append((port.get((u, e), u), port.get((w, e), w)))
    return build_graph(nxt, pairs)


def dot_product(g: CubicGraph, h: CubicGraph, e1: int = 0, e2: int = 0, x: int = 0) -> CubicGraph:
    """Dot product of two cubic graphs (two snarks give a snark).

    Edges ``e1``/``e2`` (ids) are removed from ``g``; vertex ``x`` of ``h`` and
    its neighbour across edge ``h.incidence[x][0]`` are removed from ``h``.
    """
    a, b = g.edges[e1]
    c, d = g.edges[e2]
    if {a, b} & {c, d}:
        raise BadParams("dot product needs two independent edges of the first graph")
    y = h.other(h.incidence[x][0], x)
    xs = [w for w in h.neighbors(x) if w != y]
    ys = [w for w in h.neighbors(y) if w != x]
    keep = [v for v in range(h.n) if v not in (x, y)]
    off = {v: g.n + i for i, v in enumerate(keep)}
    pairs = [g.edges[e] for e in range(g.m) if e not in (e1, e2)]
    pairs += [(off[u], off[w]) for u, w in h.edges if not {u, w} & {x, y}]
    pairs += [(a, off[xs[0]]), (b, off[xs[1]]), (c, off[ys[0]]), (d, off[ys[1]])]
    return build_graph(g.n + h.n - 2, pairs)


GENERATORS = {
    "k4": (k4, 0),
    "k33": (k33, 0),
    "prism": (prism, 1),
    "moebius_ladder": (moebius_ladder, 1),
    "petersen": (petersen, 0),
    "generalized_petersen": (generalized_petersen, 2),
    "flower_snark": (flower_snark, 1),
    "random_bridgeless": (random_bridgeless, 2),
}


def generate(name: str, *params: int) -> CubicGraph:
    try:
        fn, arity = GENERATORS[name]
    except KeyError:
        raise BadParams(f"unknown generator {name!r}") from None
    if len(params) != arity:
        raise BadParams(f"{name} takes {arity} parameter(s), got {len(params)}")
    return fn(*params)


def parse_spec(text: str) -> tuple[str, tuple[int, ...]]:
    """Parse ``name`` or ``name(a,b)`` or ``name:a,b``."""
    text = text.strip()
    if "(" in text:
        if not text.endswith(")"):
            raise BadParams(f"bad generator spec {text!r}")
        name, rest = text[:-1].split("(", 1)
    elif ":" in text:
        name, rest = text.split(":", 1)
    else:
        name, rest = text, ""
    try:
        params = tuple(int(p) for p in rest.split(",") if p.strip())
    except ValueError:
        raise BadParams(f"bad generator parameters in {text!r}") from None
    return name.strip(), params


def standard_catalog(randoms_per_order: int = 100) -> list[tuple[str, CubicGraph]]:
    """The fixed catalogue used by the acceptance checks, in a stable order."""
    out = [("k4", k4()), ("k33", k33())]
    out += [(f"prism({m})", prism(m)) for m in range(3, 7)]
    out += [(f"moebius_ladder({m})", moebius_ladder(m)) for m in range(3, 7)]
    out.append(("petersen", petersen()))
    out += [(f"generalized_petersen({m},2)", generalized_petersen(m, 2)) for m in range(5, 10)]
    out.append(("flower_snark(5)", flower_snark(5)))
    for n in (8, 10, 12, 14):
        for seed in range(randoms_per_order):
            out.append((f"random_bridgeless({n},{seed})", random_bridgeless(n, seed)))
    return out
