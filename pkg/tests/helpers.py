"""Shared test utilities: small traceable graphs with local chords."""

from __future__ import annotations

import random

from cubicmatch.graph import Walk, build_graph, is_bridgeless


def local_traceable(n: int, seed: int, window: int = 6, tries: int = 2000):
    """A bridgeless cubic graph on the path ``0..n-1`` whose chords span at most ``window``.

    Short chords keep the cycles of ``G - M_alpha`` local, which gives long
    Gamma sequences. Returns ``(graph, path)`` or ``None``.
    """
    rng = random.Random(seed)
    for _ in range(tries):
        need = [1] * n
        need[0] = need[-1] = 2
        pairs = [(i, i + 1) for i in range(n - 1)]
        have = set(pairs)
        ok = True
        for v in range(n):
            while need[v] > 0:
                cands = [w for w in range(v + 2, min(n, v + window + 1)) if need[w] > 0 and (v, w) not in have]
                if not cands:
                    ok = False
                    break
                w = rng.choice(cands)
                need[v] -= 1
                need[w] -= 1
                pairs.append((v, w))
                have.add((v, w))
            if not ok:
                break
        if not ok:
            continue
        g = build_graph(n, pairs)
        if is_bridgeless(g):
            return g, Walk.from_vertices(g, range(n))
    return None
