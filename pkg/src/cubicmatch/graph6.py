"""graph6 reading and writing for graphs of order at most 62."""

from __future__ import annotations

from .errors import MalformedGraph6, TooLarge
from .graph import CubicGraph, build_graph


def _pairs_in_order(n: int):
    # upper triangle, column by column: (0,1), (0,2), (1,2), (0,3), ...
    for j in range(1, n):
        for i in range(j):
            yield i, j


def parse_graph6(line: str) -> CubicGraph:
    text = line.strip()
    if text.startswith(">>graph6<<"):
        text = text[len(">>graph6<<"):]
    if not text:
        raise MalformedGraph6("empty graph6 line")
    data = [ord(ch) - 63 for ch in text]
    if any(not 0 <= x <= 63 for x in data):
        raise MalformedGraph6("graph6 characters must lie in '?'..'~'")
    n = data[0]
    if n == 63:
        raise MalformedGraph6("orders above 62 are not supported")
    nbits = n * (n - 1) // 2
    need = (nbits + 5) // 6
    body = data[1:]
    if len(body) != need:
        raise MalformedGraph6(
            f"expected {need} data bytes for n={n}, found {len(body)}"
        )
    bits = []
    for x in body:
        bits.extend((x >> k) & 1 for k in range(5, -1, -1))
    if any(bits[nbits:]):
        raise MalformedGraph6("padding bits must be zero")
    pairs = [p for p, b in zip(_pairs_in_order(n), bits) if b]
    return build_graph(n, pairs)


def write_graph6(g: CubicGraph) -> str:
    if g.n > 62:
        raise TooLarge("graph6 writer supports n <= 62")
    present = set(g.edges)
    bits = [1 if p in present else 0 for p in _pairs_in_order(g.n)]
    bits += [0] * (-len(bits) % 6)
    out = [chr(g.n + 63)]
    for i in range(0, len(bits), 6):
        x = 0
        for b in bits[i:i + 6]:
            x = (x << 1) | b
        out.append(chr(x + 63))
    return "".join(out)
