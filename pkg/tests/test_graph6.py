import pytest
from hypothesis import given, strategies as st

from cubicmatch.errors import MalformedGraph6, NotCubic, TooLarge
from cubicmatch.generators import flower_snark, k4, petersen, random_bridgeless
from cubicmatch.graph import build_graph, girth
from cubicmatch.graph6 import parse_graph6, write_graph6


def test_k4_encoding():
    # n=4 -> chr(67)='C'; six bits all set -> chr(63+63)='~'
    assert write_graph6(k4()) == "C~"
    assert parse_graph6("C~") == k4()


def test_header_is_accepted():
    assert parse_graph6(">>graph6<<C~\n") == k4()


@pytest.mark.parametrize("g", [k4(), petersen(), flower_snark(5)])
def test_round_trip(g):
    assert parse_graph6(write_graph6(g)) == g


def test_petersen_round_trip_keeps_invariants():
    g = parse_graph6(write_graph6(petersen()))
    assert g.n == 10 and g.m == 15 and girth(g) == 5


@given(st.sampled_from([8, 10, 12, 14]), st.integers(0, 10**6))
def test_round_trip_random(n, seed):
    g = random_bridgeless(n, seed)
    assert parse_graph6(write_graph6(g)) == g


@pytest.mark.parametrize("line", ["", "C", "C~~", "C\x7f", "C "])
def test_malformed(line):
    with pytest.raises(MalformedGraph6):
        parse_graph6(line)


def test_not_cubic():
    # path on 4 vertices: bits for 01, 12, 23 in column order 01,02,12,03,13,23
    with pytest.raises(NotCubic):
        parse_graph6(chr(63 + 4) + chr(63 + 0b101001))


def test_too_large():
    n = 64
    g = build_graph(n, [(i, (i + 1) % n) for i in range(n)] + [(i, i + n // 2) for i in range(n // 2)])
    with pytest.raises(TooLarge):
        write_graph6(g)
