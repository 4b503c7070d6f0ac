import random

import pytest
from hypothesis import given, strategies as st

from cubicmatch.cuts import (
    is_even_subgraph,
    is_join,
    join_avoiding,
    kr_witness,
    ms_witness,
    odd_cut_brute_force,
    odd_cut_inside,
    ordered_pairs,
    parity_correction,
)
from cubicmatch.generators import flower_snark, k4, petersen, prism, random_bridgeless
from cubicmatch.graph import boundary, components_after_removal
from cubicmatch.matchings import enumerate_perfect_matchings, two_factor

edge_sets = st.builds(
    lambda n, seed, bits: (random_bridgeless(n, seed), bits),
    st.sampled_from([8, 10, 12]), st.integers(0, 10**6), st.integers(0, 2**36 - 1),
)


def _subset(g, bits):
    return frozenset(e for e in range(g.m) if bits >> e & 1)


@given(edge_sets)
def test_odd_cut_inside_matches_brute_force(item):
    g, bits = item
    S = _subset(g, bits)
    cert = odd_cut_inside(g, S)
    assert (cert is None) == (odd_cut_brute_force(g, S) is None)
    if cert is not None:
        assert len(cert.X) % 2 == 1 and cert.cut == boundary(g, cert.X) <= S
        assert cert.minimal
        assert len(components_after_removal(g, cert.cut)) == 2


@given(edge_sets)
def test_duality_with_joins(item):
    g, bits = item
    S = _subset(g, bits)
    J = join_avoiding(g, S)
    assert (J is None) == (odd_cut_inside(g, S) is not None)
    if J is not None:
        assert is_join(g, J) and not (J & S)
        assert is_even_subgraph(g, set(range(g.m)) - J)


def test_perfect_matching_with_odd_cycles_holds_odd_cut():
    g = petersen()
    M = enumerate_perfect_matchings(g)[0]
    cert = odd_cut_inside(g, M)
    assert cert is not None and len(cert.cut) == 5
    tf = two_factor(g, M)
    assert cert.X in {frozenset(c.vertices) for c in tf.cycles} | {frozenset(range(10)) - frozenset(c.vertices) for c in tf.cycles}


def test_parity_correction():
    g = prism(3)
    T = [0, 4]
    F = parity_correction(g, T, range(g.m))
    deg = [sum(1 for e in F if v in g.edges[e]) for v in range(g.n)]
    assert [v for v in range(g.n) if deg[v] % 2] == T
    assert parity_correction(g, [0], range(g.m)) is None


def test_ordered_pairs_sorted():
    ms = enumerate_perfect_matchings(petersen())
    pairs = ordered_pairs(ms)
    assert len(pairs) == 15
    assert all(size == 1 for size, _, _ in pairs)


@pytest.mark.parametrize("g", [k4(), petersen(), prism(5), flower_snark(5)])
def test_witnesses(g):
    pair = ms_witness(g)
    assert pair is not None and pair.M1 != pair.M2
    assert odd_cut_inside(g, pair.intersection) is None
    kr = kr_witness(g)
    assert is_join(g, kr.J) and not (kr.M1 & kr.M2 & kr.J)


def test_random_sets_reproducible():
    rng = random.Random(3)
    g = petersen()
    S = frozenset(e for e in range(g.m) if rng.random() < 0.5)
    assert (odd_cut_inside(g, S) is None) == (odd_cut_brute_force(g, S) is None)
