import itertools

import pytest
from hypothesis import given, strategies as st

from cubicmatch.errors import NotBalanced, NotPerfect, NotSubset, ResourceCap
from cubicmatch.generators import flower_snark, k4, k33, petersen, prism, random_bridgeless
from cubicmatch.matchings import (
    balanced_by_brute_force,
    enumerate_perfect_matchings,
    extend_balanced,
    fan_raspaud_search,
    is_balanced,
    is_perfect_matching,
    oddness,
    two_factor,
)


def _pm_oracle(g):
    return {frozenset(c) for c in itertools.combinations(range(g.m), g.n // 2) if is_perfect_matching(g, c)}


@pytest.mark.parametrize("g, count", [(k4(), 3), (k33(), 6), (petersen(), 6), (prism(3), 4)])
def test_matching_counts(g, count):
    ms = enumerate_perfect_matchings(g)
    assert len(ms) == count
    assert set(ms) == _pm_oracle(g)
    assert ms == sorted(ms, key=sorted)


def test_flower_snark_count():
    assert len(enumerate_perfect_matchings(flower_snark(5))) == 32


@given(st.sampled_from([8, 10, 12]), st.integers(0, 10**6))
def test_enumeration_matches_oracle(n, seed):
    g = random_bridgeless(n, seed)
    assert set(enumerate_perfect_matchings(g)) == _pm_oracle(g)


def test_cap():
    with pytest.raises(ResourceCap):
        enumerate_perfect_matchings(petersen(), cap=2)


def test_petersen_two_factors():
    for M in enumerate_perfect_matchings(petersen()):
        tf = two_factor(petersen(), M)
        assert sorted(len(c) for c in tf.cycles) == [5, 5]
    assert oddness(petersen()) == 2
    assert oddness(flower_snark(5)) == 2
    assert oddness(prism(4)) == 0


def test_two_factor_needs_perfect_matching():
    with pytest.raises(NotPerfect):
        two_factor(k4(), [0])


def _all_submatchings(M):
    M = sorted(M)
    for r in range(len(M) + 1):
        yield from (frozenset(c) for c in itertools.combinations(M, r))


@pytest.mark.parametrize("g", [k4(), k33(), petersen(), prism(4)])
def test_balanced_matches_oracle(g):
    ms = enumerate_perfect_matchings(g)
    for M in ms:
        for A in _all_submatchings(M):
            assert is_balanced(g, M, A) == balanced_by_brute_force(g, M, A, ms)


@given(st.sampled_from([8, 10]), st.integers(0, 10**6), st.data())
def test_extend_balanced_meets_exactly_A(n, seed, data):
    g = random_bridgeless(n, seed)
    ms = enumerate_perfect_matchings(g)
    M = data.draw(st.sampled_from(ms))
    A = frozenset(data.draw(st.sets(st.sampled_from(sorted(M)))))
    if is_balanced(g, M, A):
        Mp = extend_balanced(g, M, A)
        assert is_perfect_matching(g, Mp) and Mp & M == A
    else:
        with pytest.raises(NotBalanced):
            extend_balanced(g, M, A)


def test_balanced_errors():
    M = enumerate_perfect_matchings(k4())[0]
    other = next(e for e in range(6) if e not in M)
    with pytest.raises(NotSubset):
        is_balanced(k4(), M, [other])
    with pytest.raises(NotPerfect):
        is_balanced(k4(), [0], [])


def test_isolated_vertex_is_an_even_path():
    # K4: keeping one edge of M strands the other two vertices as 0-edge paths
    g = k4()
    M = enumerate_perfect_matchings(g)[0]
    e, f = sorted(M)
    assert is_balanced(g, M, [])
    assert is_balanced(g, M, M)
    assert not is_balanced(g, M, [e]) and not is_balanced(g, M, [f])


def test_fan_raspaud_petersen():
    a, b, c = fan_raspaud_search(petersen())
    assert not (a & b & c)
    assert len({a, b, c}) == 3
