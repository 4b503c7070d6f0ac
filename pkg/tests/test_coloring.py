import pytest
from hypothesis import given, strategies as st

from cubicmatch.coloring import (
    Colour,
    EdgeColoring,
    chromatic_index,
    coloring_from_pm,
    colouring_from_mapping,
    is_proper_colouring,
    pm_without_odd_cut,
    three_edge_coloring,
)
from cubicmatch.errors import NotPerfect, OddCycleInTwoFactor, ResourceCap
from cubicmatch.generators import flower_snark, generalized_petersen, k4, k33, moebius_ladder, petersen, prism, random_bridgeless
from cubicmatch.matchings import enumerate_perfect_matchings


@pytest.mark.parametrize("g, chi", [
    (k4(), 3), (k33(), 3), (prism(5), 3), (moebius_ladder(5), 3),
    (petersen(), 4), (flower_snark(5), 4), (generalized_petersen(7, 2), 3),
])
def test_chromatic_index(g, chi):
    assert chromatic_index(g) == chi


def test_colouring_is_proper():
    col = three_edge_coloring(prism(4))
    assert col.is_proper(prism(4))
    assert all(len(col.cls(c)) == 4 for c in (Colour.ALPHA, Colour.BETA, Colour.GAMMA))


def test_improper_colouring_detected():
    g = k4()
    assert not is_proper_colouring(g, [Colour.ALPHA] * g.m)
    assert not is_proper_colouring(g, [Colour.DELTA] * g.m)


def test_cap():
    with pytest.raises(ResourceCap):
        three_edge_coloring(petersen(), cap=10)


@given(st.sampled_from([8, 10, 12, 14]), st.integers(0, 10**6))
def test_theorem1_equivalence(n, seed):
    g = random_bridgeless(n, seed)
    assert (three_edge_coloring(g) is None) == (pm_without_odd_cut(g) is None)


def test_colouring_from_good_matching():
    g = prism(4)
    M = pm_without_odd_cut(g)
    col = coloring_from_pm(g, M)
    assert col.is_proper(g) and col.cls(Colour.ALPHA) == M


def test_colouring_from_bad_matching():
    M = enumerate_perfect_matchings(petersen())[0]
    with pytest.raises(OddCycleInTwoFactor):
        coloring_from_pm(petersen(), M)
    with pytest.raises(NotPerfect):
        coloring_from_pm(petersen(), [0])


def test_mapping_round_trip():
    g = k4()
    col = three_edge_coloring(g)
    again = colouring_from_mapping(g, {e: c.value for e, c in enumerate(col.colours)})
    assert isinstance(again, EdgeColoring) and again == col
