import json
import pathlib

import pytest
from hypothesis import given, settings, strategies as st

from helpers import local_traceable

from cubicmatch.coloring import Colour
from cubicmatch.cuts import odd_cut_brute_force
from cubicmatch.errors import NotHamiltonian
from cubicmatch.generators import flower_snark, k4, petersen, prism
from cubicmatch.graph import Walk
from cubicmatch.graph6 import parse_graph6
from cubicmatch.matchings import is_perfect_matching
from cubicmatch.pipeline import (
    Trace,
    color_along_path,
    intersection,
    special_cases,
    theorem6_pipeline,
    well_intersects,
)
from cubicmatch.pipeline.structure import (
    check_auxiliary,
    check_decomposition,
    check_gamma,
    check_walks,
)

A, B, C, D = Colour.ALPHA, Colour.BETA, Colour.GAMMA, Colour.DELTA
FIXTURES = json.loads((pathlib.Path(__file__).parent / "fixtures" / "lemma_branches.json").read_text())
BRANCHES = ["lemma7:no-swap", "lemma7:swap", "lemma8:disjoint", "lemma8:case1", "lemma8:case2"]


def _fixture(key):
    f = FIXTURES[key]
    g = parse_graph6(f["graph6"])
    return g, Walk.from_vertices(g, f["path"]), f


def _is_join(g, J):
    return all(sum(1 for e in J if v in g.edges[e]) % 2 == 1 for v in range(g.n))


def check_result(g, res):
    """Independent checks of the three matchings and their joins in ``g``."""
    ms = res.matchings_in_g()
    assert len(ms) == 3
    m_alpha = res.m_alpha_in_g
    assert is_perfect_matching(g, m_alpha)
    for M in ms:
        assert is_perfect_matching(g, M)
        if g.n <= 14:
            assert odd_cut_brute_force(g, m_alpha & M) is None
    assert not (m_alpha & ms[0] & ms[1] & ms[2])
    for M, joins in zip(ms, res.joins_in_g()):
        for J in joins:
            assert _is_join(g, J)
            assert not (m_alpha & M & J)


def test_k4_path_colouring():
    g = k4()
    pc = color_along_path(g, Walk.from_vertices(g, [0, 1, 2, 3]))
    by_pair = {pc.h.edges[e]: c for e, c in enumerate(pc.colours)}
    assert by_pair == {(0, 1): A, (1, 2): B, (2, 3): A, (0, 2): D, (1, 3): D, (0, 3): C}
    assert pc.m_alpha == {pc.e(1), pc.e(3)}


def test_non_hamiltonian_walk_rejected():
    g = k4()
    with pytest.raises(NotHamiltonian):
        color_along_path(g, Walk.from_vertices(g, [0, 1, 2]))


def test_prism_escapes_with_a_proper_colouring():
    g = prism(4)
    res = theorem6_pipeline(g)
    assert res.escaped and res.escape.colouring.is_proper(g)


@pytest.mark.parametrize("g", [petersen(), flower_snark(5), flower_snark(7)])
def test_snarks_give_three_matchings(g):
    res = theorem6_pipeline(g)
    assert not res.escaped
    check_result(g, res)
    st_ = res.structure
    check_decomposition(st_.pc, st_.dec)
    check_gamma(st_.dec, st_.seq)
    check_auxiliary(st_.pc, st_.aux)
    check_walks(st_.pc, st_.dec, st_.walks)


def test_petersen_structure():
    res = theorem6_pipeline(petersen())
    dec = res.structure.dec
    assert dec.k == 2 and sorted(len(c) for c in dec.cycles) == [5, 5]
    assert res.structure.seq.h == 2
    sc = special_cases(res.structure)
    assert sc.name == "h2" and len(sc.matchings) == 3
    assert not (res.pc.m_alpha & sc.matchings[0] & sc.matchings[1] & sc.matchings[2])


def test_fixture_file_covers_every_branch():
    seen = set()
    for key in FIXTURES:
        g, path, _ = _fixture(key)
        res = theorem6_pipeline(g, path)
        seen |= {f"{s['step']}:{s['branch']}" for s in res.trace.steps if s["step"] in ("lemma7", "lemma8")}
    assert set(BRANCHES) <= seen


@pytest.mark.parametrize("key", BRANCHES)
def test_branch_fixture(key):
    g, path, _ = _fixture(key)
    res = theorem6_pipeline(g, path)
    step, branch = key.split(":")
    hits = [s for s in res.trace.steps if s["step"] == step and s["branch"] == branch]
    assert hits, f"{key} not reached"
    for s in hits:
        assert all(s["conclusions"].values())
    check_result(g, res)


@pytest.mark.parametrize("key", ["crossing", "crossing-h4", "non-crossing-h4", "h3"])
def test_gamma_fixtures(key):
    g, path, f = _fixture(key)
    res = theorem6_pipeline(g, path)
    gam = next(s for s in res.trace.steps if s["step"] == "gamma")
    if key.startswith("crossing"):
        assert any(gam["crossing"])
    if key == "non-crossing-h4":
        assert gam["h"] >= 4 and not any(gam["crossing"])
    if key == "h3":
        assert gam["h"] == 3
    sc = special_cases(res.structure)
    assert (sc.name if sc else None) == f["special"]
    check_result(g, res)


def test_no_shortcut_for_crossing_h4():
    g, path, _ = _fixture("crossing-h4")
    res = theorem6_pipeline(g, path)
    assert res.structure.seq.h >= 4
    assert special_cases(res.structure) is None


def test_non_crossing_colours_alternate():
    g, path, _ = _fixture("non-crossing-h4")
    sc = special_cases(theorem6_pipeline(g, path).structure)
    assert sc.name == "non-crossing"
    assert sc.colours["green"][0] == 0 and sc.colours["red"][0] == 1


@settings(max_examples=25)
@given(st.sampled_from([12, 14, 16, 18, 20]), st.integers(0, 10**6), st.sampled_from([4, 6, 8]))
def test_pipeline_on_local_chord_graphs(n, seed, window):
    inst = local_traceable(n, seed, window)
    if inst is None:
        return
    g, path = inst
    res = theorem6_pipeline(g, path)
    if res.escaped:
        assert res.escape.colouring.is_proper(g)
        return
    check_result(g, res)
    for s in res.trace.steps:
        if s["step"] in ("lemma7", "lemma8"):
            assert all(s["conclusions"].values())


def test_well_intersection_gaps():
    res = theorem6_pipeline(petersen())
    pc, dec = res.pc, res.structure.dec
    for t in res.triples:
        for cyc in dec.cycles:
            it = intersection(pc, t.walk, cyc)
            assert sum(it.gaps) == (len(cyc) if it.points else 0)
            assert well_intersects(pc, t.walk, cyc) == it.ok


def test_trace_records_steps():
    trace = Trace()
    trace.add("x", a=1)
    assert trace.steps == [{"step": "x", "a": 1}]


@settings(max_examples=20)
@given(st.sampled_from([12, 14, 16, 20]), st.integers(0, 10**6), st.sampled_from([4, 6, 8]))
def test_final_walks_well_intersect_every_cycle(n, seed, window):
    # a walk meeting every cycle in odd pieces has balanced alpha edges
    from cubicmatch.matchings import is_balanced

    inst = local_traceable(n, seed, window)
    if inst is None:
        return
    res = theorem6_pipeline(*inst)
    if res.escaped:
        return
    pc = res.pc
    for t in res.triples:
        assert all(well_intersects(pc, t.walk, cyc) for cyc in res.structure.dec.cycles)
        assert is_balanced(pc.h, pc.m_alpha, t.A)
