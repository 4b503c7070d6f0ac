import itertools

import pytest
from hypothesis import given, strategies as st

from cubicmatch.errors import Disconnected, NotCubic, NotSimple, ResourceCap
from cubicmatch.generators import flower_snark, k4, k33, petersen, prism, random_bridgeless
from cubicmatch.graph import (
    UNBOUNDED,
    Walk,
    boundary,
    bridges,
    build_graph,
    components_after_removal,
    cyclic_edge_connectivity,
    edge_connectivity,
    exhaustive_cyclic_connectivity,
    find_hamiltonian_path,
    girth,
    hamiltonian_paths,
    has_hamiltonian_cycle,
    induced_cycles,
    is_bridgeless,
)

small_graphs = st.builds(random_bridgeless, st.sampled_from([8, 10, 12]), st.integers(0, 10**6))


def test_build_rejects_bad_input():
    with pytest.raises(NotCubic):
        build_graph(4, [(0, 1), (1, 2), (2, 3)])
    with pytest.raises(NotSimple):
        build_graph(4, [(0, 1), (0, 1), (0, 2), (1, 3), (2, 3), (2, 3)])
    two_k4 = [(a + o, b + o) for o in (0, 4) for a, b in itertools.combinations(range(4), 2)]
    with pytest.raises(Disconnected):
        build_graph(8, two_k4)


def test_edges_are_sorted_and_ids_stable():
    g = k4()
    assert list(g.edges) == sorted(g.edges)
    assert all(g.edge_id(*g.edges[e]) == e for e in range(g.m))
    assert g.m == 6 and g.key == k4().key


def test_boundary_and_components():
    g = prism(3)
    tri = {0, 1, 2}
    cut = boundary(g, tri)
    assert len(cut) == 3
    comps = components_after_removal(g, cut)
    assert sorted(len(v) for v, _ in comps) == [3, 3]


def _bridges_oracle(g):
    return {e for e in range(g.m) if len(components_after_removal(g, [e])) > 1}


def test_bridges_of_a_graph_with_a_bridge():
    # two K4s, each with one subdivided edge, joined at the subdivision vertices
    pairs = []
    for o in (0, 5):
        pairs += [(o, o + 1), (o, o + 2), (o + 1, o + 2), (o + 1, o + 3), (o + 2, o + 3), (o, o + 4), (o + 3, o + 4)]
    pairs.append((4, 9))
    g = build_graph(10, pairs)
    assert bridges(g) == {g.edge_id(4, 9)} == _bridges_oracle(g)
    assert not is_bridgeless(g)


@given(small_graphs)
def test_bridgeless_generator(g):
    assert is_bridgeless(g) and not _bridges_oracle(g)


def test_girth_values():
    assert girth(k4()) == 3
    assert girth(k33()) == 4
    assert girth(petersen()) == 5


def _induced_cycles_oracle(g):
    out = set()
    for r in range(3, g.n + 1):
        for verts in itertools.combinations(range(g.n), r):
            vs = set(verts)
            inside = [e for e in range(g.m) if set(g.edges[e]) <= vs]
            if len(inside) != r:
                continue
            if all(sum(1 for e in inside if v in g.edges[e]) == 2 for v in vs) and \
                    len(components_after_removal(g, [e for e in range(g.m) if e not in inside])) - (g.n - r) == 1:
                out.add(frozenset(vs))
    return out


def test_induced_cycles_match_oracle_on_petersen():
    found = {frozenset(c) for c in induced_cycles(petersen())}
    assert len(found) == 22
    assert found == _induced_cycles_oracle(petersen())


@pytest.mark.parametrize("g, expected", [
    (k4(), UNBOUNDED),
    (k33(), UNBOUNDED),
    (prism(3), 3),
    (prism(4), 4),
    (petersen(), 5),
])
def test_cyclic_edge_connectivity_known(g, expected):
    assert cyclic_edge_connectivity(g).size == expected
    assert exhaustive_cyclic_connectivity(g) == expected


def test_cyclic_edge_connectivity_flower_snark():
    # DERIVED by the exhaustive oracle would be too slow at n=20; the max-flow
    # value agrees with the known value 5 for J5 and with the girth bound
    cut = cyclic_edge_connectivity(flower_snark(5))
    assert cut.size == 5
    assert len(boundary(flower_snark(5), cut.side)) == 5


@given(small_graphs)
def test_cyclic_edge_connectivity_matches_exhaustive(g):
    cut = cyclic_edge_connectivity(g)
    assert cut.size == exhaustive_cyclic_connectivity(g)
    if cut.size != UNBOUNDED:
        comps = components_after_removal(g, cut.cut)
        assert len(comps) == 2 and all(len(es) >= len(vs) for vs, es in comps)
        assert cut.size >= edge_connectivity(g)


def test_cycle_cap_is_an_error():
    with pytest.raises(ResourceCap):
        cyclic_edge_connectivity(petersen(), cap=3)


def test_walk_operations():
    g = petersen()
    w = Walk.from_vertices(g, [0, 1, 2, 3, 4, 0, 5])
    assert w.is_valid(g) and len(w) == 6
    assert w.precedes(1, 3) and not w.precedes(3, 1)
    assert w.sub(1, 4).vertices == (1, 2, 3, 4)
    assert w.prefix(2).vertices == (0, 1, 2)
    assert w.suffix(4).vertices == (4, 0, 5)
    assert (w.prefix(2) + w.suffix(2)).vertices == w.vertices
    assert w.reversed().reversed() == w
    with pytest.raises(ValueError):
        w.prefix(2) + w.prefix(2)


def _ham_paths_oracle(g):
    out = 0
    for perm in itertools.permutations(range(g.n)):
        if all(g.has_edge(a, b) for a, b in zip(perm, perm[1:])):
            out += 1
    return out


@pytest.mark.parametrize("g", [k4(), k33(), prism(3), prism(4)])
def test_hamiltonian_paths_count_matches_permutations(g):
    paths = list(hamiltonian_paths(g))
    assert len(paths) == _ham_paths_oracle(g)
    assert all(p.is_valid(g) and len(set(p.vertices)) == g.n for p in paths)


def test_hamiltonian_queries():
    p = find_hamiltonian_path(petersen())
    assert p.vertices == (0, 1, 2, 3, 4, 9, 6, 8, 5, 7)
    assert not has_hamiltonian_cycle(petersen())
    assert has_hamiltonian_cycle(prism(4))
    with pytest.raises(ResourceCap):
        list(hamiltonian_paths(petersen(), node_cap=5))
