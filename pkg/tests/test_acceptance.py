"""The eleven acceptance criteria, each timed against its limit.

Every test reports one ``ACCEPTANCE <n> PASS|FAIL`` line through the terminal
reporter, so the lines show up even when output is captured.
"""

import itertools
import random
import time
from contextlib import contextmanager
from fractions import Fraction

import pytest

from cubicmatch.cli import main
from cubicmatch.coloring import chromatic_index, pm_without_odd_cut, three_edge_coloring
from cubicmatch.cuts import join_avoiding, ms_witness, odd_cut_inside
from cubicmatch.fractional import theorem3_check, theorem45_check
from cubicmatch.generators import flower_snark, petersen, prism, standard_catalog
from cubicmatch.graph import cyclic_edge_connectivity
from cubicmatch.matchings import (
    balanced_by_brute_force,
    enumerate_perfect_matchings,
    is_balanced,
    is_perfect_matching,
    oddness,
)
from cubicmatch.pipeline import special_cases, theorem6_pipeline
from cubicmatch.report import Caps, verify_record

CATALOG = standard_catalog(100)


@pytest.fixture
def criterion(request):
    reporter = request.config.pluginmanager.getplugin("terminalreporter")

    @contextmanager
    def run(number: int, title: str, limit: float):
        t0 = time.perf_counter()
        ok = False
        try:
            yield
            elapsed = time.perf_counter() - t0
            assert elapsed < limit, f"took {elapsed:.1f} s, limit {limit} s"
            ok = True
        finally:
            elapsed = time.perf_counter() - t0
            line = f"ACCEPTANCE {number:>2} {'PASS' if ok else 'FAIL'}  {elapsed:7.2f} s / {limit:g} s  {title}"
            if reporter is not None:
                reporter.ensure_newline()
                reporter.write_line(line)
            else:
                print(line)

    return run


def _is_join(g, J):
    return all(sum(1 for e in J if v in g.edges[e]) % 2 == 1 for v in range(g.n))


def test_01_petersen_baseline(criterion):
    with criterion(1, "Petersen baseline", 5):
        g = petersen()
        ms = enumerate_perfect_matchings(g)
        assert len(ms) == 6
        sizes = [len(a & b) for a, b in itertools.combinations(ms, 2)]
        assert set(sizes) == {1}
        assert min(sizes) == 1 == g.n // 10
        assert chromatic_index(g) == 4
        assert oddness(g) == 2
        assert cyclic_edge_connectivity(g).size == 5


def test_02_theorem1_equivalence(criterion):
    with criterion(2, "colourable iff some perfect matching holds no odd cut", 120):
        assert len(CATALOG) == 417
        for gid, g in CATALOG:
            col = three_edge_coloring(g)
            M = pm_without_odd_cut(g)
            assert (col is None) == (M is None), gid


def test_03_theorem3(criterion):
    with criterion(3, "pair with |M & M'| <= n/10 and no odd cut", 120):
        for gid, g in CATALOG:
            assert g.n < 50
            res = theorem3_check(g)
            assert len(res.intersection) <= g.n // 10, gid
            assert odd_cut_inside(g, res.intersection) is None, gid


def test_04_theorem4_petersen(criterion):
    with criterion(4, "Petersen takes the odd-cut alternative", 1):
        g = petersen()
        rep = theorem45_check(g)
        assert rep.k == 5 and rep.s == 7 == 2 * (5 // 2) + 3
        assert rep.pair_bound == Fraction(10, 14)
        assert rep.alternative2 and len(rep.alternative2_cuts) == 6
        for M, (X, cut) in rep.alternative2_cuts:
            assert cut <= M and len(cut) == 5 == 2 * (5 // 2) + 1 and len(X) % 2 == 1
        ms = enumerate_perfect_matchings(g)
        assert not any(Fraction(len(a & b)) <= Fraction(10, 14) for a, b in itertools.combinations(ms, 2))
        assert rep.alternative1 is False


def test_05_theorem5(criterion):
    with criterion(5, "MS witness below the order threshold when k >= 4", 120):
        covered = 0
        for gid, g in CATALOG:
            k = cyclic_edge_connectivity(g).size
            if not isinstance(k, int) or k < 4:
                continue
            s = 2 * (k // 2) + 3
            if g.n < 2 * s * (s - 2):
                pair = ms_witness(g)
                assert pair is not None, gid
                assert odd_cut_inside(g, pair.M1 & pair.M2) is None
                covered += 1
        assert covered > 0


def test_06_lemma1_oracle(criterion):
    with criterion(6, "balanced test agrees with brute force (n <= 10)", 300):
        checked = 0
        for gid, g in CATALOG:
            if g.n > 10:
                continue
            ms = enumerate_perfect_matchings(g)
            for M in ms:
                Ms = sorted(M)
                for r in range(len(Ms) + 1):
                    for A in itertools.combinations(Ms, r):
                        assert is_balanced(g, M, A) == balanced_by_brute_force(g, M, A, ms), gid
                        checked += 1
        assert checked > 0


def test_07_odd_cut_duality(criterion):
    with criterion(7, "odd cut inside S iff no join avoids S (n <= 14)", 120):
        for gid, g in CATALOG:
            if g.n > 14:
                continue
            rng = random.Random(gid)
            for _ in range(50):
                S = [e for e in range(g.m) if rng.random() < 0.5]
                assert (odd_cut_inside(g, S) is None) == (join_avoiding(g, S) is not None), gid


def _check_theorem6(g, res):
    ma = res.m_alpha_in_g
    assert is_perfect_matching(g, ma)
    ms = res.matchings_in_g()
    assert len(ms) == 3
    for M, (J, J2) in zip(ms, res.joins_in_g()):
        assert is_perfect_matching(g, M)
        assert odd_cut_inside(g, ma & M) is None
        for j in (J, J2):
            assert _is_join(g, j)
            assert not (ma & M & j)


def test_08_theorem6(criterion):
    with criterion(8, "three matchings and joins on traceable snarks; prism escapes", 30):
        for g in (petersen(), flower_snark(5)):
            res = theorem6_pipeline(g)
            assert not res.escaped
            _check_theorem6(g, res)
        res = theorem6_pipeline(prism(4))
        assert res.escaped and res.escape.colouring.is_proper(prism(4))


def test_09_proposition9(criterion):
    with criterion(9, "Petersen: h = 2 and pairwise empty triple intersections", 5):
        res = theorem6_pipeline(petersen())
        assert res.structure.seq.h == 2
        sc = special_cases(res.structure)
        assert sc.name == "h2"
        ma = res.pc.m_alpha
        for a, b in itertools.combinations(sc.matchings, 2):
            assert not (ma & a & b)
        for a, b in itertools.combinations(res.matchings_in_g(), 2):
            assert not (res.m_alpha_in_g & a & b)


def test_10_branch_coverage(criterion):
    import json
    import pathlib

    from cubicmatch.graph import Walk
    from cubicmatch.graph6 import parse_graph6

    with criterion(10, "fixtures reach every rerouting branch with all conclusions", 30):
        path = pathlib.Path(__file__).parent / "fixtures" / "lemma_branches.json"
        wanted = {"lemma7:no-swap", "lemma7:swap", "lemma8:disjoint", "lemma8:case1", "lemma8:case2"}
        seen = set()
        for entry in json.loads(path.read_text()).values():
            g = parse_graph6(entry["graph6"])
            res = theorem6_pipeline(g, Walk.from_vertices(g, entry["path"]))
            for s in res.trace.steps:
                if s["step"] in ("lemma7", "lemma8"):
                    assert all(s["conclusions"].values()), s
                    seen.add(f"{s['step']}:{s['branch']}")
        assert wanted <= seen, sorted(wanted - seen)


def test_11_determinism(criterion, tmp_path):
    with criterion(11, "full sweep is byte-identical for --jobs 1 and --jobs 4", 300):
        outs = []
        for jobs in (1, 4):
            out = tmp_path / f"sweep{jobs}.jsonl"
            assert main(["sweep", "--standard", "--jobs", str(jobs), "--out", str(out)]) == 0
            outs.append(out.read_bytes())
        assert outs[0] == outs[1]
        import json

        from cubicmatch.graph6 import parse_graph6

        records = [json.loads(line) for line in outs[0].splitlines()]
        assert len(records) == len(CATALOG)
        assert all(verify_record(r, parse_graph6(r["graph6"])) == [] for r in records)
