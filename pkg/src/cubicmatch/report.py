"""JSON-ready per-graph records with certificates, and their independent re-check.

A certificate for an edge set lists edge ids together with endpoint pairs,
so it can be checked against the graph6 string stored in the same record
without the generator that produced it.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from fractions import Fraction

from . import __version__
from .coloring import Colour, chromatic_index, pm_without_odd_cut, three_edge_coloring
from .cuts import is_join, join_avoiding, kr_witness, ms_witness, odd_cut_inside
from .errors import BoundViolated, ConstructionError, CubicError, InputError, NotHamiltonian, ResourceCap
from .fractional import DEFAULT_ODDSET_CAP, theorem3_check, theorem45_check
from .graph import (
    DEFAULT_NODE_CAP,
    UNBOUNDED,
    CubicGraph,
    boundary,
    components_after_removal,
    cyclic_edge_connectivity,
    girth,
    is_bridgeless,
)
from .graph6 import parse_graph6, write_graph6
from .matchings import (
    DEFAULT_MATCHING_CAP,
    enumerate_perfect_matchings,
    fan_raspaud_search,
    is_perfect_matching,
    oddness,
    two_factor,
)

SCHEMA = "cubicmatch.report/1"

CHECKS = ("ms", "kr", "fr", "thm1", "thm3", "thm45")

EXIT_OK, EXIT_WITNESS, EXIT_CAP, EXIT_INPUT = 0, 2, 3, 4


@dataclass(frozen=True)
class Caps:
    matchings: int = DEFAULT_MATCHING_CAP
    oddsets: int = DEFAULT_ODDSET_CAP
    nodes: int = DEFAULT_NODE_CAP


class VerificationFailed(CubicError):
    """An emitted certificate did not survive the independent re-check."""


# -- encoding ---------------------------------------------------------------


def edge_cert(g: CubicGraph, edges, labels=None) -> dict:
    """Edge ids plus endpoint pairs; ``labels`` maps vertices to 1-based names."""
    ids = sorted(edges)
    out = {"ids": ids, "pairs": [list(g.edges[e]) for e in ids]}
    if labels is not None:
        out["labels"] = [sorted(labels[v] for v in g.edges[e]) for e in ids]
    return out


def _frac(x) -> str | None:
    return None if x is None else str(Fraction(x))


def _cert_edges(g: CubicGraph, cert: dict) -> frozenset[int]:
    ids = cert["ids"]
    if any(list(g.edges[e]) != p for e, p in zip(ids, cert["pairs"])) or len(ids) != len(cert["pairs"]):
        raise VerificationFailed("edge ids and endpoint pairs disagree")
    return frozenset(ids)


# -- sections ----------------------------------------------------------------


def invariants(g: CubicGraph, caps: Caps) -> dict:
    ms = enumerate_perfect_matchings(g, caps.matchings)
    cyc = cyclic_edge_connectivity(g)
    out = {
        "n": g.n,
        "m": g.m,
        "bridgeless": is_bridgeless(g),
        "girth": girth(g),
        "perfect_matchings": len(ms),
        "chromatic_index": chromatic_index(g, caps.nodes),
        "oddness": oddness(g, caps.matchings),
    }
    if cyc.size == UNBOUNDED:
        out["cyclic_edge_connectivity"] = "unbounded"
    else:
        out["cyclic_edge_connectivity"] = cyc.size
        out["cyclic_cut"] = {"side": sorted(cyc.side), "cut": edge_cert(g, cyc.cut)}
    return out


def check_ms(g: CubicGraph, caps: Caps) -> dict:
    w = ms_witness(g, caps.matchings)
    if w is None:
        return {"found": False}
    return {"found": True, "M1": edge_cert(g, w.M1), "M2": edge_cert(g, w.M2),
            "intersection": edge_cert(g, w.intersection)}


def check_kr(g: CubicGraph, caps: Caps) -> dict:
    w = kr_witness(g, caps.matchings)
    if w is None:
        return {"found": False}
    return {"found": True, "M1": edge_cert(g, w.M1), "M2": edge_cert(g, w.M2), "J": edge_cert(g, w.J)}


def check_fr(g: CubicGraph, caps: Caps) -> dict:
    w = fan_raspaud_search(g, caps.matchings)
    if w is None:
        return {"found": False}
    return {"found": True, "matchings": [edge_cert(g, M) for M in w]}


def check_thm1(g: CubicGraph, caps: Caps) -> dict:
    col = three_edge_coloring(g, caps.nodes)
    pm = pm_without_odd_cut(g, caps.matchings)
    out = {"colourable": col is not None, "pm_without_odd_cut": pm is not None,
           "agree": (col is None) == (pm is None)}
    if col is not None:
        out["colouring"] = {c.value: edge_cert(g, col.cls(c)) for c in (Colour.ALPHA, Colour.BETA, Colour.GAMMA)}
    if pm is not None:
        out["matching"] = edge_cert(g, pm)
    return out


THM3_NOTE = "the statement says 'edge cut'; the checked predicate is 'odd edge cut'"


def check_thm3(g: CubicGraph, caps: Caps) -> dict:
    try:
        r = theorem3_check(g, caps.matchings)
    except BoundViolated as exc:
        return {"ok": False, "error": str(exc), "notes": [THM3_NOTE]}
    return {"ok": r.ok, "bound": r.bound, "three_cuts": r.three_cuts,
            "M": edge_cert(g, r.M), "M2": edge_cert(g, r.M2),
            "intersection": edge_cert(g, r.intersection), "notes": [THM3_NOTE]}


def check_thm45(g: CubicGraph, caps: Caps) -> dict:
    r = theorem45_check(g, caps.matchings)
    k = r.k if isinstance(r.k, int) else "unbounded"
    out = {"ok": r.ok, "k": k, "applicable": r.applicable, "notes": list(r.notes)}
    if not r.applicable:
        return out
    out.update({
        "s": r.s,
        "pair_bound": _frac(r.pair_bound),
        "min_pair_intersection": r.min_pair_intersection,
        "alternative1": r.alternative1,
        "alternative2": r.alternative2,
        "theorem5_threshold": r.theorem5_threshold,
        "theorem5_applies": r.theorem5_applies,
    })
    if r.alternative1_pair:
        out["alternative1_pair"] = [edge_cert(g, M) for M in r.alternative1_pair]
    if r.alternative2:
        out["alternative2_cuts"] = [
            {"M": edge_cert(g, M), "side": sorted(X), "cut": edge_cert(g, cut)}
            for M, (X, cut) in r.alternative2_cuts
        ]
    if r.theorem5_witness is not None:
        out["theorem5_witness"] = [edge_cert(g, r.theorem5_witness.M1), edge_cert(g, r.theorem5_witness.M2)]
    return out


CHECKERS = {
    "ms": check_ms, "kr": check_kr, "fr": check_fr,
    "thm1": check_thm1, "thm3": check_thm3, "thm45": check_thm45,
}


def construct(g: CubicGraph, caps: Caps) -> dict:
    from .pipeline import find_path, special_cases, theorem6_pipeline

    try:
        path = find_path(g, caps.nodes)
    except NotHamiltonian:
        return {"traceable": False}
    labels = {v: i + 1 for i, v in enumerate(path.vertices)}
    out: dict = {"path": list(path.vertices)}
    try:
        res = theorem6_pipeline(g, path)
    except ConstructionError as exc:
        return {**out, "ok": False, "error": str(exc), "trace": exc.trace}
    if res.escaped:
        col = res.escape.colouring
        out["escape"] = {c.value: edge_cert(g, col.cls(c), labels) for c in (Colour.ALPHA, Colour.BETA, Colour.GAMMA)}
        out["ok"] = True
        return out
    pc = res.pc
    out["h"] = res.structure.seq.h
    out["m_alpha"] = edge_cert(g, res.m_alpha_in_g, labels)
    out["outcomes"] = [
        {
            "M": edge_cert(g, pc.g_edges(t.M), labels),
            "A": edge_cert(g, pc.g_edges(t.A), labels),
            "J": edge_cert(g, pc.g_edges(t.joins[0]), labels),
            "J2": edge_cert(g, pc.g_edges(t.joins[1]), labels),
            "walk": {"vertices": list(pc.g_walk(t.walk).vertices),
                     "labels": [v + 1 for v in t.walk.vertices]},
        }
        for t in res.triples
    ]
    out["branches"] = [
        {k: s[k] for k in ("step", "walk", "j", "branch")}
        for s in res.trace.steps if s["step"] in ("lemma7", "lemma8")
    ]
    out["notes"] = ["joins taken as E minus the even subgraph closed through C_1 and C_k"]
    try:
        sc = special_cases(res.structure)
    except ConstructionError as exc:
        out["special"] = {"name": "failed", "error": str(exc)}
    else:
        if sc is not None:
            out["special"] = {"name": sc.name,
                              "matchings": [edge_cert(g, pc.g_edges(M), labels) for M in sc.matchings]}
    out["ok"] = True
    return out


# -- records ----------------------------------------------------------------------


def build_record(gid: str, g: CubicGraph, sections, caps: Caps, timings: bool = False) -> tuple[dict, int]:
    """Run the requested sections, re-verify, and return ``(record, exit code)``."""
    rec: dict = {"schema": SCHEMA, "version": __version__, "id": gid, "n": g.n}
    try:
        rec["graph6"] = write_graph6(g)
    except InputError:
        rec["edges"] = [list(e) for e in g.edges]
    code = EXIT_OK
    times = {}
    for name in sections:
        t0 = time.perf_counter()
        try:
            if name == "invariants":
                rec[name] = invariants(g, caps)
            elif name == "construct":
                rec[name] = construct(g, caps)
            else:
                rec[name] = CHECKERS[name](g, caps)
        except ResourceCap as exc:
            rec[name] = {"error": "resource_cap", "message": str(exc)}
            code = max(code, EXIT_CAP)
        except InputError as exc:
            rec[name] = {"error": "input", "message": str(exc)}
            code = max(code, EXIT_INPUT)
        times[name] = round(time.perf_counter() - t0, 4)
    problems = verify_record(rec, g)
    if problems:
        rec["verification"] = problems
    if failed(rec):
        code = max(code, EXIT_WITNESS) if code != EXIT_INPUT else code
    if timings:
        rec["timings"] = times
    return rec, code


def failed(rec: dict) -> bool:
    if rec.get("verification"):
        return True
    for name in ("ms", "kr", "fr"):
        if name in rec and rec[name].get("found") is False:
            return True
    if "thm1" in rec and rec["thm1"].get("agree") is False:
        return True
    for name in ("thm3", "thm45", "construct"):
        if name in rec and rec[name].get("ok") is False:
            return True
    return False


# -- independent re-check ----------------------------------------------------------


def _no_odd_cut(g: CubicGraph, S) -> bool:
    # duality: an odd cut sits inside S iff no join avoids S
    return join_avoiding(g, S) is not None


def verify_record(rec: dict, g: CubicGraph | None = None) -> list[str]:
    """Re-check every certificate in ``rec``; returns a list of problems."""
    if g is None:
        g = parse_graph6(rec["graph6"])
    problems: list[str] = []

    def need(cond: bool, what: str) -> None:
        if not cond:
            problems.append(what)

    def pm(cert, what):
        M = _cert_edges(g, cert)
        need(is_perfect_matching(g, M), f"{what} is not a perfect matching")
        return M

    try:
        inv = rec.get("invariants")
        if inv and "cyclic_cut" in inv:
            side = frozenset(inv["cyclic_cut"]["side"])
            cut = _cert_edges(g, inv["cyclic_cut"]["cut"])
            need(boundary(g, side) == cut and len(cut) == inv["cyclic_edge_connectivity"],
                 "cyclic cut does not match its side")
            comps = components_after_removal(g, cut)
            need(len(comps) == 2 and all(len(es) >= len(vs) for vs, es in comps),
                 "cyclic cut does not leave two cycle-containing sides")
        ms = rec.get("ms")
        if ms and ms.get("found"):
            M1, M2 = pm(ms["M1"], "ms.M1"), pm(ms["M2"], "ms.M2")
            need(M1 != M2, "ms matchings coincide")
            need(_no_odd_cut(g, M1 & M2), "ms intersection holds an odd cut")
        kr = rec.get("kr")
        if kr and kr.get("found"):
            M1, M2 = pm(kr["M1"], "kr.M1"), pm(kr["M2"], "kr.M2")
            J = _cert_edges(g, kr["J"])
            need(is_join(g, J), "kr.J is not a join")
            need(not (M1 & M2 & J), "kr triple intersection not empty")
        fr = rec.get("fr")
        if fr and fr.get("found"):
            a, b, c = (pm(x, "fr matching") for x in fr["matchings"])
            need(not (a & b & c), "fr triple intersection not empty")
        t1 = rec.get("thm1")
        if t1 and "colouring" in t1:
            classes = [_cert_edges(g, t1["colouring"][c]) for c in ("alpha", "beta", "gamma")]
            need(all(is_perfect_matching(g, x) for x in classes), "colour class is not a perfect matching")
        if t1 and "matching" in t1:
            M = pm(t1["matching"], "thm1 matching")
            need(not two_factor(g, M).odd_cycles, "thm1 matching leaves odd cycles")
        t3 = rec.get("thm3")
        if t3 and "M" in t3:
            M, M2 = pm(t3["M"], "thm3.M"), pm(t3["M2"], "thm3.M2")
            need(M != M2 and len(M & M2) <= g.n // 10, "thm3 pair exceeds the bound")
            need(_no_odd_cut(g, M & M2), "thm3 intersection holds an odd cut")
        t45 = rec.get("thm45")
        if t45 and t45.get("applicable"):
            for item in t45.get("alternative2_cuts", []):
                M = pm(item["M"], "thm45 matching")
                cut = _cert_edges(g, item["cut"])
                need(cut <= M and boundary(g, item["side"]) == cut and len(item["side"]) % 2 == 1,
                     "thm45 cut is not an odd cut inside its matching")
                need(len(cut) == t45["s"] - 2, "thm45 cut has the wrong size")
            if "alternative1_pair" in t45:
                a, b = (pm(x, "thm45 pair") for x in t45["alternative1_pair"])
                need(Fraction(len(a & b)) <= Fraction(t45["pair_bound"]), "thm45 pair exceeds n/(2s)")
            if "theorem5_witness" in t45:
                a, b = (pm(x, "thm5 witness") for x in t45["theorem5_witness"])
                need(_no_odd_cut(g, a & b), "thm5 witness intersection holds an odd cut")
        con = rec.get("construct")
        if con and con.get("ok"):
            if "escape" in con:
                classes = [_cert_edges(g, con["escape"][c]) for c in ("alpha", "beta", "gamma")]
                need(all(is_perfect_matching(g, x) for x in classes), "escape colouring is not proper")
                need(len(set().union(*classes)) == g.m, "escape colouring misses edges")
            else:
                Ma = pm(con["m_alpha"], "m_alpha")
                for k, o in enumerate(con["outcomes"]):
                    M = pm(o["M"], f"M_{k + 1}")
                    need(Ma & M == _cert_edges(g, o["A"]), f"M_alpha & M_{k + 1} differs from A_{k + 1}")
                    need(_no_odd_cut(g, Ma & M) and odd_cut_inside(g, Ma & M) is None,
                         f"M_alpha & M_{k + 1} holds an odd cut")
                    for key in ("J", "J2"):
                        J = _cert_edges(g, o[key])
                        need(is_join(g, J), f"{key} of outcome {k + 1} is not a join")
                        need(not (Ma & M & J), f"{key} of outcome {k + 1} meets M_alpha & M_{k + 1}")
                sp = con.get("special")
                if sp and sp.get("matchings"):
                    ms_ = [pm(x, "special matching") for x in sp["matchings"]]
                    for a in range(len(ms_)):
                        for b in range(a + 1, len(ms_)):
                            need(not (Ma & ms_[a] & ms_[b]), "special matchings meet inside M_alpha")
    except (KeyError, IndexError, TypeError, ValueError) as exc:
        problems.append(f"malformed certificate: {exc!r}")
    except VerificationFailed as exc:
        problems.append(str(exc))
    return problems
