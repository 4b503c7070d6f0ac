"""Command-line workbench: invariants, witness checks, construction, sweeps.

Output is JSON lines, one object per graph. Exit codes: 0 all checks passed,
2 a witness search or verification failed, 3 a resource cap was hit,
4 bad input.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from multiprocessing import Pool

from .errors import InputError
from .generators import generate, parse_spec, standard_catalog
from .graph6 import parse_graph6, write_graph6
from .report import CHECKS, EXIT_INPUT, EXIT_OK, Caps, build_record

log = logging.getLogger("cubicmatch")


def _entries(args) -> list[tuple[str, str]]:
    """``(id, graph6)`` pairs from generator specs, graph6 strings and files."""
    out: list[tuple[str, str]] = []
    for spec in args.graph or []:
        name, params = parse_spec(spec)
        if name == "random_bridgeless" and len(params) == 1:
            params = params + (args.seed,)
        g = generate(name, *params)
        out.append((spec, write_graph6(g)))
    for k, line in enumerate(args.graph6 or []):
        parse_graph6(line)
        out.append((f"graph6:{k}", line.strip()))
    for path in args.catalog or []:
        with open(path) as fh:
            for k, line in enumerate(fh, 1):
                line = line.strip()
                if line and not line.startswith("#"):
                    parse_graph6(line)
                    out.append((f"{path}:{k}", line))
    if getattr(args, "standard", False):
        out += [(gid, write_graph6(g)) for gid, g in standard_catalog(args.randoms)]
    ids = [gid for gid, _ in out]
    if len(set(ids)) != len(ids):
        raise InputError("graph ids must be unique within a run")
    return out


def _work(item):
    gid, g6, sections, caps, timings = item
    return build_record(gid, parse_graph6(g6), sections, caps, timings)


def _emit(records, out_path: str | None) -> None:
    lines = [json.dumps(rec, sort_keys=True, separators=(",", ":")) for rec in records]
    text = "".join(line + "\n" for line in lines)
    if out_path:
        with open(out_path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _run_sections(args, sections) -> int:
    entries = _entries(args)
    if not entries:
        raise InputError("no graphs given; use --graph, --graph6, --catalog or --standard")
    caps = Caps(args.cap_matchings, args.cap_oddsets, args.cap_nodes)
    items = [(gid, g6, sections, caps, args.timings) for gid, g6 in entries]
    if args.jobs > 1:
        with Pool(args.jobs) as pool:
            results = pool.map(_work, items, chunksize=1)
    else:
        results = [_work(it) for it in items]
    # map keeps catalogue order, so the report does not depend on --jobs
    _emit([rec for rec, _ in results], args.out)
    return max((code for _, code in results), default=EXIT_OK)


def cmd_gen(args) -> int:
    for gid, g6 in _entries(args):
        line = g6 if not args.with_ids else f"{g6} {gid}"
        print(line, file=args.out_fh)
    return EXIT_OK


def _add_inputs(p: argparse.ArgumentParser) -> None:
    p.add_argument("--graph", action="append", metavar="SPEC",
                   help="generator spec such as petersen or prism(4); repeatable")
    p.add_argument("--graph6", action="append", metavar="G6", help="graph6 string; repeatable")
    p.add_argument("--catalog", action="append", metavar="FILE", help="file of graph6 lines")
    p.add_argument("--standard", action="store_true", help="the built-in catalogue")
    p.add_argument("--randoms", type=int, default=100, help="random graphs per order in --standard")
    p.add_argument("--seed", type=int, default=0, help="seed for random_bridgeless(n) specs")


def _add_run_opts(p: argparse.ArgumentParser) -> None:
    p.add_argument("--cap-matchings", type=int, default=Caps.matchings)
    p.add_argument("--cap-oddsets", type=int, default=Caps.oddsets)
    p.add_argument("--cap-nodes", type=int, default=Caps.nodes)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--out", help="write JSON lines here instead of stdout")
    p.add_argument("--timings", action="store_true", help="add wall-clock timings (not reproducible)")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="cubicmatch", description=__doc__.splitlines()[0])
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("invariants", help="order, girth, matchings, chromatic index, oddness, cyclic connectivity")
    _add_inputs(p)
    _add_run_opts(p)

    p = sub.add_parser("check", help="conjecture witnesses and theorem checks")
    p.add_argument("which", choices=CHECKS + ("all",))
    _add_inputs(p)
    _add_run_opts(p)

    p = sub.add_parser("construct", help="constructive route on a Hamiltonian path")
    p.add_argument("what", choices=("traceable",))
    _add_inputs(p)
    _add_run_opts(p)

    p = sub.add_parser("gen", help="print graph6 lines for generator specs")
    _add_inputs(p)
    p.add_argument("--with-ids", action="store_true")
    p.add_argument("--out")

    p = sub.add_parser("sweep", help="every section for every graph of a catalogue")
    _add_inputs(p)
    _add_run_opts(p)
    p.add_argument("--no-construct", action="store_true", help="skip the traceable construction")
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        if args.command == "gen":
            args.out_fh = open(args.out, "w") if args.out else sys.stdout
            try:
                return cmd_gen(args)
            finally:
                if args.out:
                    args.out_fh.close()
        if args.command == "invariants":
            sections = ["invariants"]
        elif args.command == "check":
            sections = list(CHECKS) if args.which == "all" else [args.which]
        elif args.command == "construct":
            sections = ["construct"]
        else:
            if not (args.graph or args.graph6 or args.catalog):
                args.standard = True
            sections = ["invariants", *CHECKS] + ([] if args.no_construct else ["construct"])
        return _run_sections(args, sections)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
