"""Command-line front end: ``wordrep prove|check|orient|oracle|pretest|corpus``.

Exit codes: 0 success (including a non-representable verdict), 2 usage
error, 3 resource limit, 4 internal inconsistency.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
import time
from dataclasses import asdict, dataclass
from pathlib import Path

from . import corpus
from .cycles import CycleLimitExceeded
from .graph import Graph, GraphParseError, parse_graph
from .oracle import DEFAULT_MAX_EDGES, TooManyEdges, brute_force_count, neighborhood_pretest
from .orientation import from_arcs, is_semi_transitive
from .prover import (
    CopyLimitExceeded,
    InternalInconsistency,
    SearchConfig,
    prove,
    prove_all_sources,
)
from .transcript import TranscriptSyntaxError, check, parse, render

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_RESOURCE = 3
EXIT_INTERNAL = 4

VERDICTS = ("representable", "non-representable", "inconclusive", "valid", "invalid")


class UsageError(Exception):
    pass


@dataclass
class RunReport:
    command: str
    input: str
    verdict: str
    lines: int | None = None
    artifact_path: str | None = None
    elapsed: float = 0.0  # milliseconds
    details: dict | None = None

    def __post_init__(self):
        if self.verdict not in VERDICTS:
            raise ValueError(f"bad verdict {self.verdict!r}")


# ----------------------------------------------------------------- inputs


def load_graph(ref: str) -> tuple[Graph, str | None, Path | None]:
    """Resolve a corpus name or a graph file (edge list, or graph6 by ``.g6`` suffix or content)."""
    path = Path(ref)
    if path.is_file():
        text = path.read_text()
        fmt = "graph6" if path.suffix in (".g6", ".graph6") or _looks_graph6(text) else "edge-list"
        try:
            return parse_graph(text, fmt), None, path
        except GraphParseError as e:
            raise UsageError(f"{ref}: {e}") from e
    try:
        return corpus.corpus_get(ref).graph, ref, None
    except corpus.UnknownGraphError:
        raise UsageError(f"no such file or corpus graph: {ref}") from None


def _looks_graph6(text: str) -> bool:
    body = [ln for ln in text.splitlines() if ln.strip() and not ln.startswith("#")]
    if len(body) != 1:
        return False
    tok = body[0].strip()
    if tok.startswith(">>graph6<<"):
        return True
    return " " not in tok and all(63 <= ord(c) <= 126 for c in tok) and not tok.isdigit()


def _read_proof(ref: str) -> str:
    path = Path(ref)
    if path.is_file():
        return path.read_text()
    alt = corpus.data_dir() / ref
    if alt.is_file():
        return alt.read_text()
    raise UsageError(f"no such proof file: {ref}")


def _parse_pair(text: str) -> tuple[int, int]:
    try:
        u, v = (int(x) for x in text.replace("->", ",").split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected U,V but got {text!r}") from None
    return u, v


def _artifact_path(args, graph_name: str | None, gpath: Path | None, suffix: str) -> Path:
    if args.out:
        return Path(args.out)
    if gpath is not None:
        return gpath.with_name(gpath.stem + suffix)
    return Path.cwd() / f"{graph_name}{suffix}"


# --------------------------------------------------------------- commands


def cmd_prove(args) -> RunReport:
    g, name, gpath = load_graph(args.graph)
    if args.source is not None and not 1 <= args.source <= g.n:
        raise UsageError(f"source vertex {args.source} not in 1..{g.n}")
    if args.first_edge is not None and not g.has_edge(*args.first_edge):
        raise UsageError(f"{args.first_edge[0]},{args.first_edge[1]} is not an edge")
    cfg = SearchConfig(args.alg, args.source, args.first_edge)
    details: dict = {"algorithm": args.alg}
    if args.all_sources:
        src, res = prove_all_sources(g, cfg)
        details["source"] = src
    else:
        res = prove(g, cfg)
        if args.source is not None:
            details["source"] = args.source
    if res.representable:
        out = _artifact_path(args, name, gpath, ".orientation.txt")
        out.write_text(res.orientation.dump())
        return RunReport("prove", args.graph, "representable", None, str(out), details=details)
    t = res.transcript
    if name is not None:
        t = type(t)(t.lines, name, t.source_vertex)
    out = _artifact_path(args, name, gpath, ".proof.txt")
    out.write_text(render(t))
    details.update(copies=res.stats.copies, branches=res.stats.branches)
    return RunReport("prove", args.graph, "non-representable", len(t), str(out), details=details)


def cmd_check(args) -> RunReport:
    g, _, _ = load_graph(args.graph)
    try:
        t = parse(_read_proof(args.proof))
    except TranscriptSyntaxError as e:
        return RunReport("check", args.proof, "invalid", details={"failures": [str(e)]})
    rep = check(g, t, args.source)
    details = {"assumptions": rep.assumptions,
               "failures": [f"line {a}, instruction {b}: {m}" for a, b, m in rep.failures]}
    return RunReport("check", args.proof, "valid" if rep.valid else "invalid", len(t), details=details)


def cmd_orient(args) -> RunReport:
    g, name, gpath = load_graph(args.graph)
    res = prove(g, SearchConfig(args.alg, self_check=False))
    if not res.representable:
        return RunReport("orient", args.graph, "non-representable")
    out = _artifact_path(args, name, gpath, ".orientation.txt")
    out.write_text(res.orientation.dump())
    return RunReport("orient", args.graph, "representable", artifact_path=str(out),
                     details={"arcs": [list(a) for a in res.orientation.arcs()]})


def cmd_oracle(args) -> RunReport:
    g, _, _ = load_graph(args.graph)
    v = brute_force_count(g, args.max_edges)
    verdict = "representable" if v.representable else "non-representable"
    return RunReport("oracle", args.graph, verdict, details={
        "semi_transitive_count": v.semi_transitive_count,
        "enumerated": v.enumerated,
        "example_orientation": v.example_orientation})


def cmd_pretest(args) -> RunReport:
    g, _, _ = load_graph(args.graph)
    rep = neighborhood_pretest(g)
    verdict = "non-representable" if rep.conclusive else "inconclusive"
    return RunReport("pretest", args.graph, verdict, details={
        "conclusive": rep.conclusive,
        "neighborhoods": [asdict(r) for r in rep.neighborhoods]})


def cmd_corpus(args) -> RunReport | None:
    if args.action == "list":
        for nm in corpus.names():
            e = corpus.corpus_get(nm)
            print(f"{nm:18} n={e.graph.n:<3} m={e.graph.m:<3} {e.expected_status}")
        return None
    if args.action == "show":
        if not args.name:
            raise UsageError("corpus show needs a graph name")
        try:
            e = corpus.corpus_get(args.name)
        except corpus.UnknownGraphError:
            raise UsageError(f"unknown corpus graph {args.name}") from None
        print(f"# {e.name}: {e.description}")
        print(f"# status: {e.expected_status}")
        print(f"{e.graph.n} {e.graph.m}")
        for u, v in e.graph.sorted_edges():
            print(u, v)
        return None
    return _verify()


def _verify() -> RunReport:
    """Replay shipped golden proofs and reference orientations, then cross-check a few verdicts."""
    results: dict[str, bool] = {}
    for key, (gname, proof, src, nlines) in corpus.GOLDEN_PROOFS.items():
        g = corpus.corpus_get(gname).graph
        t = parse(corpus.read_data(proof))
        results[f"proof:{key}"] = len(t) == nlines and check(g, t, src).valid
    for nm in corpus.names():
        e = corpus.corpus_get(nm)
        if e.reference_orientation is not None:
            ok, _ = is_semi_transitive(from_arcs(e.graph, e.reference_orientation))
            results[f"orientation:{nm}"] = ok
    w5 = corpus.corpus_get("w5").graph
    results["prove:w5"] = not prove(w5).representable
    results["oracle:w5"] = brute_force_count(w5).semi_transitive_count == 0
    results["pretest:w5"] = neighborhood_pretest(w5).conclusive
    for nm, ok in results.items():
        print(f"{'ok  ' if ok else 'FAIL'} {nm}")
    verdict = "valid" if all(results.values()) else "invalid"
    return RunReport("corpus verify", "corpus", verdict, details={"checks": results})


# ------------------------------------------------------------------ entry


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="wordrep", description="Semi-transitive orientation prover and tools.")
    p.add_argument("--json", action="store_true", help="print a JSON run report")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp):
        sp.add_argument("--json", action="store_true", default=argparse.SUPPRESS)
        return sp

    sp = common(sub.add_parser("prove", help="search for an orientation or a refutation transcript"))
    sp.add_argument("graph")
    sp.add_argument("--alg", type=int, choices=(1, 2, 3), default=2)
    sp.add_argument("--source", type=int)
    sp.add_argument("--first-edge", type=_parse_pair, metavar="U,V")
    sp.add_argument("--all-sources", action="store_true")
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_prove)

    sp = common(sub.add_parser("check", help="verify a proof transcript"))
    sp.add_argument("graph")
    sp.add_argument("proof")
    sp.add_argument("--source", type=int)
    sp.set_defaults(func=cmd_check)

    sp = common(sub.add_parser("orient", help="emit a semi-transitive orientation if one exists"))
    sp.add_argument("graph")
    sp.add_argument("--alg", type=int, choices=(1, 2, 3), default=2)
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_orient)

    sp = common(sub.add_parser("oracle", help="count semi-transitive orientations exhaustively"))
    sp.add_argument("graph")
    sp.add_argument("--max-edges", type=int, default=DEFAULT_MAX_EDGES)
    sp.set_defaults(func=cmd_oracle)

    sp = common(sub.add_parser("pretest", help="test every neighbourhood for comparability"))
    sp.add_argument("graph")
    sp.set_defaults(func=cmd_pretest)

    sp = common(sub.add_parser("corpus", help="list, show or verify built-in graphs"))
    sp.add_argument("action", choices=("list", "show", "verify"))
    sp.add_argument("name", nargs="?")
    sp.set_defaults(func=cmd_corpus)
    return p


def _print_text(r: RunReport) -> None:
    head = f"{r.command} {r.input}: {r.verdict}"
    if r.lines is not None:
        head += f" ({r.lines} lines)"
    print(head)
    if r.artifact_path:
        print(f"wrote {r.artifact_path}")
    d = r.details or {}
    for f in d.get("failures", []):
        print(f"  {f}")
    if r.command == "oracle":
        print(f"  {d['semi_transitive_count']} of {d['enumerated']} orientations are semi-transitive")
    if r.command == "pretest":
        for nb in d["neighborhoods"]:
            if not nb["comparability"]:
                chain = " ".join(f"{a}->{b}" for a, b in nb["obstruction"])
                print(f"  N({nb['vertex']}) is not a comparability graph: {chain}")


def run(argv: list[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except UsageError as e:
        print(f"wordrep: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as e:  # --help
        return int(e.code or 0)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    t0 = time.perf_counter()
    try:
        report = args.func(args)
    except UsageError as e:
        print(f"wordrep: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as e:
        print(f"wordrep: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (TooManyEdges, CopyLimitExceeded, CycleLimitExceeded) as e:
        print(f"wordrep: resource limit: {e}", file=sys.stderr)
        return EXIT_RESOURCE
    except InternalInconsistency as e:
        print(f"wordrep: internal inconsistency: {e}", file=sys.stderr)
        return EXIT_INTERNAL
    if report is None:
        return EXIT_OK
    report.elapsed = round((time.perf_counter() - t0) * 1000, 3)
    if args.json:
        print(json.dumps(asdict(report), sort_keys=True))
    else:
        _print_text(report)
    return EXIT_OK


def main() -> None:
    sys.exit(run())
