"""Branch-and-propagate search for semi-transitive orientations or refutation transcripts."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

from .cycles import CycleCatalog, enumerate_cycles
from .graph import Edge, Graph, edge_key
from .orientation import PartialOrientation, is_semi_transitive
from .propagate import Terminal, propagate_fixpoint
from .transcript import (
    Branch,
    InitialEdge,
    MoveToCopy,
    Orient,
    ProofLine,
    ProofTranscript,
    Terminator,
    check,
)

log = logging.getLogger(__name__)

ALGORITHMS = (1, 2, 3)


class NoBranchableEdge(LookupError):
    pass


class CopyLimitExceeded(RuntimeError):
    pass


class InternalInconsistency(AssertionError):
    pass


@dataclass
class SearchConfig:
    algorithm: int = 2
    source_vertex: int | None = None
    first_edge: tuple[int, int] | None = None  # oriented as given
    max_cycle_length: int | None | type(Ellipsis) = ...  # ... = size-dependent default
    copy_limit: int = 100_000
    self_check: bool = True

    def __post_init__(self):
        if self.algorithm not in ALGORITHMS:
            raise ValueError(f"algorithm must be one of {ALGORITHMS}")


@dataclass
class SearchState:
    copy_id: int
    po: PartialOrientation
    branch_edge: tuple[int, int] | None = None  # orientation given to this copy when it was created


@dataclass
class ProveStats:
    copies: int = 1
    lines: int = 0
    forcings: int = 0
    branches: int = 0


@dataclass
class ProveResult:
    representable: bool
    orientation: PartialOrientation | None = None
    transcript: ProofTranscript | None = None
    stats: ProveStats = field(default_factory=ProveStats)

    @property
    def verdict(self) -> str:
        return "representable" if self.representable else "non-representable"


def source_init(g: Graph, v: int) -> PartialOrientation:
    """All edges at ``v`` oriented away from it; everything else unoriented."""
    if not 1 <= v <= g.n:
        raise ValueError(f"unknown vertex {v}")
    po = PartialOrientation(g)
    for w in sorted(g.adj[v]):
        po.orient(v, w)
    return po


def branch_counts(cat: CycleCatalog) -> dict[Edge, int]:
    """Per-edge number of catalog cycles of length >= 4 (triangles only drive forcing)."""
    counts = {e: 0 for e in cat.graph.edges}
    for c in cat.cycles:
        if c.length >= 4:
            for e in c.edge_keys():
                counts[e] += 1
    return counts


def _best_edge(edges, counts: dict[Edge, int]) -> Edge:
    # most cycles first, then the largest label pair
    return min(edges, key=lambda e: (-counts[e], -e[0], -e[1]))


def select_branch_edge(po: PartialOrientation, cat: CycleCatalog, algorithm: int,
                       counts: dict[Edge, int] | None = None) -> Edge:
    """Branch edge for the current copy.

    1: unoriented edge on the most cycles of length >= 4.
    2: a cycle with the fewest unoriented edges, then its edge on the most cycles.
    3: like 2, but first prefer cycles with the most edges oriented one way round.
    Cycle ties go to the longest cycle, then the largest in citation order;
    edge ties go to the largest pair.
    """
    if counts is None:
        counts = branch_counts(cat)
    state = po.state
    if algorithm == 1:
        free = [e for e, s in state.items() if s == 0 and counts[e] > 0]
        if not free:
            free = [e for e, s in state.items() if s == 0 and cat.per_edge_count[e] > 0]
        if not free:
            raise NoBranchableEdge("every edge on a cycle is oriented")
        return _best_edge(free, counts)
    best_key = None
    best_free: list[Edge] = []
    for i, c in enumerate(_scan_order(cat)):
        free = []
        fwd = back = 0
        d = c.vertices
        m = len(d)
        for j in range(m):
            a, b = d[j], d[(j + 1) % m]
            s = po.direction(a, b)
            if s == 0:
                free.append(edge_key(a, b))
            elif s == 1:
                fwd += 1
            else:
                back += 1
        if not free:
            continue
        key = (len(free), i) if algorithm == 2 else (-max(fwd, back), len(free), i)
        if best_key is None or key < best_key:
            best_key, best_free = key, free
    if best_key is None:
        free = [e for e, s in state.items() if s == 0 and cat.per_edge_count[e] > 0]
        if not free:
            raise NoBranchableEdge("every edge on a cycle is oriented")
        return _best_edge(free, counts)
    return _best_edge(best_free, counts)


_SCAN_CACHE: dict[int, tuple[CycleCatalog, list]] = {}


def _scan_order(cat: CycleCatalog) -> list:
    hit = _SCAN_CACHE.get(id(cat))
    if hit is not None and hit[0] is cat:
        return hit[1]
    order = sorted(cat.cycles, key=lambda c: (c.length, c.display), reverse=True)
    _SCAN_CACHE.clear()
    _SCAN_CACHE[id(cat)] = (cat, order)
    return order


def _terminator(out) -> Terminator:
    if out.terminal is Terminal.SHORTCUT:
        return Terminator("S", out.shortcut.path)
    if out.terminal is Terminal.ERROR_CYCLE:
        return Terminator("E", out.error.cycle.display)
    if out.terminal is Terminal.DIRECTED_CYCLE:
        return Terminator("D", out.directed_cycle)
    raise InternalInconsistency(f"no terminator for {out.terminal}")


def _non_bridges(g: Graph) -> set[Edge]:
    import networkx as nx

    bridges = {edge_key(u, v) for u, v in nx.bridges(g.to_networkx())}
    return set(g.edges) - bridges


def _complete(po: PartialOrientation) -> PartialOrientation:
    for u, v in po.unoriented():
        po.orient(u, v)
    return po


def prove(g: Graph, cfg: SearchConfig | None = None) -> ProveResult:
    """Depth-first branch and propagate on copies kept in a LIFO stack.

    Returns a complete semi-transitive orientation, or a transcript in which
    every copy is refuted by a shortcut (S), an unorientable cycle edge (E)
    or a directed cycle (D).
    """
    cfg = cfg or SearchConfig()
    if not g.is_connected():
        raise ValueError("prove expects a connected graph; split components first")
    cat = enumerate_cycles(g, cfg.max_cycle_length)
    counts = branch_counts(cat)
    stats = ProveStats()
    extra_edges: set[Edge] | None = None  # non-bridges outside a capped catalog

    if cfg.source_vertex is not None:
        po = source_init(g, cfg.source_vertex)
        instrs: list = []
    else:
        po = PartialOrientation(g)
        instrs = []
        if cfg.first_edge is not None:
            u, v = cfg.first_edge
        else:
            try:
                u, v = select_branch_edge(po, cat, cfg.algorithm, counts)
            except NoBranchableEdge:
                u = v = None
        if u is not None:
            po.orient(u, v)
            instrs.append(InitialEdge((u, v)))

    stack: list[SearchState] = []
    lines: list[ProofLine] = []
    next_id = 2
    while True:
        out = propagate_fixpoint(po, cat, inplace=True)
        stats.forcings += len(out.steps)
        instrs.extend(Orient(s.forced, s.cycle.display) for s in out.steps)
        if not out.contradiction:
            try:
                u, v = select_branch_edge(po, cat, cfg.algorithm, counts)
            except NoBranchableEdge:
                if cat.max_length is not None:
                    if extra_edges is None:
                        extra_edges = _non_bridges(g)
                    free = sorted(e for e in po.unoriented() if e in extra_edges)
                else:
                    free = []
                if not free:
                    _complete(po)
                    ok, report = is_semi_transitive(po)
                    if not ok:
                        raise InternalInconsistency(f"completed orientation fails: {report}")
                    stats.lines = len(lines)
                    return ProveResult(True, orientation=po, stats=stats)
                u, v = free[0]
            if next_id > cfg.copy_limit:
                raise CopyLimitExceeded(f"more than {cfg.copy_limit} copies")
            other = po.copy().orient(v, u)
            stack.append(SearchState(next_id, other, (v, u)))
            instrs.append(Branch((u, v), next_id))
            stats.branches += 1
            next_id += 1
            po.orient(u, v)
            continue
        lines.append(ProofLine(len(lines) + 1, tuple(instrs), _terminator(out)))
        log.debug("line %d closed with %s", len(lines), out.terminal.value)
        if not stack:
            break
        nxt = stack.pop()
        po = nxt.po
        instrs = [MoveToCopy(nxt.copy_id, nxt.branch_edge)]

    stats.copies = next_id - 1
    stats.lines = len(lines)
    t = ProofTranscript(tuple(lines), source_vertex=cfg.source_vertex)
    if cfg.self_check:
        rep = check(g, t)
        if not rep.valid:
            raise InternalInconsistency(f"generated transcript fails the checker: {rep.failures[:3]}")
    return ProveResult(False, transcript=t, stats=stats)


def prove_all_sources(g: Graph, cfg: SearchConfig | None = None) -> tuple[int, ProveResult]:
    """Prove with each vertex assumed a source; return the vertex giving the shortest transcript.

    A representable verdict is returned as soon as one is found.
    """
    cfg = cfg or SearchConfig()
    best: tuple[int, ProveResult] | None = None
    for v in g.vertices:
        res = prove(g, SearchConfig(cfg.algorithm, v, None, cfg.max_cycle_length, cfg.copy_limit, cfg.self_check))
        if res.representable:
            return v, res
        if best is None or len(res.transcript) < len(best[1].transcript):
            best = (v, res)
    assert best is not None
    return best
