"""Simple-cycle catalogs: enumeration, clique flags and per-edge membership counts."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .graph import Edge, Graph, edge_key, is_clique

DEFAULT_CYCLE_LIMIT = 500_000
# Graphs with more vertices than this get a length cap by default.
UNCAPPED_MAX_VERTICES = 12
DEFAULT_LENGTH_CAP = 6


class CycleLimitExceeded(RuntimeError):
    """The catalog outgrew its hard limit; set ``max_length`` (or raise the limit)."""


def canonical_cycle(seq: Sequence[int]) -> tuple[int, ...]:
    """Rotate so the smallest label leads, then take the direction with the smaller second vertex."""
    m = len(seq)
    i = min(range(m), key=seq.__getitem__)
    fwd = tuple(seq[(i + k) % m] for k in range(m))
    back = (fwd[0],) + fwd[:0:-1]
    return min(fwd, back)


def cycle_edges(vertices: Sequence[int]) -> list[tuple[int, int]]:
    """Consecutive pairs (x_i, x_{i+1}) in traversal order, closing with (x_m, x_1)."""
    m = len(vertices)
    return [(vertices[i], vertices[(i + 1) % m]) for i in range(m)]


@dataclass(frozen=True)
class CycleRecord:
    vertices: tuple[int, ...]
    induces_clique: bool

    @property
    def length(self) -> int:
        return len(self.vertices)

    @property
    def display(self) -> tuple[int, ...]:
        """Citation form: smallest label first, then towards its larger cycle neighbour."""
        v = self.vertices
        return (v[0],) + v[:0:-1]

    def edges(self) -> list[tuple[int, int]]:
        return cycle_edges(self.vertices)

    def edge_keys(self) -> list[Edge]:
        return [edge_key(a, b) for a, b in self.edges()]

    def __str__(self) -> str:
        kind = "clique" if self.induces_clique else "nonclique"
        return f"{self.length}: {'-'.join(map(str, self.vertices))} [{kind}]"


@dataclass
class CycleCatalog:
    graph: Graph
    cycles: list[CycleRecord]
    max_length: int | None
    per_edge_count: dict[Edge, int] = field(init=False)
    by_edge: dict[Edge, list[int]] = field(init=False, repr=False)

    def __post_init__(self):
        self.by_edge = {e: [] for e in self.graph.sorted_edges()}
        for i, c in enumerate(self.cycles):
            for e in c.edge_keys():
                self.by_edge[e].append(i)
        self.per_edge_count = {e: len(ix) for e, ix in self.by_edge.items()}

    def __len__(self) -> int:
        return len(self.cycles)

    def __iter__(self):
        return iter(self.cycles)

    def dump(self) -> str:
        return "".join(f"{c}\n" for c in self.cycles)


def _simple_cycles(g: Graph, max_length: int | None, limit: int) -> list[tuple[int, ...]]:
    found: list[tuple[int, ...]] = []
    cap = max_length if max_length is not None else g.n
    for s in g.vertices:
        path = [s]
        on_path = {s}
        # Iterative DFS over vertices > s; each cycle is met once per direction.
        stack = [iter(sorted(x for x in g.adj[s] if x > s))]
        while stack:
            nxt = next(stack[-1], None)
            if nxt is None:
                stack.pop()
                on_path.discard(path.pop())
                continue
            if len(path) >= 2 and s in g.adj[nxt] and path[1] < nxt:
                cyc = tuple(path) + (nxt,)
                found.append(cyc)
                if len(found) > limit:
                    raise CycleLimitExceeded(
                        f"more than {limit} cycles; pass max_length to cap the enumeration")
            if len(path) + 1 < cap:
                path.append(nxt)
                on_path.add(nxt)
                stack.append(iter(sorted(x for x in g.adj[nxt] if x > s and x not in on_path)))
    return found


def default_max_length(g: Graph) -> int | None:
    return None if g.n <= UNCAPPED_MAX_VERTICES else DEFAULT_LENGTH_CAP


def enumerate_cycles(g: Graph, max_length: int | None = ..., limit: int = DEFAULT_CYCLE_LIMIT) -> CycleCatalog:
    """All simple cycles of length >= 3 (up to ``max_length``), sorted by (length, vertices).

    ``max_length`` defaults to no cap on graphs with at most 12 vertices and
    to 6 otherwise; pass ``None`` explicitly to force a full enumeration.
    """
    if max_length is ...:
        max_length = default_max_length(g)
    if max_length is not None and max_length < 3:
        raise ValueError("max_length must be at least 3")
    raw = _simple_cycles(g, max_length, limit)
    raw.sort(key=lambda c: (len(c), c))
    records = [CycleRecord(c, is_clique(g, c)) for c in raw]
    return CycleCatalog(g, records, max_length)


def edge_cycle_counts(cat: CycleCatalog) -> dict[Edge, int]:
    return dict(cat.per_edge_count)


def count_by_scan(cycles: Iterable[CycleRecord]) -> Counter:
    """Membership counts recomputed directly from the cycle list."""
    cnt: Counter = Counter()
    for c in cycles:
        cnt.update(c.edge_keys())
    return cnt
