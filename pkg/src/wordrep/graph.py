"""Undirected simple graphs with 1-indexed vertices, plus edge-list and graph6 I/O."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable

import networkx as nx

Edge = tuple[int, int]


class GraphParseError(ValueError):
    """Malformed graph text. ``line`` and ``column`` are 1-based."""

    def __init__(self, message: str, line: int = 1, column: int = 1):
        super().__init__(f"line {line}, column {column}: {message}")
        self.reason = message
        self.line = line
        self.column = column


def edge_key(u: int, v: int) -> Edge:
    """Canonical (low, high) form of the edge {u, v}."""
    if u == v:
        raise ValueError(f"self-loop at vertex {u}")
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on vertices 1..n.

    ``labels`` optionally records, for each vertex 1..n, its label in some
    parent graph (set by :func:`induced_subgraph`).
    """

    n: int
    edges: frozenset[Edge]
    labels: tuple[int, ...] | None = None
    adj: tuple[frozenset[int], ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("negative vertex count")
        nbrs: list[set[int]] = [set() for _ in range(self.n + 1)]
        for u, v in self.edges:
            if not (1 <= u < v <= self.n):
                raise ValueError(f"edge ({u}, {v}) is not canonical or out of range 1..{self.n}")
            nbrs[u].add(v)
            nbrs[v].add(u)
        if self.labels is not None and len(self.labels) != self.n:
            raise ValueError("label map length differs from vertex count")
        object.__setattr__(self, "adj", tuple(frozenset(s) for s in nbrs))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]], labels=None) -> "Graph":
        return cls(n, frozenset(edge_key(u, v) for u, v in edges), labels)

    @property
    def vertices(self) -> range:
        return range(1, self.n + 1)

    @property
    def m(self) -> int:
        return len(self.edges)

    def sorted_edges(self) -> list[Edge]:
        return sorted(self.edges)

    def has_edge(self, u: int, v: int) -> bool:
        return 1 <= u <= self.n and v in self.adj[u]

    def neighbors(self, v: int) -> frozenset[int]:
        return self.adj[v]

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def is_connected(self) -> bool:
        if self.n == 0:
            return True
        seen = {1}
        stack = [1]
        while stack:
            x = stack.pop()
            for y in self.adj[x]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        return len(seen) == self.n

    def to_networkx(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(self.vertices)
        g.add_edges_from(self.edges)
        return g

    def __str__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


def is_clique(g: Graph, vs: Iterable[int]) -> bool:
    """True iff every pair of distinct vertices in ``vs`` is adjacent."""
    return all(g.has_edge(u, v) for u, v in combinations(set(vs), 2))


def induced_subgraph(g: Graph, vs: Iterable[int]) -> Graph:
    """Subgraph induced by ``vs``, relabelled 1..k in increasing order of the old labels.

    The returned graph's ``labels`` maps each new vertex to its label in ``g``
    (composed with ``g.labels`` when ``g`` itself carries a map).
    """
    keep = sorted(set(vs))
    if not keep:
        raise ValueError("induced subgraph of an empty vertex set")
    for v in keep:
        if not 1 <= v <= g.n:
            raise ValueError(f"vertex {v} not in graph")
    new = {old: i for i, old in enumerate(keep, start=1)}
    edges = [(new[u], new[v]) for u, v in g.edges if u in new and v in new]
    parent = g.labels
    labels = tuple(parent[old - 1] if parent else old for old in keep)
    return Graph.from_edges(len(keep), edges, labels)


def delete_vertex(g: Graph, v: int) -> Graph:
    return induced_subgraph(g, [x for x in g.vertices if x != v])


# ---------------------------------------------------------------- edge list


def parse_edge_list(text: str) -> Graph:
    """Parse ``n m`` followed by ``m`` lines ``u v``. Lines starting with ``#`` are ignored."""
    rows: list[tuple[int, list[tuple[int, str]]]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0]
        if not body.strip():
            continue
        toks = []
        col = 0
        for tok in body.split():
            col = body.index(tok, col)
            toks.append((col + 1, tok))
            col += len(tok)
        rows.append((lineno, toks))
    if not rows:
        raise GraphParseError("missing header 'n m'")

    def ints(lineno, toks, what):
        if len(toks) != 2:
            c = toks[2][0] if len(toks) > 2 else (toks[-1][0] + len(toks[-1][1]))
            raise GraphParseError(f"expected two integers for {what}", lineno, c)
        out = []
        for c, t in toks:
            try:
                out.append(int(t))
            except ValueError:
                raise GraphParseError(f"not an integer: {t!r}", lineno, c) from None
        return out, [c for c, _ in toks]

    lineno, toks = rows[0]
    (n, m), cols = ints(lineno, toks, "header")
    if n < 0 or m < 0:
        raise GraphParseError("negative count in header", lineno, cols[0] if n < 0 else cols[1])
    if len(rows) - 1 != m:
        where = rows[-1][0] if rows else 1
        raise GraphParseError(f"header declares {m} edges, found {len(rows) - 1}", where, 1)
    seen: set[Edge] = set()
    for lineno, toks in rows[1:]:
        (u, v), cols = ints(lineno, toks, "edge")
        for x, c in ((u, cols[0]), (v, cols[1])):
            if not 1 <= x <= n:
                raise GraphParseError(f"vertex {x} out of range 1..{n}", lineno, c)
        if u == v:
            raise GraphParseError(f"self-loop at vertex {u}", lineno, cols[0])
        e = edge_key(u, v)
        if e in seen:
            raise GraphParseError(f"duplicate edge {e[0]} {e[1]}", lineno, cols[0])
        seen.add(e)
    return Graph(n, frozenset(seen))


def to_edge_list(g: Graph) -> str:
    lines = [f"{g.n} {g.m}"] + [f"{u} {v}" for u, v in g.sorted_edges()]
    return "\n".join(lines) + "\n"


# ------------------------------------------------------------------- graph6


def parse_graph6(text: str) -> Graph:
    """Decode a single graph6 string; vertex i of the encoding becomes label i+1."""
    s = text.strip()
    if s.startswith(">>graph6<<"):
        s = s[len(">>graph6<<"):]
    if not s or "\n" in s:
        raise GraphParseError("expected exactly one graph6 line")
    for col, ch in enumerate(s, start=1):
        if not 63 <= ord(ch) <= 126:
            raise GraphParseError(f"invalid graph6 character {ch!r}", 1, col)
    try:
        h = nx.from_graph6_bytes(s.encode("ascii"))
    except (nx.NetworkXError, ValueError) as exc:
        raise GraphParseError(f"malformed graph6 data: {exc}") from None
    return Graph.from_edges(h.number_of_nodes(), [(u + 1, v + 1) for u, v in h.edges()])


def to_graph6(g: Graph) -> str:
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from((u - 1, v - 1) for u, v in g.edges)
    return nx.to_graph6_bytes(h, header=False).decode("ascii").strip()


def parse_graph(text: str, format: str = "edge-list") -> Graph:
    if format == "edge-list":
        return parse_edge_list(text)
    if format == "graph6":
        return parse_graph6(text)
    raise ValueError(f"unknown graph format {format!r}")


def serialize_graph(g: Graph, format: str = "edge-list") -> str:
    if format == "edge-list":
        return to_edge_list(g)
    if format == "graph6":
        return to_graph6(g)
    raise ValueError(f"unknown graph format {format!r}")
