"""Ground-truth tools: exhaustive orientation counting, words and alternation,
uniform-word search, and the comparability-neighbourhood pre-test.

The orientation counter has its own bitmask semi-transitivity test and does
not share code with :mod:`wordrep.orientation`.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from itertools import combinations
from typing import Sequence

from .graph import Graph, induced_subgraph
from .orientation import PartialOrientation

Word = Sequence[int]

DEFAULT_MAX_EDGES = 24


class MissingLetter(ValueError):
    pass


class NotARepresentation(ValueError):
    pass


class BudgetExceeded(RuntimeError):
    pass


class TooManyEdges(RuntimeError):
    pass


# ------------------------------------------------------------------- words


def alternates(w: Word, x: int, y: int) -> bool:
    """True iff the letters x and y alternate in w (degenerate cases count as alternating)."""
    if x == y:
        raise ValueError("alternation needs two distinct letters")
    prev = None
    for c in w:
        if c == x or c == y:
            if c == prev:
                return False
            prev = c
    return True


def word_represents(w: Word, g: Graph) -> bool:
    present = set(w)
    missing = [v for v in g.vertices if v not in present]
    if missing:
        raise MissingLetter(f"vertices {missing} do not occur in the word")
    extra = present - set(g.vertices)
    if extra:
        raise MissingLetter(f"letters {sorted(extra)} are not vertices")
    return all(alternates(w, x, y) == g.has_edge(x, y) for x, y in combinations(g.vertices, 2))


def orientation_from_word(w: Word, g: Graph) -> PartialOrientation:
    """Orient x -> y when x first occurs before y; the first letter becomes a source."""
    if not word_represents(w, g):
        raise NotARepresentation("word does not represent the graph")
    first: dict[int, int] = {}
    for i, c in enumerate(w):
        first.setdefault(c, i)
    po = PartialOrientation(g)
    for u, v in g.sorted_edges():
        if first[u] < first[v]:
            po.orient(u, v)
        else:
            po.orient(v, u)
    return po


def is_uniform(w: Word, k: int, n: int) -> bool:
    return len(w) == k * n and all(w.count(v) == k for v in range(1, n + 1))


def search_uniform_word(g: Graph, k: int, max_vertices: int = 7, max_k: int = 3) -> list[int] | None:
    """A k-uniform word representing g, or None if none exists.

    Any cyclic shift of a uniform representant is again one, so the word is
    taken to start with vertex 1. Prefixes are cut as soon as an edge's
    letters stop alternating or a non-edge's letters are complete and still
    alternate.
    """
    n = g.n
    if k < 1:
        raise ValueError("k must be positive")
    if n > max_vertices or k > max_k:
        raise BudgetExceeded(f"search limited to n <= {max_vertices}, k <= {max_k}")
    if n == 0:
        return []
    adj = [[g.has_edge(x, y) for y in range(n + 1)] for x in range(n + 1)]
    last = [-1] * (n + 1)
    count = [0] * (n + 1)
    # broken[x][y]: the restriction to {x, y} already fails to alternate
    broken = [[False] * (n + 1) for _ in range(n + 1)]
    word: list[int] = []
    total = k * n

    def place(x: int) -> list[tuple[int, int]] | None:
        i = len(word)
        changed = []
        for y in range(1, n + 1):
            if y == x or broken[x][y]:
                continue
            if count[x] > 0 and last[x] > last[y]:
                if adj[x][y]:
                    for a, b in changed:
                        broken[a][b] = broken[b][a] = False
                    return None
                broken[x][y] = broken[y][x] = True
                changed.append((x, y))
        word.append(x)
        count[x] += 1
        last[x] = i
        if count[x] == k:
            for y in range(1, n + 1):
                if y != x and count[y] == k and not adj[x][y] and not broken[x][y]:
                    unplace(x, changed)
                    return None
        return changed

    def unplace(x: int, changed) -> None:
        word.pop()
        count[x] -= 1
        last[x] = max((i for i, c in enumerate(word) if c == x), default=-1)
        for a, b in changed:
            broken[a][b] = broken[b][a] = False

    def dfs() -> bool:
        if len(word) == total:
            return True
        for x in range(1, n + 1):
            if count[x] == k:
                continue
            ch = place(x)
            if ch is None:
                continue
            if dfs():
                return True
            unplace(x, ch)
        return False

    if place(1) is None:
        return None
    return list(word) if dfs() else None


# ------------------------------------------------------ orientation oracle


@dataclass
class OracleVerdict:
    semi_transitive_count: int
    example_orientation: list[tuple[int, int]] | None
    enumerated: int
    nodes_visited: int = 0

    @property
    def representable(self) -> bool:
        return self.semi_transitive_count > 0


def _closure_has_shortcut(n: int, reach: list[int], out: list[int], nonadj: list[int]) -> bool:
    """Shortcut test on a DAG given strict-descendant masks and out-arc masks."""
    for x in range(1, n + 1):
        bad = reach[x] & nonadj[x]
        while bad:
            low = bad & -bad
            y = low.bit_length() - 1
            bad ^= low
            # some arc a -> b with a in anc(x) + x and b in desc(y) + y
            down = reach[y] | low
            for a in range(1, n + 1):
                if (a == x or reach[a] >> x & 1) and out[a] & down:
                    return True
    return False


def brute_force_count(g: Graph, max_edges: int = DEFAULT_MAX_EDGES) -> OracleVerdict:
    """Count semi-transitive orientations among all 2^|E|.

    The first edge is fixed low -> high (reversal maps semi-transitive
    orientations to semi-transitive ones) and the count doubled. Branches
    that already contain a directed cycle or a shortcut are cut, since both
    survive every extension.
    """
    m = g.m
    if m > max_edges:
        raise TooManyEdges(f"{m} edges exceeds the cap of {max_edges}")
    n = g.n
    if m == 0:
        return OracleVerdict(1, [], 1, 1)
    edges = g.sorted_edges()
    full = (1 << (n + 1)) - 2
    nonadj = [0] * (n + 1)
    for x in g.vertices:
        mask = 1 << x
        for y in g.adj[x]:
            mask |= 1 << y
        nonadj[x] = full & ~mask

    count = 0
    visited = 0
    example: list[tuple[int, int]] | None = None
    arcs: list[tuple[int, int]] = []

    def rec(i: int, reach: list[int], out: list[int]) -> None:
        nonlocal count, visited, example
        visited += 1
        if _closure_has_shortcut(n, reach, out, nonadj):
            return
        if i == m:
            count += 1
            if example is None:
                example = list(arcs)
            return
        u, v = edges[i]
        choices = ((u, v),) if i == 0 else ((u, v), (v, u))
        for a, b in choices:
            if reach[b] >> a & 1:
                continue
            nr = list(reach)
            add = reach[b] | (1 << b)
            for x in range(1, n + 1):
                if x == a or reach[x] >> a & 1:
                    nr[x] |= add
            no = list(out)
            no[a] |= 1 << b
            arcs.append((a, b))
            rec(i + 1, nr, no)
            arcs.pop()

    rec(0, [0] * (n + 1), [0] * (n + 1))
    return OracleVerdict(2 * count, example, 1 << m, visited)


def is_semi_transitive_bitmask(g: Graph, arcs: Sequence[tuple[int, int]]) -> bool:
    """Standalone check of a complete orientation, used to cross-validate the verifier."""
    n = g.n
    out = [0] * (n + 1)
    succ: list[list[int]] = [[] for _ in range(n + 1)]
    indeg = [0] * (n + 1)
    for a, b in arcs:
        out[a] |= 1 << b
        succ[a].append(b)
        indeg[b] += 1
    order = []
    q = deque(v for v in range(1, n + 1) if indeg[v] == 0)
    while q:
        x = q.popleft()
        order.append(x)
        for y in succ[x]:
            indeg[y] -= 1
            if indeg[y] == 0:
                q.append(y)
    if len(order) != n:
        return False
    reach = [0] * (n + 1)
    for x in reversed(order):
        for y in succ[x]:
            reach[x] |= reach[y] | (1 << y)
    full = (1 << (n + 1)) - 2
    nonadj = [0] * (n + 1)
    for x in g.vertices:
        mask = 1 << x
        for y in g.adj[x]:
            mask |= 1 << y
        nonadj[x] = full & ~mask
    return not _closure_has_shortcut(n, reach, out, nonadj)


# ----------------------------------------------------- comparability test


@dataclass
class NeighborhoodResult:
    vertex: int
    comparability: bool
    obstruction: list[tuple[int, int]] | None = None  # forcing chain (a,b) ... (b,a), host labels


@dataclass
class PretestReport:
    neighborhoods: list[NeighborhoodResult] = field(default_factory=list)

    @property
    def conclusive(self) -> bool:
        return any(not r.comparability for r in self.neighborhoods)

    def failing(self) -> list[NeighborhoodResult]:
        return [r for r in self.neighborhoods if not r.comparability]


def forcing_obstruction(h: Graph) -> list[tuple[int, int]] | None:
    """Γ-forcing chain from some arc (a, b) to its reverse (b, a), or None if h is a comparability graph.

    (a, b) forces (a, c) when b, c are non-adjacent, and (c, b) when a, c are
    non-adjacent. A graph is a comparability graph iff no implication class
    contains an arc together with its reverse.
    """
    cls: dict[tuple[int, int], int] = {}
    parent: dict[tuple[int, int], tuple[int, int] | None] = {}
    for u, v in h.sorted_edges():
        if (u, v) in cls:
            continue
        cid = len(cls)
        start = (u, v)
        cls[start] = cid
        parent[start] = None
        q = deque([start])
        while q:
            a, b = q.popleft()
            nxt = [(a, c) for c in h.adj[a] if c != b and not h.has_edge(b, c)]
            nxt += [(c, b) for c in h.adj[b] if c != a and not h.has_edge(a, c)]
            for arc in sorted(nxt):
                if arc in cls:
                    continue
                cls[arc] = cid
                parent[arc] = (a, b)
                q.append(arc)
        for (a, b), c in cls.items():
            if c == cid and cls.get((b, a)) == cid:
                def chain(arc):
                    out = []
                    while arc is not None:
                        out.append(arc)
                        arc = parent[arc]
                    return out[::-1]
                # Γ is symmetric: (a, b) back to the class root, then on to (b, a)
                return chain((a, b))[::-1] + chain((b, a))[1:]
    return None


def is_comparability(h: Graph) -> bool:
    return forcing_obstruction(h) is None


def neighborhood_pretest(g: Graph) -> PretestReport:
    rep = PretestReport()
    for v in g.vertices:
        nb = sorted(g.adj[v])
        if len(nb) < 2:
            rep.neighborhoods.append(NeighborhoodResult(v, True))
            continue
        h = induced_subgraph(g, nb)
        obs = forcing_obstruction(h)
        if obs is None:
            rep.neighborhoods.append(NeighborhoodResult(v, True))
        else:
            lab = h.labels
            rep.neighborhoods.append(
                NeighborhoodResult(v, False, [(lab[a - 1], lab[b - 1]) for a, b in obs]))
    return rep
