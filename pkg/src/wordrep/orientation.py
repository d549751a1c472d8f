"""Partial orientations, violation detection (directed cycles, shortcuts) and the
semi-transitivity verifier."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from enum import Enum
from typing import Iterable

from .graph import Edge, Graph, edge_key

UNORIENTED = 0
FORWARD = 1  # u -> v for the canonical edge (u, v), u < v
BACKWARD = -1

Arc = tuple[int, int]


class AlreadyOriented(ValueError):
    pass


class UnknownEdge(KeyError):
    pass


class IncompleteOrientation(ValueError):
    pass


class PartialOrientation:
    """Per-edge orientation state layered over a host graph.

    Mutable; :meth:`copy` gives an independent clone (a search "Copy").
    """

    __slots__ = ("host", "state", "oriented_count", "succ", "pred")

    def __init__(self, host: Graph, arcs: Iterable[Arc] = ()):
        self.host = host
        self.state: dict[Edge, int] = {e: UNORIENTED for e in host.sorted_edges()}
        self.oriented_count = 0
        self.succ: list[set[int]] = [set() for _ in range(host.n + 1)]
        self.pred: list[set[int]] = [set() for _ in range(host.n + 1)]
        for u, v in arcs:
            self.orient(u, v)

    def copy(self) -> "PartialOrientation":
        new = PartialOrientation.__new__(PartialOrientation)
        new.host = self.host
        new.state = dict(self.state)
        new.oriented_count = self.oriented_count
        new.succ = [set(s) for s in self.succ]
        new.pred = [set(s) for s in self.pred]
        return new

    # -- mutation

    def set_edge(self, e: Edge, direction: int) -> "PartialOrientation":
        if e not in self.state:
            raise UnknownEdge(e)
        if direction not in (FORWARD, BACKWARD):
            raise ValueError(f"bad direction {direction!r}")
        if self.state[e] != UNORIENTED:
            raise AlreadyOriented(f"edge {e[0]}-{e[1]} is already oriented")
        self.state[e] = direction
        self.oriented_count += 1
        a, b = e if direction == FORWARD else (e[1], e[0])
        self.succ[a].add(b)
        self.pred[b].add(a)
        return self

    def orient(self, u: int, v: int) -> "PartialOrientation":
        """Orient the edge {u, v} as u -> v."""
        if u == v or not self.host.has_edge(u, v):
            raise UnknownEdge((u, v))
        return self.set_edge(edge_key(u, v), FORWARD if u < v else BACKWARD)

    # -- queries

    def direction(self, u: int, v: int) -> int:
        """+1 if u -> v is oriented, -1 if v -> u, 0 if unoriented."""
        s = self.state[edge_key(u, v)]
        return s if u < v else -s

    def arc(self, e: Edge) -> Arc | None:
        s = self.state[e]
        if s == UNORIENTED:
            return None
        return e if s == FORWARD else (e[1], e[0])

    def arcs(self) -> list[Arc]:
        """Oriented arcs in canonical edge order."""
        return [a for e in self.state if (a := self.arc(e)) is not None]

    def unoriented(self) -> list[Edge]:
        return [e for e, s in self.state.items() if s == UNORIENTED]

    @property
    def is_complete(self) -> bool:
        return self.oriented_count == len(self.state)

    def reaches(self, src: int, dst: int) -> bool:
        return dst in self.descendants(src)

    def descendants(self, v: int) -> set[int]:
        seen: set[int] = set()
        stack = [v]
        while stack:
            x = stack.pop()
            for y in self.succ[x]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        return seen

    def shortest_path(self, src: int, dst: int) -> list[int] | None:
        """Shortest directed path src ~> dst over oriented arcs (smallest labels first on ties)."""
        if src == dst:
            return [src]
        parent = {src: src}
        q = deque([src])
        while q:
            x = q.popleft()
            for y in sorted(self.succ[x]):
                if y in parent:
                    continue
                parent[y] = x
                if y == dst:
                    path = [y]
                    while path[-1] != src:
                        path.append(parent[path[-1]])
                    return path[::-1]
                q.append(y)
        return None

    def closes_cycle(self, u: int, v: int) -> list[int] | None:
        """If orienting u -> v would close a directed cycle, the path v ~> u that it closes."""
        return self.shortest_path(v, u)

    def __eq__(self, other) -> bool:
        return isinstance(other, PartialOrientation) and self.host == other.host and self.state == other.state

    def __repr__(self) -> str:
        return f"PartialOrientation({self.oriented_count}/{len(self.state)} oriented)"

    def dump(self) -> str:
        return "".join(f"{a}->{b}\n" for a, b in self.arcs())


def set_edge(po: PartialOrientation, e: Edge, direction: int) -> PartialOrientation:
    """Return a copy of ``po`` with ``e`` oriented in ``direction``."""
    return po.copy().set_edge(e, direction)


def reverse_all(po: PartialOrientation) -> PartialOrientation:
    out = PartialOrientation(po.host)
    for e, s in po.state.items():
        if s != UNORIENTED:
            out.set_edge(e, -s)
    return out


def from_arcs(g: Graph, arcs: Iterable[Arc]) -> PartialOrientation:
    return PartialOrientation(g, arcs)


# ------------------------------------------------------------ violations


class ViolationKind(Enum):
    NONE = "none"
    DIRECTED_CYCLE = "directed-cycle"
    SHORTCUT = "shortcut"


@dataclass(frozen=True)
class ShortcutWitness:
    path: tuple[int, ...]  # v0 -> v1 -> ... -> vk, shortcutting edge v0 -> vk
    missing_pair: tuple[int, int]  # non-adjacent (vi, vj), i < j

    @property
    def shortcut_edge(self) -> Arc:
        return (self.path[0], self.path[-1])


@dataclass(frozen=True)
class ViolationReport:
    kind: ViolationKind
    cycle_witness: tuple[int, ...] | None = None
    shortcut_witness: ShortcutWitness | None = None

    def __bool__(self) -> bool:
        return self.kind is not ViolationKind.NONE


NO_VIOLATION = ViolationReport(ViolationKind.NONE)


def find_directed_cycle(po: PartialOrientation) -> tuple[int, ...] | None:
    """A directed cycle x1 -> ... -> xm -> x1 among oriented arcs, or None."""
    n = po.host.n
    color = [0] * (n + 1)  # 0 new, 1 on stack, 2 done
    parent = [0] * (n + 1)
    for root in range(1, n + 1):
        if color[root]:
            continue
        color[root] = 1
        stack = [(root, iter(sorted(po.succ[root])))]
        while stack:
            x, it = stack[-1]
            y = next(it, None)
            if y is None:
                color[x] = 2
                stack.pop()
            elif color[y] == 0:
                color[y] = 1
                parent[y] = x
                stack.append((y, iter(sorted(po.succ[y]))))
            elif color[y] == 1:
                cyc = [x]
                while cyc[-1] != y:
                    cyc.append(parent[cyc[-1]])
                return tuple(reversed(cyc))
    return None


def _topological_order(po: PartialOrientation) -> list[int]:
    n = po.host.n
    indeg = [len(po.pred[v]) for v in range(n + 1)]
    ready = sorted(v for v in range(1, n + 1) if indeg[v] == 0)
    order = []
    q = deque(ready)
    while q:
        x = q.popleft()
        order.append(x)
        for y in sorted(po.succ[x]):
            indeg[y] -= 1
            if indeg[y] == 0:
                q.append(y)
    return order


def reachability(po: PartialOrientation) -> list[int]:
    """Bitmask of strict descendants for each vertex; requires acyclic arcs."""
    reach = [0] * (po.host.n + 1)
    for x in reversed(_topological_order(po)):
        r = 0
        for y in po.succ[x]:
            r |= reach[y] | (1 << y)
        reach[x] = r
    return reach


def _bfs_dist(po: PartialOrientation, src: int) -> dict[int, int]:
    dist = {src: 0}
    q = deque([src])
    while q:
        x = q.popleft()
        for y in po.succ[x]:
            if y not in dist:
                dist[y] = dist[x] + 1
                q.append(y)
    return dist


def has_shortcut(po: PartialOrientation, reach: list[int] | None = None) -> bool:
    """Fast yes/no shortcut test on an acyclic partial orientation."""
    g = po.host
    if reach is None:
        reach = reachability(po)
    nonadj = [0] * (g.n + 1)
    full = (1 << (g.n + 1)) - 2
    for x in g.vertices:
        mask = 1 << x
        for y in g.adj[x]:
            mask |= 1 << y
        nonadj[x] = full & ~mask
    anc = [0] * (g.n + 1)
    for x in g.vertices:
        r = reach[x]
        y = 0
        while r:
            if r & 1:
                anc[y] |= 1 << x
            r >>= 1
            y += 1
    for u in g.vertices:
        for v in po.succ[u]:
            inside = ((reach[u] | (1 << u)) & (anc[v] | (1 << v)))
            w = inside
            x = 0
            while w:
                if w & 1 and reach[x] & inside & nonadj[x]:
                    return True
                w >>= 1
                x += 1
    return False


def find_shortcut(po: PartialOrientation) -> ShortcutWitness | None:
    """Shortest shortcut witness among oriented arcs of an acyclic partial orientation.

    For every arc u -> v and non-adjacent pair (x, y) with u ~> x ~> y ~> v,
    the path is the concatenation of shortest segments. Ties go to the
    lexicographically smallest path.
    """
    g = po.host
    reach = reachability(po)
    if not has_shortcut(po, reach):
        return None
    dist = {x: _bfs_dist(po, x) for x in g.vertices}
    best: tuple[int, tuple[int, ...], tuple[int, int]] | None = None
    for u in g.vertices:
        for v in sorted(po.succ[u]):
            between = [x for x in g.vertices
                       if (x == u or reach[u] >> x & 1) and (x == v or reach[x] >> v & 1)]
            for i, x in enumerate(between):
                for y in between:
                    if y == x or not reach[x] >> y & 1 or g.has_edge(x, y):
                        continue
                    k = dist[u][x] + dist[x][y] + dist[y][v]
                    if best is not None and k > len(best[1]) - 1:
                        continue
                    path = (po.shortest_path(u, x)[:-1] + po.shortest_path(x, y)[:-1]
                            + po.shortest_path(y, v))
                    cand = (k, tuple(path), (x, y))
                    if best is None or cand[:2] < best[:2]:
                        best = cand
    assert best is not None
    return ShortcutWitness(best[1], best[2])


def detect_violation(po: PartialOrientation) -> ViolationReport:
    cyc = find_directed_cycle(po)
    if cyc is not None:
        return ViolationReport(ViolationKind.DIRECTED_CYCLE, cycle_witness=cyc)
    sc = find_shortcut(po)
    if sc is not None:
        return ViolationReport(ViolationKind.SHORTCUT, shortcut_witness=sc)
    return NO_VIOLATION


def has_violation(po: PartialOrientation) -> bool:
    if find_directed_cycle(po) is not None:
        return True
    return has_shortcut(po)


def is_semi_transitive(po: PartialOrientation) -> tuple[bool, ViolationReport]:
    if not po.is_complete:
        raise IncompleteOrientation(
            f"{len(po.state) - po.oriented_count} edges are still unoriented")
    report = detect_violation(po)
    return (not report, report)


def check_shortcut_witness(g: Graph, po: PartialOrientation, w: ShortcutWitness) -> bool:
    """Independent re-check of a shortcut witness against the orientation."""
    p = w.path
    if len(p) < 3 or len(set(p)) != len(p):
        return False
    if any(po.direction(a, b) != 1 for a, b in zip(p, p[1:]) if g.has_edge(a, b)):
        return False
    if not all(g.has_edge(a, b) for a, b in zip(p, p[1:])):
        return False
    if not g.has_edge(p[0], p[-1]) or po.direction(p[0], p[-1]) != 1:
        return False
    x, y = w.missing_pair
    return x in p and y in p and p.index(x) < p.index(y) and not g.has_edge(x, y)


def dump_arcs(po: PartialOrientation) -> str:
    return po.dump()
