"""Proof transcripts: data model, text renderer/parser and an independent checker.

Text format, one proof line per text line::

    1. 12->15 B14->15 (Copy 2) O7->15 O12->7 (C7-15-14-12) S:7-4-8-16
    2. MC4 16->7 O16->15 (C7-16-15) S:4-11-3-7

Optional header lines ``graph <name>`` and ``source <v>`` may precede the
numbered lines; ``#`` starts a comment. ``→`` is accepted for ``->``.

The checker replays a transcript using only graph and orientation
primitives; it never calls the forcing engine or the prover.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from itertools import combinations
from typing import Union

from .graph import Graph, is_clique
from .orientation import PartialOrientation, detect_violation

Arc = tuple[int, int]


class TranscriptSyntaxError(ValueError):
    def __init__(self, message: str, line: int, column: int = 1):
        super().__init__(f"line {line}, column {column}: {message}")
        self.reason = message
        self.line = line
        self.column = column


@dataclass(frozen=True)
class InitialEdge:
    arc: Arc


@dataclass(frozen=True)
class MoveToCopy:
    copy_id: int
    reminder: Arc


@dataclass(frozen=True)
class Branch:
    arc: Arc
    copy_id: int


@dataclass(frozen=True)
class Orient:
    arcs: tuple[Arc, ...]
    cycle: tuple[int, ...]

    def __post_init__(self):
        if len(self.arcs) not in (1, 2):
            raise ValueError("an O instruction orients one or two edges")
        if len(self.cycle) < 3:
            raise ValueError("a cited cycle has at least three vertices")


Instruction = Union[InitialEdge, MoveToCopy, Branch, Orient]

SHORTCUT = "S"
ERROR = "E"
DIRECTED_CYCLE = "D"


@dataclass(frozen=True)
class Terminator:
    kind: str  # "S" path + shortcutting edge, "E" unorientable cycle edge, "D" directed cycle
    vertices: tuple[int, ...]

    def __post_init__(self):
        if self.kind not in (SHORTCUT, ERROR, DIRECTED_CYCLE):
            raise ValueError(f"unknown terminator {self.kind!r}")
        if len(self.vertices) < 2:
            raise ValueError("terminator needs at least two vertices")


@dataclass(frozen=True)
class ProofLine:
    number: int
    instructions: tuple[Instruction, ...]
    terminator: Terminator


@dataclass(frozen=True)
class ProofTranscript:
    lines: tuple[ProofLine, ...]
    graph_name: str | None = None
    source_vertex: int | None = None

    def __len__(self) -> int:
        return len(self.lines)

    def copies_created(self) -> list[int]:
        return [i.copy_id for ln in self.lines for i in ln.instructions if isinstance(i, Branch)]


# ------------------------------------------------------------------ render


def _arc(a: Arc) -> str:
    return f"{a[0]}->{a[1]}"


def render_instruction(ins: Instruction) -> str:
    if isinstance(ins, InitialEdge):
        return _arc(ins.arc)
    if isinstance(ins, MoveToCopy):
        return f"MC{ins.copy_id} {_arc(ins.reminder)}"
    if isinstance(ins, Branch):
        return f"B{_arc(ins.arc)} (Copy {ins.copy_id})"
    if isinstance(ins, Orient):
        os_ = " ".join(f"O{_arc(a)}" for a in ins.arcs)
        return f"{os_} (C{'-'.join(map(str, ins.cycle))})"
    raise TypeError(f"not an instruction: {ins!r}")


def render_line(ln: ProofLine) -> str:
    parts = [f"{ln.number}."] + [render_instruction(i) for i in ln.instructions]
    parts.append(f"{ln.terminator.kind}:{'-'.join(map(str, ln.terminator.vertices))}")
    return " ".join(parts)


def render(t: ProofTranscript) -> str:
    out = []
    if t.graph_name is not None:
        out.append(f"graph {t.graph_name}")
    if t.source_vertex is not None:
        out.append(f"source {t.source_vertex}")
    for k, ln in enumerate(t.lines, start=1):
        if ln.number != k:
            raise ValueError(f"line numbers must run 1..L, got {ln.number} at position {k}")
        out.append(render_line(ln))
    return "\n".join(out) + "\n"


# ------------------------------------------------------------------- parse

_NUM = r"(\d+)"
_ARROW = r"\s*->\s*"
_TOKENS = [
    ("MC", re.compile(r"MC\s*" + _NUM + r"\s+" + _NUM + _ARROW + _NUM)),
    ("B", re.compile(r"B\s*" + _NUM + _ARROW + _NUM + r"\s*\(\s*Copy\s*" + _NUM + r"\s*\)")),
    ("O", re.compile(r"O\s*" + _NUM + _ARROW + _NUM)),
    ("C", re.compile(r"\(\s*C\s*(\d+(?:\s*-\s*\d+)*)\s*\)")),
    ("T", re.compile(r"([SED])\s*:\s*(\d+(?:\s*-\s*\d+)*)?")),
    ("A", re.compile(_NUM + _ARROW + _NUM)),
]
_LINE = re.compile(r"\s*(\d+)\s*\.\s*")


def _ints(s: str) -> tuple[int, ...]:
    return tuple(int(x) for x in re.split(r"\s*-\s*", s.strip()))


def _parse_body(body: str, lineno: int, col0: int, number: int) -> ProofLine:
    pos = 0
    instrs: list[Instruction] = []
    pending_o: list[Arc] = []
    pending_col = 0
    term: Terminator | None = None

    def err(msg, at):
        raise TranscriptSyntaxError(msg, lineno, col0 + at + 1)

    while True:
        while pos < len(body) and body[pos].isspace():
            pos += 1
        if pos >= len(body):
            break
        if term is not None:
            err("text after terminator", pos)
        for kind, rx in _TOKENS:
            m = rx.match(body, pos)
            if m:
                break
        else:
            err(f"unexpected text {body[pos:pos + 12]!r}", pos)
        if pending_o and kind not in ("O", "C"):
            err("O instruction without a cycle citation", pending_col)
        if kind == "MC":
            instrs.append(MoveToCopy(int(m[1]), (int(m[2]), int(m[3]))))
        elif kind == "B":
            instrs.append(Branch((int(m[1]), int(m[2])), int(m[3])))
        elif kind == "O":
            if not pending_o:
                pending_col = pos
            if len(pending_o) == 2:
                err("more than two O edges before a cycle citation", pos)
            pending_o.append((int(m[1]), int(m[2])))
        elif kind == "C":
            if not pending_o:
                err("cycle citation without an O instruction", pos)
            cyc = _ints(m[1])
            if len(cyc) < 3:
                err("cited cycle needs at least three vertices", pos)
            instrs.append(Orient(tuple(pending_o), cyc))
            pending_o = []
        elif kind == "T":
            if m[2] is None:
                err(f"empty {m[1]} terminator", pos)
            vs = _ints(m[2])
            if len(vs) < 2:
                err("terminator needs at least two vertices", pos)
            term = Terminator(m[1], vs)
        elif kind == "A":
            if instrs or pending_o:
                err("bare oriented edge is only allowed as the first instruction", pos)
            instrs.append(InitialEdge((int(m[1]), int(m[2]))))
        pos = m.end()
    if pending_o:
        err("O instruction without a cycle citation", pending_col)
    if term is None:
        err("missing S:/E: terminator", len(body))
    return ProofLine(number, tuple(instrs), term)


def parse(text: str) -> ProofTranscript:
    text = text.replace("→", "->").replace("\u2212", "-")
    graph_name = None
    source = None
    lines: list[ProofLine] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        head = line.split()
        if head[0] in ("graph", "source") and not lines:
            if len(head) != 2:
                raise TranscriptSyntaxError(f"'{head[0]}' header takes one argument", lineno)
            if head[0] == "graph":
                graph_name = head[1]
            else:
                try:
                    source = int(head[1])
                except ValueError:
                    raise TranscriptSyntaxError("source vertex must be an integer", lineno,
                                                line.index(head[1]) + 1) from None
            continue
        m = _LINE.match(line)
        if not m:
            raise TranscriptSyntaxError("expected a numbered proof line 'N. ...'", lineno)
        number = int(m[1])
        if number != len(lines) + 1:
            raise TranscriptSyntaxError(
                f"line number {number} out of sequence (expected {len(lines) + 1})", lineno, m.start(1) + 1)
        lines.append(_parse_body(line[m.end():], lineno, m.end(), number))
    if not lines:
        raise TranscriptSyntaxError("no proof lines", 1)
    return ProofTranscript(tuple(lines), graph_name, source)


# ------------------------------------------------------------------- check


@dataclass
class CheckReport:
    valid: bool
    failures: list[tuple[int, int, str]] = field(default_factory=list)
    coverage: dict[int, bool] = field(default_factory=dict)
    witness_details: list[tuple[int, tuple[int, int]]] = field(default_factory=list)
    assumptions: list[str] = field(default_factory=list)

    def summary(self) -> str:
        if self.valid:
            return f"valid ({len(self.coverage)} copies discharged)"
        head = self.failures[0] if self.failures else None
        if head:
            return f"invalid: line {head[0]}, instruction {head[1]}: {head[2]}"
        return "invalid"


class _Reject(Exception):
    pass


def _require(cond: bool, msg: str) -> None:
    if not cond:
        raise _Reject(msg)


def _cycle_dirs(g: Graph, po: PartialOrientation, cyc: tuple[int, ...]) -> list[int]:
    m = len(cyc)
    _require(m >= 3, "cycle shorter than 3")
    _require(len(set(cyc)) == m, f"cycle {cyc} repeats a vertex")
    _require(all(1 <= v <= g.n for v in cyc), f"cycle {cyc} has a vertex outside 1..{g.n}")
    pairs = [(cyc[i], cyc[(i + 1) % m]) for i in range(m)]
    for a, b in pairs:
        _require(g.has_edge(a, b), f"{a}-{b} on cycle {cyc} is not an edge")
    return [po.direction(a, b) for a, b in pairs]


def _check_orient(g: Graph, po: PartialOrientation, ins: Orient) -> None:
    cyc = ins.cycle
    dirs = _cycle_dirs(g, po, cyc)
    m = len(cyc)
    pos = {(cyc[i], cyc[(i + 1) % m]): (i, 1) for i in range(m)}
    pos.update({(cyc[(i + 1) % m], cyc[i]): (i, -1) for i in range(m)})
    claimed: dict[int, int] = {}
    for a in ins.arcs:
        _require(a in pos, f"{a[0]}->{a[1]} is not an edge of cycle {cyc}")
        i, s = pos[a]
        _require(i not in claimed, f"edge {a[0]}-{a[1]} claimed twice")
        _require(dirs[i] == 0, f"edge {a[0]}-{a[1]} is already oriented")
        claimed[i] = s
    senses = set(claimed.values())
    _require(len(senses) == 1, "claimed orientations disagree in direction around the cycle")
    s = senses.pop()
    rest = [dirs[i] for i in range(m) if i not in claimed]
    _require(0 not in rest, f"cycle {cyc} has other unoriented edges")
    if m == 3:
        _require(len(claimed) == 1, "a triangle forces a single edge")
        _require(rest.count(-s) == 2, f"triangle {cyc} does not force {ins.arcs[0]}")
    else:
        _require(not is_clique(g, cyc), f"cycle {cyc} induces a clique")
        if len(claimed) == 2:
            _require(rest.count(-s) == m - 2, f"cycle {cyc} lacks m-2 edges the other way")
        else:
            _require(rest.count(-s) == m - 2 and rest.count(s) == 1,
                     f"cycle {cyc} does not force a single edge")
    for a, b in ins.arcs:
        po.orient(a, b)


def _check_terminator(g: Graph, po: PartialOrientation, term: Terminator) -> tuple[int, int] | None:
    vs = term.vertices
    if term.kind == SHORTCUT:
        _require(len(vs) >= 3, "a shortcut path has at least three vertices")
        _require(len(set(vs)) == len(vs), "shortcut path repeats a vertex")
        _require(all(1 <= v <= g.n for v in vs), "shortcut vertex out of range")
        for a, b in zip(vs, vs[1:]):
            _require(g.has_edge(a, b) and po.direction(a, b) == 1, f"path arc {a}->{b} is not oriented")
        _require(g.has_edge(vs[0], vs[-1]) and po.direction(vs[0], vs[-1]) == 1,
                 f"shortcutting edge {vs[0]}->{vs[-1]} is not oriented")
        for x, y in combinations(vs, 2):
            if not g.has_edge(x, y):
                return (x, y)
        raise _Reject(f"path {vs} induces a clique, so it is not a shortcut")
    dirs = _cycle_dirs(g, po, vs)
    if term.kind == DIRECTED_CYCLE:
        _require(all(d == 1 for d in dirs), f"{vs} is not a directed cycle")
        return None
    _require(not is_clique(g, vs), f"cycle {vs} induces a clique")
    _require(dirs.count(0) == 1, f"cycle {vs} must have exactly one unoriented edge")
    _require(dirs.count(1) == len(vs) - 1 or dirs.count(-1) == len(vs) - 1,
             f"other edges of {vs} are not all oriented one way")
    i = dirs.index(0)
    a, b = vs[i], vs[(i + 1) % len(vs)]
    for u, v in ((a, b), (b, a)):
        trial = po.copy().orient(u, v)
        _require(bool(detect_violation(trial)), f"orienting {u}->{v} creates no violation")
    return None


def check(g: Graph, t: ProofTranscript, source: int | None = None) -> CheckReport:
    """Replay ``t`` on ``g``; ``source`` overrides the transcript's ``source`` header."""
    if source is None:
        source = t.source_vertex
    rep = CheckReport(valid=False)
    copies: dict[int, PartialOrientation] = {}
    reminders: dict[int, Arc] = {}
    discharged_by: dict[int, list[int]] = {}

    root = PartialOrientation(g)
    if source is not None:
        if not 1 <= source <= g.n:
            rep.failures.append((0, 0, f"source vertex {source} not in graph"))
            return rep
        for w in sorted(g.adj[source]):
            root.orient(source, w)
        rep.assumptions.append(f"vertex {source} is a source (any vertex may be assumed a source)")
    copies[1] = root

    for k, ln in enumerate(t.lines, start=1):
        if ln.number != k:
            rep.failures.append((ln.number, 0, f"line numbered {ln.number}, expected {k}"))
        current: int | None = None
        idx = 0
        try:
            for idx, ins in enumerate(ln.instructions):
                if idx == 0:
                    if k == 1:
                        current = 1
                        if isinstance(ins, InitialEdge):
                            _require(source is None, "no WLOG first edge under a source assumption")
                            u, v = ins.arc
                            _require(g.has_edge(u, v), f"{u}-{v} is not an edge")
                            _require(root.direction(u, v) == 0, f"{u}-{v} is already oriented")
                            root.orient(u, v)
                            rep.assumptions.append(
                                f"{u}->{v} fixed without loss of generality (reversal symmetry)")
                            continue
                        _require(not isinstance(ins, MoveToCopy), "line 1 works on Copy 1; MC not allowed")
                    else:
                        _require(isinstance(ins, MoveToCopy), "lines after the first start with MC")
                if isinstance(ins, MoveToCopy):
                    _require(idx == 0, "MC only starts a line")
                    c = ins.copy_id
                    _require(c in copies and c != 1, f"Copy {c} was never created")
                    _require(not discharged_by.get(c), f"Copy {c} was already discharged")
                    _require(ins.reminder == reminders[c],
                             f"MC{c} reminder {ins.reminder[0]}->{ins.reminder[1]} does not match "
                             f"branch edge {reminders[c][0]}->{reminders[c][1]}")
                    current = c
                elif isinstance(ins, InitialEdge):
                    raise _Reject("bare oriented edge only opens line 1")
                elif isinstance(ins, Branch):
                    po = copies[current]
                    u, v = ins.arc
                    _require(g.has_edge(u, v), f"{u}-{v} is not an edge")
                    _require(po.direction(u, v) == 0, f"branch edge {u}-{v} is already oriented")
                    _require(ins.copy_id == max(copies) + 1,
                             f"new copy should be numbered {max(copies) + 1}, not {ins.copy_id}")
                    other = po.copy().orient(v, u)
                    copies[ins.copy_id] = other
                    reminders[ins.copy_id] = (v, u)
                    po.orient(u, v)
                elif isinstance(ins, Orient):
                    _check_orient(g, copies[current], ins)
            if current is None:
                current = 1 if k == 1 else None
                _require(current is not None, "line does not select a copy")
            idx = len(ln.instructions)
            pair = _check_terminator(g, copies[current], ln.terminator)
            if pair is not None:
                rep.witness_details.append((k, pair))
            discharged_by.setdefault(current, []).append(k)
        except _Reject as exc:
            rep.failures.append((k, idx, str(exc)))

    for c in sorted(copies):
        rep.coverage[c] = len(discharged_by.get(c, [])) == 1
        if not rep.coverage[c]:
            rep.failures.append((0, 0, f"Copy {c} is not discharged"))
    if discharged_by.get(1) and discharged_by[1] != [1]:
        rep.failures.append((0, 0, "Copy 1 must be discharged by line 1"))
    rep.valid = not rep.failures
    return rep
