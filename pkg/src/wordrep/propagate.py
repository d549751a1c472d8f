"""Fixpoint forcing: directed-cycle avoidance on triangles and the non-clique
cycle rule (m-2 edges one way force the other two the opposite way)."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

from .cycles import CycleCatalog, CycleRecord, canonical_cycle
from .graph import Edge, edge_key, is_clique
from .orientation import (
    PartialOrientation,
    ShortcutWitness,
    find_directed_cycle,
    find_shortcut,
    has_shortcut,
)

Arc = tuple[int, int]


class StepKind(Enum):
    SINGLE_O = 1
    DOUBLE_O = 2


@dataclass(frozen=True)
class ForcingStep:
    kind: StepKind
    forced: tuple[Arc, ...]
    cycle: CycleRecord


@dataclass(frozen=True)
class ErrorCycle:
    """Non-clique cycle with all edges but ``edge`` oriented one way round; ``edge`` is unoriented."""

    cycle: CycleRecord
    edge: Edge


class Terminal(Enum):
    QUIESCENT = "quiescent"
    SHORTCUT = "shortcut"
    DIRECTED_CYCLE = "directed-cycle"
    ERROR_CYCLE = "error-cycle"


@dataclass
class PropagationOutcome:
    state: PartialOrientation
    steps: list[ForcingStep] = field(default_factory=list)
    terminal: Terminal = Terminal.QUIESCENT
    shortcut: ShortcutWitness | None = None
    directed_cycle: tuple[int, ...] | None = None
    error: ErrorCycle | None = None

    @property
    def contradiction(self) -> bool:
        return self.terminal is not Terminal.QUIESCENT


def classify(c: CycleRecord, po: PartialOrientation) -> tuple[list[int], list[Arc]]:
    """Direction of each edge along the citation traversal of ``c`` (+1, -1 or 0), and those edges."""
    d = c.display
    m = len(d)
    pairs = [(d[i], d[(i + 1) % m]) for i in range(m)]
    return [po.direction(a, b) for a, b in pairs], pairs


def cycle_forcing(c: CycleRecord, po: PartialOrientation) -> ForcingStep | ErrorCycle | None:
    dirs, pairs = classify(c, po)
    m = len(dirs)
    free = [i for i, s in enumerate(dirs) if s == 0]
    if not free:
        return None
    if m == 3:
        if len(free) != 1:
            return None
        a, b = pairs[free[0]]
        if dirs.count(1) == 2:
            return ForcingStep(StepKind.SINGLE_O, ((b, a),), c)
        if dirs.count(-1) == 2:
            return ForcingStep(StepKind.SINGLE_O, ((a, b),), c)
        return None
    if c.induces_clique:
        return None
    for sense in (1, -1):
        same = dirs.count(sense)
        opp = dirs.count(-sense)

        def against(i):
            a, b = pairs[i]
            return (b, a) if sense == 1 else (a, b)

        if same == m - 1 and len(free) == 1:
            return ErrorCycle(c, edge_key(*pairs[free[0]]))
        if same == m - 2 and len(free) == 2:
            return ForcingStep(StepKind.DOUBLE_O, tuple(against(i) for i in free), c)
        if same == m - 2 and opp == 1 and len(free) == 1:
            return ForcingStep(StepKind.SINGLE_O, (against(free[0]),), c)
    return None


def _closed_cycle_error(po: PartialOrientation, u: int, v: int) -> ErrorCycle | None:
    """If u -> v would close a directed cycle through a non-clique vertex set, that cycle as an error."""
    path = po.closes_cycle(u, v)
    if path is None:
        return None
    g = po.host
    verts = canonical_cycle(path)
    if is_clique(g, verts):
        return None
    return ErrorCycle(CycleRecord(verts, False), edge_key(u, v))


def check_terminal(out: PropagationOutcome) -> bool:
    po = out.state
    cyc = find_directed_cycle(po)
    if cyc is not None:
        out.terminal, out.directed_cycle = Terminal.DIRECTED_CYCLE, cyc
        return True
    if has_shortcut(po):
        out.terminal, out.shortcut = Terminal.SHORTCUT, find_shortcut(po)
        return True
    return False


def propagate_fixpoint(po: PartialOrientation, cat: CycleCatalog, inplace: bool = False) -> PropagationOutcome:
    """Apply forcings in catalog order until quiescence or a contradiction.

    After every step the scan restarts from the first cycle, so shorter
    cycles always take precedence.
    """
    out = PropagationOutcome(po if inplace else po.copy())
    state = out.state
    if check_terminal(out):
        return out
    while True:
        for c in cat.cycles:
            r = cycle_forcing(c, state)
            if r is None:
                continue
            if isinstance(r, ErrorCycle):
                out.terminal, out.error = Terminal.ERROR_CYCLE, r
                return out
            first = r.forced[0]
            err = _closed_cycle_error(state, *first)
            if err is not None:
                out.terminal, out.error = Terminal.ERROR_CYCLE, err
                return out
            for a, b in r.forced:
                state.orient(a, b)
            out.steps.append(r)
            if check_terminal(out):
                return out
            break
        else:
            return out


def apply_step(po: PartialOrientation, step: ForcingStep) -> None:
    for a, b in step.forced:
        po.orient(a, b)
